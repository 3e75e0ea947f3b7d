#include "l0lab/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "l0lab/common.hpp"
#include "l0lab/errors.hpp"

namespace l0lab {

namespace {

using nlohmann::json;

// Compact JSON emitter with %.17g doubles (nlohmann's dump would reformat
// them). Commas are managed by a nesting stack.
class Emitter {
public:
    Emitter& begin_obj() { return open('{'); }
    Emitter& end_obj() { return close('}'); }
    Emitter& begin_arr() { return open('['); }
    Emitter& end_arr() { return close(']'); }

    Emitter& key(const char* k) {
        sep();
        out_ << '"' << k << "\":";
        pending_value_ = true;
        return *this;
    }

    Emitter& value(double v) {
        sep();
        if (std::isinf(v) || std::isnan(v)) {
            out_ << "null";
        } else {
            out_ << format_double(v);
        }
        return *this;
    }
    Emitter& value(int v) { return raw(std::to_string(v)); }
    Emitter& value(long long v) { return raw(std::to_string(v)); }
    Emitter& value(bool v) { return raw(v ? "true" : "false"); }
    Emitter& value(const std::string& s) { return raw(json(s).dump()); }
    Emitter& null() { return raw("null"); }

    // Injects pre-rendered JSON as one value.
    Emitter& raw(const std::string& s) {
        sep();
        out_ << s;
        return *this;
    }

    std::string str() const { return out_.str(); }

private:
    Emitter& open(char c) {
        sep();
        out_ << c;
        need_comma_.push_back(false);
        return *this;
    }
    Emitter& close(char c) {
        out_ << c;
        need_comma_.pop_back();
        return *this;
    }
    void sep() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!need_comma_.empty()) {
            if (need_comma_.back()) out_ << ',';
            need_comma_.back() = true;
        }
    }

    std::ostringstream out_;
    std::vector<bool> need_comma_;
    bool pending_value_ = false;
};

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInputError(std::string("JSON parse error: ") + e.what());
    }
}

double as_number(const json& j, const char* what) {
    if (!j.is_number()) throw InvalidInputError(std::string(what) + " must be a number");
    return j.get<double>();
}

void emit_vector(Emitter& e, std::span<const double> v) {
    e.begin_arr();
    for (double x : v) e.value(x);
    e.end_arr();
}

void emit_int_vector(Emitter& e, std::span<const int> v) {
    e.begin_arr();
    for (int x : v) e.value(x);
    e.end_arr();
}

void emit_member(Emitter& e, const AchievingSupport& m) {
    e.begin_obj();
    e.key("support");
    emit_int_vector(e, m.support);
    e.key("minimizer");
    emit_vector(e, m.minimizer);
    e.key("residual").value(m.residual);
    e.end_obj();
}

const char* finiteness_name(Finiteness f) {
    switch (f) {
        case Finiteness::Finite: return "finite";
        case Finiteness::Infinite: return "infinite";
        case Finiteness::Unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.is_object()) throw InvalidInputError("instance JSON must be an object");
    if (!j.contains("A") || !j["A"].is_array() || j["A"].empty())
        throw InvalidInputError("instance field \"A\" must be a nonempty array of rows");
    if (!j.contains("b") || !j["b"].is_array())
        throw InvalidInputError("instance field \"b\" must be an array");

    const auto& rows = j["A"];
    const std::size_t m = rows.size();
    if (!rows[0].is_array() || rows[0].empty())
        throw InvalidInputError("instance rows must be nonempty arrays");
    const std::size_t n = rows[0].size();
    std::vector<double> entries;
    entries.reserve(m * n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n)
            throw InvalidInputError("instance rows must all have the same length");
        for (const auto& x : row) entries.push_back(as_number(x, "entry of A"));
    }

    Instance inst{DenseMatrix(m, n, std::move(entries)), {}, 2, 20};
    for (const auto& x : j["b"]) inst.b.push_back(as_number(x, "entry of b"));
    if (j.contains("p")) {
        if (!j["p"].is_number_integer())
            throw InvalidInputError("instance field \"p\" must be 1 or 2");
        inst.p = j["p"].get<int>();
    }
    if (j.contains("max_enumeration_cols"))
        inst.max_enumeration_cols = j["max_enumeration_cols"].get<int>();
    validate_instance(inst);
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    Emitter e;
    e.begin_obj();
    e.key("A").begin_arr();
    for (std::size_t i = 0; i < inst.A.rows(); ++i) {
        e.begin_arr();
        for (std::size_t j = 0; j < inst.A.cols(); ++j) e.value(inst.A(i, j));
        e.end_arr();
    }
    e.end_arr();
    e.key("b");
    emit_vector(e, inst.b);
    e.key("p").value(inst.p);
    e.end_obj();
    return e.str();
}

PhiSpec parse_phi_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
        throw InvalidInputError("phi JSON must be an object with a \"variant\" string");
    const std::string variant = j["variant"].get<std::string>();
    const int p = j.contains("p") ? j["p"].get<int>() : 2;
    const double sigma = j.contains("sigma") ? as_number(j["sigma"], "phi sigma") : 0.0;
    if (variant == "identity") return PhiSpec::identity();
    if (variant == "power") return PhiSpec::power(p);
    if (variant == "shifted_power") return PhiSpec::shifted_power(sigma, p);
    if (variant == "squared_hinge") return PhiSpec::squared_hinge(sigma);
    throw InvalidInputError("unknown phi variant \"" + variant + "\"");
}

std::string phi_to_json(const PhiSpec& spec) {
    const char* name = "identity";
    switch (spec.variant) {
        case PhiVariant::Identity: name = "identity"; break;
        case PhiVariant::Power: name = "power"; break;
        case PhiVariant::ShiftedPower: name = "shifted_power"; break;
        case PhiVariant::SquaredHinge: name = "squared_hinge"; break;
    }
    Emitter e;
    e.begin_obj();
    e.key("variant").value(std::string(name));
    e.key("p").value(spec.p);
    e.key("sigma").value(spec.sigma);
    e.end_obj();
    return e.str();
}

LevelSequence parse_levels_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.is_object()) throw InvalidInputError("levels JSON must be an object");
    std::vector<int> s;
    std::vector<double> rho;
    if (j.contains("s") && j.contains("rho")) {
        for (const auto& x : j["s"]) s.push_back(x.get<int>());
        for (const auto& x : j["rho"]) rho.push_back(as_number(x, "rho entry"));
    } else if (j.contains("levels") && j["levels"].is_array()) {
        for (const auto& lvl : j["levels"]) {
            s.push_back(lvl.at("s").get<int>());
            rho.push_back(as_number(lvl.at("rho"), "level rho"));
        }
    } else {
        throw InvalidInputError("levels JSON needs either s/rho arrays or a levels list");
    }
    return levels_from_arrays(std::move(s), std::move(rho));
}

std::string level_sequence_to_json(const LevelSequence& seq) {
    Emitter e;
    e.begin_obj();
    e.key("L").value(seq.L);
    e.key("p").value(seq.p);
    e.key("n").value(seq.n);
    e.key("phi").raw(phi_to_json(seq.phi));
    e.key("levels").begin_arr();
    for (const Level& lvl : seq.levels) {
        e.begin_obj();
        e.key("s").value(lvl.s);
        e.key("rho").value(lvl.rho);
        e.key("omega_infinite").value(lvl.omega_infinite);
        e.key("members").begin_arr();
        for (const AchievingSupport& m : lvl.members) emit_member(e, m);
        e.end_arr();
        e.end_obj();
    }
    e.end_arr();
    e.end_obj();
    return e.str();
}

std::string staircase_to_json(const ResidualStaircase& st) {
    Emitter e;
    e.begin_obj();
    e.key("n").value(st.n());
    e.key("p").value(st.instance.p);
    e.key("best_r");
    emit_vector(e, st.best_r);
    e.key("best_exact");
    emit_vector(e, st.best_exact);
    e.key("achieving").begin_arr();
    for (int k = 0; k <= st.n(); ++k) {
        e.begin_arr();
        for (const AchievingSupport& m : staircase_achieving(st, k)) emit_member(e, m);
        e.end_arr();
    }
    e.end_arr();
    e.end_obj();
    return e.str();
}

std::string breakpoints_to_json(const BreakpointSequence& bp) {
    Emitter e;
    e.begin_obj();
    e.key("K").value(bp.K);
    e.key("t");
    emit_int_vector(e, bp.t);
    e.key("lambda");
    emit_vector(e, bp.lambda);
    // tie_sets[0] is Lambda_{-1}.
    e.key("tie_sets_from").value(-1);
    e.key("tie_sets").begin_arr();
    for (const auto& ts : bp.tie_sets) emit_int_vector(e, ts);
    e.end_arr();
    e.end_obj();
    return e.str();
}

std::string marginal_f_to_json(const MarginalF& f) {
    Emitter e;
    e.begin_obj();
    e.key("pieces").begin_arr();
    for (const FPiece& p : f.pieces) {
        e.begin_obj();
        e.key("lambda_lo").value(p.lambda_lo);
        e.key("lambda_hi").value(p.lambda_hi);
        e.key("level").value(p.level);
        e.key("slope").value(p.slope);
        e.key("intercept").value(p.intercept);
        e.end_obj();
    }
    e.end_arr();
    e.end_obj();
    return e.str();
}

std::string marginal_h_to_json(const MarginalH& h) {
    Emitter e;
    e.begin_obj();
    e.key("pieces").begin_arr();
    for (const HPiece& p : h.pieces) {
        e.begin_obj();
        e.key("sigma_lo").value(p.sigma_lo);
        e.key("sigma_hi").value(p.sigma_hi);
        e.key("value").value(p.value);
        e.end_obj();
    }
    e.end_arr();
    e.end_obj();
    return e.str();
}

std::string relation_to_json(const RelationReport& rep) {
    const char* name = "NEVER";
    switch (rep.rel_case) {
        case RelationCase::InT: name = "IN_T"; break;
        case RelationCase::InTieSetsNotT: name = "IN_TIESETS_NOT_T"; break;
        case RelationCase::Never: name = "NEVER"; break;
    }
    Emitter e;
    e.begin_obj();
    e.key("k").value(rep.k);
    e.key("case").value(std::string(name));
    e.key("j");
    if (rep.j >= 0) {
        e.value(rep.j);
    } else {
        e.null();
    }
    e.key("window");
    if (rep.window_empty) {
        e.null();
    } else {
        e.begin_obj();
        e.key("lo").value(rep.window.lo);
        e.key("hi").value(rep.window.unbounded_hi
                              ? std::numeric_limits<double>::infinity()
                              : rep.window.hi);
        e.key("point").value(rep.window.point);
        e.end_obj();
    }
    e.key("intersection_level");
    if (rep.intersection_level >= 0) {
        e.value(rep.intersection_level);
    } else {
        e.null();
    }
    e.key("subset_on_window").value(rep.subset_on_window);
    e.key("equality_on_window").value(rep.equality_on_window);
    e.key("strict_subset_on_window").value(rep.strict_subset_on_window);
    e.end_obj();
    return e.str();
}

std::string threshold_to_json(const ThresholdResult& thr) {
    Emitter e;
    e.begin_obj();
    e.key("lambda_star").value(thr.lambda_star);
    e.key("all_lambda_exact").value(thr.all_lambda_exact);
    e.key("levels").raw(level_sequence_to_json(thr.seq));
    e.key("breakpoints").raw(breakpoints_to_json(thr.bp));
    e.end_obj();
    return e.str();
}

std::string exactness_to_json(const ExactnessReport& rep) {
    Emitter e;
    e.begin_obj();
    e.key("all_pass").value(rep.all_pass);
    e.key("lambda_star").value(rep.lambda_star);
    e.key("samples").begin_arr();
    for (const ExactnessSample& s : rep.samples) {
        e.begin_obj();
        e.key("lambda").value(s.lambda);
        e.key("pass").value(s.pass);
        e.key("penalty_cardinality").value(s.penalty_cardinality);
        e.key("constrained_cardinality").value(s.constrained_cardinality);
        e.end_obj();
    }
    e.end_arr();
    e.end_obj();
    return e.str();
}

std::string cardinality_to_json(const CardinalityReport& rep) {
    Emitter e;
    e.begin_obj();
    e.key("level_index").value(rep.level_index);
    e.key("finite").value(std::string(finiteness_name(rep.finite)));
    e.key("upper_bound");
    if (rep.upper_bound) {
        e.value(*rep.upper_bound);
    } else {
        e.null();
    }
    e.key("witnesses").value(rep.witnesses);
    e.key("strict_minimizers").value(rep.strict_minimizers);
    e.key("h2_status").begin_arr();
    for (bool b : rep.h2_status) e.value(b);
    e.end_arr();
    e.key("second_point");
    if (rep.second_point) {
        e.begin_obj();
        e.key("representative");
        emit_vector(e, rep.second_point->first);
        e.key("other");
        emit_vector(e, rep.second_point->second);
        e.end_obj();
    } else {
        e.null();
    }
    e.end_obj();
    return e.str();
}

std::string strictness_to_json(const StrictnessP2& s) {
    Emitter e;
    e.begin_obj();
    e.key("sigma_on_grid").value(s.sigma_on_grid);
    e.key("all_strict").value(s.all_strict);
    e.key("finite").value(s.finite);
    e.key("residuals_equal_sigma").value(s.residuals_equal_sigma);
    e.end_obj();
    return e.str();
}

std::string solve_result_to_json(const SolveResult& res) {
    Emitter e;
    e.begin_obj();
    e.key("x");
    emit_vector(e, res.x);
    e.key("objective").value(res.objective);
    e.key("iterations").value(res.iterations);
    std::vector<int> support;
    for (std::size_t j = 0; j < res.x.size(); ++j)
        if (res.x[j] != 0.0) support.push_back(static_cast<int>(j));
    e.key("support");
    emit_int_vector(e, support);
    e.end_obj();
    return e.str();
}

}  // namespace l0lab
