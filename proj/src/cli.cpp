#include "l0lab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "l0lab/cardinality.hpp"
#include "l0lab/common.hpp"
#include "l0lab/errors.hpp"
#include "l0lab/fixtures.hpp"
#include "l0lab/json_io.hpp"
#include "l0lab/relation.hpp"
#include "l0lab/smooth_penalty.hpp"

namespace l0lab {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct PhiOpts {
    std::string variant;
    int p = 0;
    double sigma = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--phi", variant,
                        "penalty function: identity|power|shifted_power|squared_hinge");
        cmd->add_option("--phi-p", p, "exponent for the power variants (1 or 2)");
        cmd->add_option("--phi-sigma", sigma, "shift for the shifted variants");
    }

    PhiSpec resolve(const PhiSpec& fallback) const {
        if (variant.empty()) return fallback;
        const int pp = p > 0 ? p : 2;
        if (variant == "identity") return PhiSpec::identity();
        if (variant == "power") return PhiSpec::power(pp);
        if (variant == "shifted_power") return PhiSpec::shifted_power(std::max(sigma, 0.0), pp);
        if (variant == "squared_hinge") return PhiSpec::squared_hinge(std::max(sigma, 0.0));
        throw InvalidInputError("unknown phi variant \"" + variant + "\"");
    }
};

struct LevelsInput {
    std::string instance_path;
    std::string levels_path;

    void attach(CLI::App* cmd, bool levels_alternative) {
        auto* inst = cmd->add_option("--instance", instance_path, "instance JSON file");
        if (levels_alternative) {
            auto* lv = cmd->add_option("--levels", levels_path,
                                       "level-sequence JSON file (s/rho arrays)");
            inst->excludes(lv);
        } else {
            inst->required();
        }
    }
};

void print_levels_text(std::ostream& out, const LevelSequence& seq) {
    out << "L = " << seq.L << "  (phi = " << seq.phi.name() << ")\n";
    for (int i = 0; i <= seq.L; ++i) {
        const Level& lvl = seq.levels[i];
        out << "  level " << i << ": s = " << lvl.s << ", rho = " << fmt4(lvl.rho)
            << ", supports = " << lvl.members.size()
            << (lvl.omega_infinite ? " (non-exhaustive)" : "") << '\n';
    }
}

// ---------------------------------------------------------------------------
// repro: golden checks on the bundled fixtures.

struct ReproRow {
    std::string name;
    bool pass;
    std::string detail;
};

bool run_repro(std::ostream& out) {
    std::vector<ReproRow> rows;
    const auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        rows.push_back({name, ok, detail});
    };

    const Instance inst = fixtures::demo_instance();
    const ResidualStaircase st = residual_staircase(inst);

    {
        const LevelSequence seq = levels(st, PhiSpec::identity());
        const std::vector<double> want = {0.0, 1.4487, 3.3363, 4.0502, 21.2106};
        bool ok = seq.L == 4 && seq.s() == std::vector<int>{4, 3, 2, 1, 0};
        std::string detail = "rho =";
        for (int i = 0; i <= seq.L && ok; ++i) {
            ok = std::abs(seq.levels[i].rho - want[i]) <= 2e-4;
        }
        for (double r : seq.rho()) detail += ' ' + fmt4(r);
        check("levels(identity): L=4, s=(4,3,2,1,0), rho grid", ok, detail);
    }
    {
        const LevelSequence seq = levels(st, PhiSpec::power(2));
        const BreakpointSequence bp = breakpoints(seq);
        const std::vector<double> want_lambda = {0.9530, 0.2796, 0.0046};
        bool ok = bp.K == 3 && bp.t == std::vector<int>{0, 1, 3, 4} &&
                  bp.tie_set(0) == std::vector<int>{1} && bp.tie_set(1) == std::vector<int>{3} &&
                  bp.tie_set(2) == std::vector<int>{4};
        for (int j = 0; j < 3 && ok; ++j) ok = std::abs(bp.lambda[j] - want_lambda[j]) <= 1e-3;
        std::string detail = "lambda =";
        for (int j = 0; j < bp.K; ++j) detail += ' ' + fmt4(bp.lambda[j]);
        check("breakpoints(power 2): K=3, t=(0,1,3,4), lambda grid", ok, detail);

        const MarginalF f = marginal_F(seq, bp);
        const std::vector<double> want_slopes = {224.9447, 8.2021, 1.0494};
        bool ok2 = f.pieces.size() == 4;
        for (int i = 0; i < 3 && ok2; ++i)
            ok2 = std::abs(f.pieces[i].slope - want_slopes[i]) <= 2e-3;
        ok2 = ok2 && f.pieces[3].slope == 0.0 && f.pieces[3].intercept == 4.0;
        check("marginal F slopes (224.9447, 8.2021, 1.0494, 0)", ok2,
              "slopes = " + fmt4(f.pieces[0].slope) + ' ' + fmt4(f.pieces[1].slope) + ' ' +
                  fmt4(f.pieces[2].slope));
    }
    {
        const LevelSequence seq = levels(st, PhiSpec::identity());
        const bool ok = marginal_H(seq, 1.0) == 4 && marginal_H(seq, 2.0) == 3 &&
                        marginal_H(seq, fixtures::kDemoSigma) == 2 && marginal_H(seq, 10.0) == 1 &&
                        marginal_H(seq, 22.0) == 0;
        check("H table: H(1)=4 H(2)=3 H(3.6)=2 H(10)=1 H(22)=0", ok,
              "H(3.6) = " + std::to_string(marginal_H(seq, fixtures::kDemoSigma)));
    }
    {
        const LevelSequence seq_id = levels(st, PhiSpec::identity());
        const LevelSequence seq_pw = levels(st, PhiSpec::power(2));
        const BreakpointSequence bp = breakpoints(seq_pw);
        const RelationReport rep = classify(seq_id, bp, fixtures::kDemoSigma);
        check("classify(sigma=3.6, power 2) = NEVER", rep.rel_case == RelationCase::Never,
              "k = " + std::to_string(rep.k));
    }
    {
        const PhiSpec hinge = PhiSpec::squared_hinge(fixtures::kDemoSigma);
        const ThresholdResult thr = exact_penalty_threshold(inst, hinge, fixtures::kDemoSigma);
        bool ok = thr.seq.s() == std::vector<int>{2, 1, 0};
        const std::vector<double> rho = thr.seq.rho();
        ok = ok && std::abs(rho[1] - 0.1013) <= 5e-4 && std::abs(rho[2] - 155.0666) <= 5e-2;
        ok = ok && std::abs(thr.lambda_star / 9.8678 - 1.0) <= 2e-3;
        check("exact penalty (squared hinge, sigma=3.6): lambda* = 9.8678", ok,
              "lambda* = " + fmt4(thr.lambda_star));

        const std::vector<double> lams = {10.0, 20.0, 100.0};
        const ExactnessReport ver = verify_exactness(inst, hinge, fixtures::kDemoSigma, lams);
        check("verify exactness at lambda in {10, 20, 100}", ver.all_pass,
              ver.all_pass ? "all samples pass" : "sample mismatch");
    }
    {
        const LevelSequence seq = fixtures::demo_levels();
        const BreakpointSequence bp = breakpoints(seq);
        bool ok = bp.K == 2 && bp.t == std::vector<int>{0, 2, 4} &&
                  bp.tie_set(0) == std::vector<int>{1, 2} && bp.tie_set(1) == std::vector<int>{4} &&
                  std::abs(bp.lambda[0] - 4.0) <= 1e-12 && std::abs(bp.lambda[1] - 2.0) <= 1e-12;
        check("synthetic levels: K=2, t=(0,2,4), ties ({1,2},{4}), lambda=(4,2)", ok,
              "lambda = " + fmt4(bp.lambda[0]) + ' ' + fmt4(bp.lambda[1]));

        bool never_active = true;
        for (int i = 1; i <= 1000 && never_active; ++i) {
            const double lam = 1.2 * bp.lambda[0] * i / 1000.0;
            const auto act = active_levels(seq, bp, lam);
            never_active = std::find(act.begin(), act.end(), 3) == act.end();
        }
        check("synthetic levels: line 3 never active (1000 samples)", never_active, "");
    }

    bool all = true;
    std::size_t width = 0;
    for (const ReproRow& r : rows) width = std::max(width, r.name.size());
    for (const ReproRow& r : rows) {
        all = all && r.pass;
        out << (r.pass ? "PASS  " : "FAIL  ") << r.name;
        if (!r.detail.empty()) out << std::string(width - r.name.size() + 2, ' ') << r.detail;
        out << '\n';
    }
    out << (all ? "repro: all checks passed\n" : "repro: FAILURES\n");
    return all;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"l0lab: exact desk-scale analyzer for constrained l0 regularization "
                 "and its penalty family"};
    app.require_subcommand(1);
    std::string format = "json";

    int exit_code = 0;
    const auto emit = [&](const std::string& json_text, const std::string& text_alt) {
        out << (format == "text" ? text_alt : json_text) << '\n';
    };

    // levels ----------------------------------------------------------------
    auto* cmd_levels = app.add_subcommand("levels", "level sequence of an instance under phi");
    LevelsInput in_levels;
    PhiOpts phi_levels;
    in_levels.attach(cmd_levels, false);
    phi_levels.attach(cmd_levels);
    cmd_levels->add_option("--format", format, "json|text");
    cmd_levels->callback([&] {
        const Instance inst = parse_instance_json(read_file(in_levels.instance_path));
        const LevelSequence seq =
            levels(residual_staircase(inst), phi_levels.resolve(PhiSpec::identity()));
        std::ostringstream text;
        print_levels_text(text, seq);
        emit(level_sequence_to_json(seq), text.str());
    });

    // breakpoints -------------------------------------------------------------
    auto* cmd_bp = app.add_subcommand("breakpoints", "breakpoint sequence of the penalty path");
    LevelsInput in_bp;
    PhiOpts phi_bp;
    in_bp.attach(cmd_bp, true);
    phi_bp.attach(cmd_bp);
    cmd_bp->add_option("--format", format, "json|text");
    cmd_bp->callback([&] {
        LevelSequence seq = [&] {
            if (!in_bp.levels_path.empty()) return parse_levels_json(read_file(in_bp.levels_path));
            const Instance inst = parse_instance_json(read_file(in_bp.instance_path));
            return levels(residual_staircase(inst), phi_bp.resolve(PhiSpec::power(inst.p)));
        }();
        const BreakpointSequence bp = breakpoints(seq);
        std::ostringstream text;
        text << "K = " << bp.K << "\n";
        for (int j = 0; j <= bp.K; ++j) {
            text << "  t_" << j << " = " << bp.t[j] << ", lambda_" << j << " = "
                 << fmt4(bp.lambda[j]) << '\n';
        }
        emit(breakpoints_to_json(bp), text.str());
    });

    // marginal-h ---------------------------------------------------------------
    auto* cmd_h = app.add_subcommand("marginal-h", "constrained marginal H(sigma)");
    LevelsInput in_h;
    double h_sigma = 0.0;
    in_h.attach(cmd_h, false);
    cmd_h->add_option("--sigma", h_sigma, "residual level")->required();
    cmd_h->add_option("--format", format, "json|text");
    cmd_h->callback([&] {
        const Instance inst = parse_instance_json(read_file(in_h.instance_path));
        const LevelSequence seq = levels(residual_staircase(inst), PhiSpec::identity());
        const int H = marginal_H(seq, h_sigma);
        emit("{\"sigma\":" + format_double(h_sigma) + ",\"H\":" + std::to_string(H) + "}",
             std::to_string(H));
    });

    // marginal-f ---------------------------------------------------------------
    auto* cmd_f = app.add_subcommand("marginal-f", "penalty marginal F(lambda) and active levels");
    LevelsInput in_f;
    PhiOpts phi_f;
    double f_lambda = 0.0;
    in_f.attach(cmd_f, true);
    phi_f.attach(cmd_f);
    cmd_f->add_option("--lambda", f_lambda, "penalty parameter")->required();
    cmd_f->add_option("--format", format, "json|text");
    cmd_f->callback([&] {
        LevelSequence seq = [&] {
            if (!in_f.levels_path.empty()) return parse_levels_json(read_file(in_f.levels_path));
            const Instance inst = parse_instance_json(read_file(in_f.instance_path));
            return levels(residual_staircase(inst), phi_f.resolve(PhiSpec::power(inst.p)));
        }();
        const BreakpointSequence bp = breakpoints(seq);
        const FValue fv = marginal_F_eval(seq, bp, f_lambda);
        std::string act;
        for (int lvl : fv.active_levels) act += (act.empty() ? "" : ",") + std::to_string(lvl);
        emit("{\"lambda\":" + format_double(f_lambda) + ",\"value\":" + format_double(fv.value) +
                 ",\"active_levels\":[" + act + "]}",
             fmt4(fv.value) + "  (active levels: " + act + ")");
    });

    // classify -----------------------------------------------------------------
    auto* cmd_cls = app.add_subcommand(
        "classify", "relation of the power-penalty and constrained optimal sets");
    LevelsInput in_cls;
    double cls_sigma = 0.0;
    in_cls.attach(cmd_cls, false);
    cmd_cls->add_option("--sigma", cls_sigma, "residual level")->required();
    cmd_cls->add_option("--format", format, "json|text");
    cmd_cls->callback([&] {
        const Instance inst = parse_instance_json(read_file(in_cls.instance_path));
        const ResidualStaircase st = residual_staircase(inst);
        const LevelSequence seq_id = levels(st, PhiSpec::identity());
        const BreakpointSequence bp = breakpoints(levels(st, PhiSpec::power(inst.p)));
        const RelationReport rep = classify(seq_id, bp, cls_sigma);
        const char* name = rep.rel_case == RelationCase::Never
                               ? "NEVER"
                               : (rep.rel_case == RelationCase::InT ? "IN_T" : "IN_TIESETS_NOT_T");
        std::string text = std::string(name) + "  (k = " + std::to_string(rep.k) + ")";
        if (!rep.window_empty) {
            text += rep.window.point
                        ? "  lambda = " + fmt4(rep.window.lo)
                        : "  lambda in (" + fmt4(rep.window.lo) + ", " +
                              (rep.window.unbounded_hi ? std::string("inf") : fmt4(rep.window.hi)) +
                              ")";
        }
        emit(relation_to_json(rep), text);
    });

    // exact-penalty --------------------------------------------------------------
    auto* cmd_ep = app.add_subcommand("exact-penalty",
                                      "exact penalty threshold lambda* for an exact phi");
    LevelsInput in_ep;
    PhiOpts phi_ep;
    double ep_sigma = 0.0;
    std::vector<double> ep_verify;
    in_ep.attach(cmd_ep, false);
    phi_ep.attach(cmd_ep);
    cmd_ep->add_option("--sigma", ep_sigma, "residual level")->required();
    cmd_ep->add_option("--verify", ep_verify, "lambda samples for brute-force verification");
    cmd_ep->add_option("--format", format, "json|text");
    cmd_ep->callback([&] {
        const Instance inst = parse_instance_json(read_file(in_ep.instance_path));
        const PhiSpec phi = phi_ep.resolve(PhiSpec::squared_hinge(ep_sigma));
        const ThresholdResult thr = exact_penalty_threshold(inst, phi, ep_sigma);
        std::string json_text = threshold_to_json(thr);
        std::string text = "lambda* = " + fmt4(thr.lambda_star) +
                           (thr.all_lambda_exact ? " (every lambda exact)" : "");
        if (!ep_verify.empty()) {
            const ExactnessReport ver = verify_exactness(inst, phi, ep_sigma, ep_verify);
            json_text = "{\"threshold\":" + json_text + ",\"verification\":" +
                        exactness_to_json(ver) + "}";
            text += ver.all_pass ? "; verification passed" : "; verification FAILED";
        }
        emit(json_text, text);
    });

    // cardinality ---------------------------------------------------------------
    auto* cmd_card = app.add_subcommand("cardinality",
                                        "cardinality/strictness diagnostics of optimal sets");
    LevelsInput in_card;
    PhiOpts phi_card;
    int card_level = -1;
    double card_sigma = std::numeric_limits<double>::quiet_NaN();
    double card_lambda = std::numeric_limits<double>::quiet_NaN();
    in_card.attach(cmd_card, false);
    phi_card.attach(cmd_card);
    auto* opt_level = cmd_card->add_option("--level", card_level, "level index k");
    auto* opt_sigma = cmd_card->add_option("--sigma", card_sigma, "constrained problem at sigma");
    auto* opt_lambda = cmd_card->add_option("--lambda", card_lambda, "penalty problem at lambda");
    opt_level->excludes(opt_sigma)->excludes(opt_lambda);
    opt_sigma->excludes(opt_lambda);
    cmd_card->add_option("--format", format, "json|text");
    cmd_card->callback([&] {
        const Instance inst = parse_instance_json(read_file(in_card.instance_path));
        const ResidualStaircase st = residual_staircase(inst);
        std::string json_text, text;
        if (opt_level->count() > 0) {
            const LevelSequence seq = levels(st, phi_card.resolve(PhiSpec::identity()));
            const CardinalityReport rep =
                inst.p == 2 ? p2_bound(seq, card_level) : p1_report(seq, card_level);
            json_text = cardinality_to_json(rep);
            text = std::string("level ") + std::to_string(card_level) + ": " +
                   (rep.finite == Finiteness::Finite
                        ? "finite"
                        : rep.finite == Finiteness::Infinite ? "infinite" : "unknown");
        } else if (opt_sigma->count() > 0) {
            const LevelSequence seq = levels(st, PhiSpec::identity());
            const StrictnessP2 s = strictness_p2(seq, card_sigma);
            json_text = strictness_to_json(s);
            text = std::string(s.finite ? "finite" : "infinite") + ", " +
                   (s.all_strict ? "all strict" : "not all strict");
        } else if (opt_lambda->count() > 0) {
            const LevelSequence seq = levels(st, phi_card.resolve(PhiSpec::power(inst.p)));
            const BreakpointSequence bp = breakpoints(seq);
            const CardinalityReport rep = penalty_cardinality(seq, bp, card_lambda);
            json_text = cardinality_to_json(rep);
            text = rep.finite == Finiteness::Finite
                       ? "finite"
                       : rep.finite == Finiteness::Infinite ? "infinite" : "unknown";
        } else {
            throw InvalidInputError("cardinality: one of --level, --sigma, --lambda is required");
        }
        emit(json_text, text);
    });

    // gradient-check --------------------------------------------------------------
    auto* cmd_gc = app.add_subcommand("gradient-check",
                                      "finite-difference and Lipschitz checks of the smooth "
                                      "penalty gradient");
    LevelsInput in_gc;
    double gc_sigma = 0.0, gc_lambda = 1.0;
    int gc_samples = 100, gc_pairs = 1000;
    unsigned long long gc_seed = 12345;
    in_gc.attach(cmd_gc, false);
    cmd_gc->add_option("--sigma", gc_sigma, "hinge level")->required();
    cmd_gc->add_option("--lambda", gc_lambda, "penalty parameter");
    cmd_gc->add_option("--samples", gc_samples, "gradient sample count");
    cmd_gc->add_option("--pairs", gc_pairs, "Lipschitz pair count");
    cmd_gc->add_option("--seed", gc_seed, "random seed");
    cmd_gc->add_option("--format", format, "json|text");
    cmd_gc->callback([&] {
        const Instance inst = parse_instance_json(read_file(in_gc.instance_path));
        const SmoothPenaltyProblem prob{inst, gc_sigma, gc_lambda};
        const std::size_t n = inst.A.cols();
        std::mt19937_64 rng(gc_seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double scale =
            (gc_sigma + l2_norm(inst.b) + 1.0) / std::max(spectral_norm(inst.A).value, 1e-6);

        const auto random_point = [&](bool active_hinge) {
            std::vector<double> x(n);
            for (int tries = 0; tries < 1000; ++tries) {
                for (double& v : x) v = scale * gauss(rng);
                auto r = inst.A.apply(x);
                for (std::size_t i = 0; i < r.size(); ++i) r[i] -= inst.b[i];
                if (!active_hinge || l2_norm(r) > gc_sigma + 0.1) return x;
            }
            throw AnalysisError("gradient-check: could not sample an active-hinge point");
        };

        double max_rel = 0.0;
        for (int s = 0; s < gc_samples; ++s) {
            const auto x = random_point(true);
            const auto g = phi_big_grad(prob, x);
            std::vector<double> fd(n);
            const double h = 1e-6;
            for (std::size_t j = 0; j < n; ++j) {
                auto xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                fd[j] = (phi_big_eval(prob, xp) - phi_big_eval(prob, xm)) / (2 * h);
            }
            double diff = 0.0;
            for (std::size_t j = 0; j < n; ++j) diff += (fd[j] - g[j]) * (fd[j] - g[j]);
            max_rel = std::max(max_rel, std::sqrt(diff) / std::max(l2_norm(g), 1e-12));
        }
        const bool pass_grad = max_rel <= 1e-6;

        const double bound = lipschitz_bound(prob);
        double max_ratio = 0.0;
        for (int s = 0; s < gc_pairs; ++s) {
            const auto x = random_point(false);
            const auto y = random_point(false);
            const auto gx = phi_big_grad(prob, x);
            const auto gy = phi_big_grad(prob, y);
            double dg = 0.0, dx = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                dg += (gx[j] - gy[j]) * (gx[j] - gy[j]);
                dx += (x[j] - y[j]) * (x[j] - y[j]);
            }
            if (dx > 0.0) max_ratio = std::max(max_ratio, std::sqrt(dg / dx));
        }
        const bool pass_lip = max_ratio <= bound * (1.0 + 1e-9);

        emit("{\"max_rel_error\":" + format_double(max_rel) +
                 ",\"pass_gradient\":" + (pass_grad ? "true" : "false") +
                 ",\"lipschitz_bound\":" + format_double(bound) +
                 ",\"max_lipschitz_ratio\":" + format_double(max_ratio) +
                 ",\"pass_lipschitz\":" + (pass_lip ? "true" : "false") +
                 ",\"pass\":" + (pass_grad && pass_lip ? "true" : "false") + "}",
             std::string(pass_grad && pass_lip ? "pass" : "FAIL") +
                 "  (max rel err " + format_double(max_rel) + ")");
        if (!(pass_grad && pass_lip)) exit_code = 1;
    });

    // solve -------------------------------------------------------------------
    auto* cmd_solve = app.add_subcommand("solve",
                                         "hard-thresholding proximal gradient on the smooth "
                                         "penalty objective");
    LevelsInput in_solve;
    double sv_sigma = 0.0, sv_lambda = 0.0, sv_step = 0.0;
    int sv_iters = 10000;
    std::vector<double> sv_x0;
    std::string sv_trace;
    in_solve.attach(cmd_solve, false);
    cmd_solve->add_option("--sigma", sv_sigma, "hinge level")->required();
    cmd_solve->add_option("--lambda", sv_lambda, "penalty parameter")->required();
    cmd_solve->add_option("--step", sv_step, "step size (default 0.99/(lambda*||A||^2))");
    cmd_solve->add_option("--max-iters", sv_iters, "iteration cap");
    cmd_solve->add_option("--x0", sv_x0, "start vector (default zeros)");
    cmd_solve->add_option("--trace", sv_trace, "CSV trace output file");
    cmd_solve->add_option("--format", format, "json|text");
    cmd_solve->callback([&] {
        const Instance inst = parse_instance_json(read_file(in_solve.instance_path));
        const SmoothPenaltyProblem prob{inst, sv_sigma, sv_lambda};
        std::vector<double> x0 = sv_x0;
        if (x0.empty()) x0.assign(inst.A.cols(), 0.0);
        const double step = sv_step > 0.0 ? sv_step : default_step(prob);
        std::ofstream trace_file;
        std::ostream* trace = nullptr;
        if (!sv_trace.empty()) {
            trace_file.open(sv_trace);
            if (!trace_file) throw InvalidInputError("cannot open trace file: " + sv_trace);
            trace = &trace_file;
        }
        const SolveResult res = prox_grad_solve(prob, x0, sv_iters, step, trace);
        emit(solve_result_to_json(res),
             "objective = " + fmt4(res.objective) + " after " + std::to_string(res.iterations) +
                 " iterations");
    });

    // plot-data ------------------------------------------------------------------
    auto* cmd_plot = app.add_subcommand("plot-data",
                                        "CSV line arrangement of the penalty marginal function");
    LevelsInput in_plot;
    PhiOpts phi_plot;
    in_plot.attach(cmd_plot, true);
    phi_plot.attach(cmd_plot);
    cmd_plot->callback([&] {
        LevelSequence seq = [&] {
            if (!in_plot.levels_path.empty())
                return parse_levels_json(read_file(in_plot.levels_path));
            const Instance inst = parse_instance_json(read_file(in_plot.instance_path));
            return levels(residual_staircase(inst), phi_plot.resolve(PhiSpec::power(inst.p)));
        }();
        const BreakpointSequence bp = breakpoints(seq);
        write_plot_csv(out, seq, bp);
    });

    // repro ---------------------------------------------------------------------
    auto* cmd_repro = app.add_subcommand("repro", "golden checks on the bundled fixtures");
    cmd_repro->callback([&] {
        if (!run_repro(out)) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const InvalidInputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const AnalysisError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}

}  // namespace l0lab
