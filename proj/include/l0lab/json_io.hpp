#pragma once

#include <string>

#include "l0lab/breakpoints.hpp"
#include "l0lab/cardinality.hpp"
#include "l0lab/levels.hpp"
#include "l0lab/relation.hpp"
#include "l0lab/smooth_penalty.hpp"

namespace l0lab {

// Instance schema: {"A": [[...], ...], "b": [...], "p": 1|2}.
// Malformed input raises InvalidInputError with the parser's location.
Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

// Phi schema: {"variant": "identity"|"power"|"shifted_power"|"squared_hinge",
//              "p": 1|2, "sigma": number}.
PhiSpec parse_phi_json(const std::string& text);
std::string phi_to_json(const PhiSpec& spec);

// Accepts either a full serialized level sequence or the bare arrays
// {"s": [...], "rho": [...]}; supports and instance are not reconstructed.
LevelSequence parse_levels_json(const std::string& text);

// All floats are rendered with 17 significant digits; infinities become null.
std::string level_sequence_to_json(const LevelSequence& seq);
std::string staircase_to_json(const ResidualStaircase& st);
std::string breakpoints_to_json(const BreakpointSequence& bp);
std::string marginal_f_to_json(const MarginalF& f);
std::string marginal_h_to_json(const MarginalH& h);
std::string relation_to_json(const RelationReport& rep);
std::string threshold_to_json(const ThresholdResult& thr);
std::string exactness_to_json(const ExactnessReport& rep);
std::string cardinality_to_json(const CardinalityReport& rep);
std::string strictness_to_json(const StrictnessP2& s);
std::string solve_result_to_json(const SolveResult& res);

}  // namespace l0lab
