#pragma once

#include <iosfwd>

namespace l0lab {

// Runs the command-line front end. Exit codes: 0 success, 1 analysis error
// (infeasible sigma, resource guard, failed repro), 2 invalid input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace l0lab
