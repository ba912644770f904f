#pragma once

#include <istream>
#include <string>

#include "helmlab/problem.hpp"

namespace helmlab {

/// Reads a problem from the key-value format described in docs/formats.md.
/// Throws ConfigError (with the line number) for malformed input and the
/// problem's own errors for data that violate its invariants.
HelmholtzProblem parse_problem(std::istream& in);
HelmholtzProblem parse_problem_text(const std::string& text);
HelmholtzProblem load_problem(const std::string& path);

}  // namespace helmlab
