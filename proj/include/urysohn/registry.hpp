#pragma once

#include <string>
#include <vector>

#include "urysohn/problem.hpp"

namespace urysohn {

struct RegisteredProblem {
  std::string name;
  std::string description;
};

/// Names and one-line descriptions of the built-in problems, sorted by name.
std::vector<RegisteredProblem> list_problems();

/// Throws UnknownProblemError for names not in the registry.
UrysohnProblem<double> make_problem(const std::string& name);

}  // namespace urysohn
