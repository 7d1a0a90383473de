#include "urysohn/registry.hpp"

#include <functional>
#include <map>

#include "urysohn/errors.hpp"

namespace urysohn {
namespace {

struct Entry {
  std::string description;
  std::function<UrysohnProblem<double>()> factory;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> entries{
      {"rpk-aks",
       {"Hammerstein kernel G(s,t)(12u - 2u^3), G the Green's function of -u'' + 12u; exact 2/(2s+1)",
        [] { return rpk_aks_problem<double>(); }}},
      {"zero-kernel",
       {"kappa = 0 with f(s) = 1 + s; the solution is f itself",
        [] { return zero_kernel_problem<double>([](double s) { return 1 + s; }); }}},
  };
  return entries;
}

}  // namespace

std::vector<RegisteredProblem> list_problems() {
  std::vector<RegisteredProblem> out;
  for (const auto& [name, entry] : registry()) out.push_back({name, entry.description});
  return out;
}

UrysohnProblem<double> make_problem(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownProblemError("unknown problem '" + name + "'");
  return it->second.factory();
}

}  // namespace urysohn
