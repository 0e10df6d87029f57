#include "solder/chart.hpp"

#include <set>
#include <sstream>

namespace solder {

ChartPtr Chart::make(std::string name, std::vector<Variable> vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.name.empty())
      throw VariableClash("empty variable name in chart '" + name + "'");
    if (!seen.insert(v.name).second)
      throw VariableClash("duplicate variable '" + v.name + "' in chart '" +
                          name + "'");
  }
  return ChartPtr(new Chart(std::move(name), std::move(vars)));
}

bool Chart::has(const std::string& var_name) const {
  for (const auto& v : vars_)
    if (v.name == var_name) return true;
  return false;
}

int Chart::index_of(const std::string& var_name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == var_name) return static_cast<int>(i);
  throw UnknownVariable("no variable '" + var_name + "' on chart '" + name_ +
                        "'");
}

ChartPtr Chart::extended(const std::string& new_name,
                         const Variable& extra) const {
  auto vars = vars_;
  vars.push_back(extra);
  return make(new_name, std::move(vars));
}

ChartPtr Chart::restricted_to(const std::string& new_name,
                              const std::vector<int>& keep) const {
  std::vector<Variable> vars;
  vars.reserve(keep.size());
  for (int i : keep) vars.push_back(var(i));
  return make(new_name, std::move(vars));
}

std::string Chart::str() const {
  std::ostringstream out;
  out << name_ << "(";
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (i) out << ", ";
    out << vars_[i].name;
    if (vars_[i].laurent) out << "*";
  }
  out << ")";
  return out.str();
}

}  // namespace solder
