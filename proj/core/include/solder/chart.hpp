#pragma once

#include <memory>
#include <string>
#include <vector>

#include "solder/errors.hpp"

namespace solder {

struct Variable {
  std::string name;
  bool laurent = false;  // true: negative powers allowed, locus values nonzero
  bool operator==(const Variable&) const = default;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

// An ordered polynomial coordinate chart. Charts compare by content (name and
// ordered variable list), so independently built equal charts interoperate.
class Chart {
public:
  static ChartPtr make(std::string name, std::vector<Variable> vars);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(vars_.size()); }
  const Variable& var(int i) const { return vars_.at(static_cast<size_t>(i)); }
  const std::vector<Variable>& vars() const { return vars_; }

  bool has(const std::string& var_name) const;
  int index_of(const std::string& var_name) const;  // UnknownVariable if absent

  bool operator==(const Chart& other) const {
    return name_ == other.name_ && vars_ == other.vars_;
  }

  // New chart with one extra trailing variable. VariableClash on name reuse.
  ChartPtr extended(const std::string& new_name, const Variable& extra) const;

  // New chart keeping only the given variable indices, in the given order.
  ChartPtr restricted_to(const std::string& new_name,
                         const std::vector<int>& keep) const;

  std::string str() const;

private:
  Chart(std::string name, std::vector<Variable> vars)
      : name_(std::move(name)), vars_(std::move(vars)) {}
  std::string name_;
  std::vector<Variable> vars_;
};

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b,
                               const std::string& what) {
  if (!(*a == *b))
    throw ChartMismatch(what + ": '" + a->name() + "' vs '" + b->name() + "'");
}

}  // namespace solder
