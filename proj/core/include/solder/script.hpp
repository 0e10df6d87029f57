#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solder/lifts.hpp"

namespace solder {

// One named object declared by a check script. Exactly one payload is
// engaged, selected by kind.
struct ScriptObject {
  enum Kind {
    kScalar,
    kMultivector,
    kForm,
    kMetric,
    kSubmanifold,
    kFrame,
    kInvolution,
    kPoint,
  };
  Kind kind;
  std::string chart_name;

  std::optional<Scalar> scalar;
  std::optional<Multivector> multivector;
  std::optional<DifferentialForm> form;
  std::optional<SymmetricTwoTensor> metric;
  std::optional<NormalizedSubmanifold> submanifold;
  std::optional<FrameMatrix> frame;
  std::optional<PolyMap> involution;
  std::vector<Rational> point;

  std::string decl_word;  // vector | bivector | multivector, for printing
  std::string frame_for;  // owning submanifold of a frame
};

// One `check ...` command.
struct ScriptCheck {
  std::string kind;                // poisson, jacobi, classify-poisson, ...
  std::vector<std::string> args;   // declared-object names, in source order
  std::vector<std::pair<std::string, bool>> expect_flags;
  std::optional<std::string> expect_word;  // yes|no|poisson|jacobi|preserved|not-preserved
  std::vector<std::string> defining;       // coisotropic variable names
  std::optional<std::string> at_point;
  int line = 0;
};

// Parsed script: charts, named objects, and ordered checks. Equality is
// canonical-print equality, so print/parse round-trips are directly testable.
struct CheckScript {
  std::vector<std::string> decl_order;
  std::map<std::string, ChartPtr> charts;
  std::map<std::string, ScriptObject> objects;
  std::vector<ScriptCheck> checks;

  bool operator==(const CheckScript& other) const;
};

// Line-oriented grammar; '#' starts a comment. Declarations open with a
// header line and may carry items inline after the colon or on indented
// continuation lines. Throws SyntaxError (with position) or NameError.
CheckScript parse_script(const std::string& text);

// Canonical form: one declaration per header, components on indented lines,
// strictly increasing index tuples. Reparses to an equal script.
std::string print_script(const CheckScript& script);

struct CheckResult {
  std::string label;    // canonical check line
  std::string verdict;  // PASS | FAIL | ERROR
  std::string summary;  // one-line result payload (flags, phi, kind, ...)
  std::vector<std::string> details;
  double millis = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;

  int passes() const;
  int failures() const;
  int errors() const;
  bool all_pass() const { return failures() == 0 && errors() == 0; }
  // 0 all pass, 1 at least one FAIL, 2 at least one ERROR.
  int exit_code() const;
};

// Executes checks in script order. A FAIL never aborts the run; an ERROR is
// recorded on its check and the run continues.
Report run_script(const CheckScript& script);

std::string report_text(const Report& report, bool verbose = false);
std::string report_json(const Report& report);

}  // namespace solder
