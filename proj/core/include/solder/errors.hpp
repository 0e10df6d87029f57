#pragma once

#include <stdexcept>
#include <string>

namespace solder {

// Every failure the engine can raise deliberately derives from EngineError and
// carries a stable machine-readable code alongside the human message.
class EngineError : public std::runtime_error {
public:
  EngineError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define SOLDER_ERROR(Name)                                    \
  class Name : public EngineError {                           \
  public:                                                     \
    explicit Name(const std::string& message)                 \
        : EngineError(#Name, message) {}                      \
  }

SOLDER_ERROR(ChartMismatch);
SOLDER_ERROR(UnknownVariable);
SOLDER_ERROR(VariableClash);
SOLDER_ERROR(NegativePower);
SOLDER_ERROR(NotAUnit);
SOLDER_ERROR(LaurentZeroSubstitution);
SOLDER_ERROR(NonPolynomialExponent);
SOLDER_ERROR(DegreeMismatch);
SOLDER_ERROR(PreconditionFailed);
SOLDER_ERROR(NotPoisson);
SOLDER_ERROR(NotJacobi);
SOLDER_ERROR(NondegeneracyFailure);
SOLDER_ERROR(NotTangentFunction);
SOLDER_ERROR(NotInvolution);
SOLDER_ERROR(LocusNotCoordinate);
SOLDER_ERROR(NameError);
SOLDER_ERROR(UnknownExample);

#undef SOLDER_ERROR

// Syntax errors keep their source position; the CLI reports line:col.
class SyntaxError : public EngineError {
public:
  SyntaxError(int line, int col, const std::string& message)
      : EngineError("SyntaxError",
                    "line " + std::to_string(line) + ", col " +
                        std::to_string(col) + ": " + message),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_;
  int col_;
};

// Raised when a map was required to preserve a tensor but does not; the
// defect (pushforward minus original, or pullback minus original) is kept
// in printed form for diagnostics.
class NotPreserved : public EngineError {
public:
  NotPreserved(const std::string& message, std::string defect)
      : EngineError("NotPreserved", message + " (defect: " + defect + ")"),
        defect_(std::move(defect)) {}
  const std::string& defect() const { return defect_; }

private:
  std::string defect_;
};

}  // namespace solder
