#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solder/chart.hpp"
#include "solder/errors.hpp"
#include "solder/rational.hpp"

namespace solder {

// Monomial in chart variables, addressed by index. Factors are kept sorted by
// variable index with nonzero exponents; negative exponents are legal only for
// Laurent-flagged variables, which is enforced where monomials meet a chart.
class Monomial {
public:
  Monomial() = default;
  static Monomial variable(int index, int exponent = 1);
  static Monomial from_factors(std::vector<std::pair<int, int>> factors);

  bool is_empty() const { return factors_.empty(); }
  int exponent_of(int index) const;
  const std::vector<std::pair<int, int>>& factors() const { return factors_; }

  Monomial times(const Monomial& other) const;
  Monomial power(int k) const;  // multiplies every exponent by k
  bool has_negative_exponent() const;

  int compare(const Monomial& other) const;
  bool operator==(const Monomial& other) const {
    return factors_ == other.factors_;
  }
  bool operator<(const Monomial& other) const { return compare(other) < 0; }

private:
  std::vector<std::pair<int, int>> factors_;  // (variable index, exponent)
};

// Laurent polynomial with exact rational coefficients, canonical as a sorted
// term map with no zero coefficients.
class Poly {
public:
  Poly() = default;  // zero
  static Poly constant(const Rational& c);
  static Poly one() { return constant(1); }
  static Poly variable(int index) { return monomial(Monomial::variable(index), 1); }
  static Poly monomial(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rational> as_constant() const;
  Rational constant_term() const;  // coefficient of the empty monomial
  bool single_term() const { return terms_.size() == 1; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator-() const;
  Poly scaled(const Rational& c) const;
  Poly power(int k) const;  // k >= 0

  Poly differentiate(int var) const;
  Rational evaluated(const std::vector<Rational>& point) const;
  bool depends_on(int var) const;
  bool has_negative_exponent() const;
  void validate_exponents(const Chart& chart) const;  // NegativePower

  int compare(const Poly& other) const;
  bool operator==(const Poly& other) const;
  bool operator<(const Poly& other) const { return compare(other) < 0; }

  std::string str(const Chart& chart) const;

  void add_term(const Monomial& m, const Rational& c);

private:
  std::map<Monomial, Rational> terms_;
};

// Element of the scalar ring over one chart: a finite sum of terms
// f * exp(q) with f a Laurent polynomial and q an ordinary polynomial
// (no negative exponents inside exp). Stored canonically as a map from the
// exponent polynomial q to its coefficient polynomial f, so equality and the
// zero test are structural and exact.
class Scalar {
public:
  using TermMap = std::map<Poly, Poly>;

  static Scalar zero(ChartPtr chart) { return Scalar(std::move(chart), {}); }
  static Scalar one(ChartPtr chart) { return constant(std::move(chart), 1); }
  static Scalar constant(ChartPtr chart, const Rational& c);
  static Scalar variable(ChartPtr chart, int index);
  static Scalar variable(ChartPtr chart, const std::string& name);
  static Scalar from_poly(ChartPtr chart, const Poly& p);
  // exp(q). The argument must be free of exp parts and negative exponents.
  static Scalar exponential(const Scalar& q);

  ChartPtr chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Scalar& other) const;
  bool operator!=(const Scalar& other) const { return !(*this == other); }

  Scalar operator+(const Scalar& other) const;
  Scalar operator-(const Scalar& other) const;
  Scalar operator*(const Scalar& other) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar scaled(const Rational& c) const;
  Scalar pow(int k) const;  // negative k requires a unit, else NegativePower

  Scalar differentiate(int var) const;
  Scalar differentiate(const std::string& var) const;

  // Substitutes bindings (by source variable index) whose values live on
  // `target`. Source variables without a binding must exist by name on the
  // target chart and are mapped to themselves. Binding values must be
  // polynomials or Laurent monomials.
  Scalar substitute(const std::map<int, Scalar>& bindings,
                    const ChartPtr& target) const;
  // Same-name transport onto another chart containing all variables.
  Scalar on_chart(const ChartPtr& target) const { return substitute({}, target); }

  // Full evaluation; Laurent variables must receive nonzero values. The
  // result is a constant element on the same chart (exp parts collapse to
  // exp of a rational, kept symbolic).
  Scalar evaluated(const std::vector<Rational>& point) const;

  bool is_polynomial() const;       // no exp part, no negative exponents
  bool is_laurent_monomial() const; // single term, no exp part, one monomial
  bool is_unit() const;
  Scalar inverse() const;  // NotAUnit when no inverse exists in the ring
  std::optional<Rational> as_constant() const;
  bool depends_on(int var) const;

  std::string str() const;

private:
  Scalar(ChartPtr chart, TermMap terms)
      : chart_(std::move(chart)), terms_(std::move(terms)) {}
  void add_part(const Poly& q, const Poly& f);

  ChartPtr chart_;
  TermMap terms_;
};

}  // namespace solder
