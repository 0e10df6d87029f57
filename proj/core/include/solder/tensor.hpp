#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solder/scalar.hpp"

namespace solder {

namespace detail {
// Sorts the tuple ascending; returns the permutation sign, or 0 when an
// index repeats.
int sort_with_sign(std::vector<int>& tuple);
std::string tuple_str(const Chart& chart, const std::vector<int>& tuple);
}  // namespace detail

struct MultivectorTag;
struct FormTag;

// Fully antisymmetric tensor of fixed degree, stored on strictly increasing
// index tuples. The stored value is the complete component for that sorted
// tuple; `component` resolves arbitrary tuples with the permutation sign.
// The Tag keeps contravariant (multivector) and covariant (form) objects
// apart at the type level while sharing the implementation.
template <class Tag>
class Alternating {
public:
  using Components = std::map<std::vector<int>, Scalar>;

  static Alternating zero(ChartPtr chart, int degree);
  static Alternating from_scalar(const Scalar& s);      // degree 0
  static Alternating coordinate(ChartPtr chart, int index);  // degree 1 basis

  int degree() const { return degree_; }
  const ChartPtr& chart() const { return chart_; }
  const Components& components() const { return components_; }

  Scalar component(const std::vector<int>& indices) const;
  void set_component(const std::vector<int>& sorted_indices, const Scalar& value);
  void add_term(std::vector<int> indices, const Scalar& value);

  Alternating operator+(const Alternating& other) const;
  Alternating operator-(const Alternating& other) const;
  Alternating operator-() const;
  Alternating scaled(const Scalar& s) const;
  Alternating scaled(const Rational& c) const;

  bool is_zero() const { return components_.empty(); }
  bool operator==(const Alternating& other) const;
  bool operator!=(const Alternating& other) const { return !(*this == other); }

  // First stored nonzero component in canonical order, for witnesses.
  std::optional<std::pair<std::vector<int>, Scalar>> first_nonzero() const;

  Alternating evaluated(const std::vector<Rational>& point) const;
  Scalar scalar_part() const;  // degree 0 content (zero scalar otherwise)

  std::string str() const;

private:
  Alternating(ChartPtr chart, int degree)
      : chart_(std::move(chart)), degree_(degree) {}

  ChartPtr chart_;
  int degree_ = 0;
  Components components_;
};

using Multivector = Alternating<MultivectorTag>;
using DifferentialForm = Alternating<FormTag>;

Multivector wedge(const Multivector& a, const Multivector& b);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

DifferentialForm exterior_derivative(const DifferentialForm& k);

// First-slot contractions. interior(P, k) plugs the multivector into the
// leading slots of the form; interior(a, Q) plugs the form into the leading
// slots of the multivector. Degree-0 left arguments multiply.
DifferentialForm interior(const Multivector& p, const DifferentialForm& k);
Multivector interior(const DifferentialForm& a, const Multivector& q);

// Schouten bracket of multivectors, graded so that on vector fields it is
// the Lie bracket, [X, f] = Xf, and [P, P] obstructs bivector integrability.
Multivector schouten(const Multivector& p, const Multivector& q);

Multivector lie_derivative(const Multivector& x, const Multivector& q);
DifferentialForm lie_derivative(const Multivector& x, const DifferentialForm& k);

// Musical maps: sharp contracts a form into a multivector's leading slots,
// flat a vector field into a two-form.
Multivector sharp(const Multivector& p, const DifferentialForm& a);
DifferentialForm flat(const DifferentialForm& omega, const Multivector& x);

// Index raising by a bivector promoted to a cochain map: with the boundary
// operator d_pi = -[pi, .] it intertwines as d_pi(sharp_cochain(k)) =
// -sharp_cochain(dk). Differs from iterated naive raising by (-1)^degree.
Multivector sharp_cochain(const Multivector& pi, const DifferentialForm& k);

// Scalar value T(a, b) of a bivector on two one-forms (and the form analog).
Scalar pairing(const Multivector& p, const DifferentialForm& a,
               const DifferentialForm& b);
Scalar pairing(const DifferentialForm& omega, const Multivector& x,
               const Multivector& y);

// Directional derivative X(f) of a scalar along a vector field.
Scalar derive_along(const Multivector& x, const Scalar& f);

// Symmetric 2-tensor (metric-like), stored on pairs i <= j.
class SymmetricTwoTensor {
public:
  using Components = std::map<std::pair<int, int>, Scalar>;

  static SymmetricTwoTensor zero(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  const Components& components() const { return components_; }
  Scalar component(int i, int j) const;
  void set_component(int i, int j, const Scalar& value);

  SymmetricTwoTensor operator+(const SymmetricTwoTensor& other) const;
  SymmetricTwoTensor operator-(const SymmetricTwoTensor& other) const;
  SymmetricTwoTensor scaled(const Scalar& s) const;
  bool is_zero() const { return components_.empty(); }
  bool operator==(const SymmetricTwoTensor& other) const;
  SymmetricTwoTensor evaluated(const std::vector<Rational>& point) const;
  std::string str() const;

private:
  explicit SymmetricTwoTensor(ChartPtr chart) : chart_(std::move(chart)) {}
  ChartPtr chart_;
  Components components_;
};

SymmetricTwoTensor lie_derivative(const Multivector& x,
                                  const SymmetricTwoTensor& g);

// Polynomial diffeomorphism between charts, stored with its inverse and
// validated to round-trip to the identity on construction.
class PolyMap {
public:
  static PolyMap make(ChartPtr source, ChartPtr target,
                      std::vector<Scalar> forward,
                      std::vector<Scalar> backward);

  const ChartPtr& source() const { return source_; }
  const ChartPtr& target() const { return target_; }
  const Scalar& forward_component(int target_var) const;
  const Scalar& backward_component(int source_var) const;

  Scalar push_scalar(const Scalar& on_source) const;
  Scalar pull_scalar(const Scalar& on_target) const;

  bool is_involution() const;

  std::string str() const;

private:
  PolyMap(ChartPtr source, ChartPtr target, std::vector<Scalar> forward,
          std::vector<Scalar> backward)
      : source_(std::move(source)), target_(std::move(target)),
        forward_(std::move(forward)), backward_(std::move(backward)) {}
  ChartPtr source_;
  ChartPtr target_;
  std::vector<Scalar> forward_;
  std::vector<Scalar> backward_;
};

Multivector pushforward(const Multivector& q, const PolyMap& map);
DifferentialForm pullback(const DifferentialForm& k, const PolyMap& map);

// Same-name transport of a tensor onto another chart that contains all of
// its variables (component scalars are moved verbatim, indices re-resolved
// by variable name).
Multivector transported(const Multivector& q, const ChartPtr& target);
DifferentialForm transported(const DifferentialForm& k, const ChartPtr& target);

}  // namespace solder
