#include "solder/lifts.hpp"

#include <algorithm>

namespace solder {

int TangentChart::dot(int base_idx) const {
  if (base_idx < 0 || base_idx >= base->dim())
    throw UnknownVariable("base index " + std::to_string(base_idx) +
                          " out of range on chart '" + base->name() + "'");
  return base_idx + base->dim();
}

int TangentChart::base_index(int total_index) const {
  if (total_index < 0 || total_index >= total->dim())
    throw UnknownVariable("index " + std::to_string(total_index) +
                          " out of range on chart '" + total->name() + "'");
  return is_dot(total_index) ? total_index - base->dim() : total_index;
}

TangentChart make_tangent_chart(const ChartPtr& base) {
  std::vector<Variable> vars = base->vars();
  for (const Variable& v : base->vars())
    vars.push_back({v.name + "_dot", false});
  return {base, Chart::make("T" + base->name(), std::move(vars))};
}

Scalar complete_lift(const Scalar& f, const TangentChart& tc) {
  require_same_chart(f.chart(), tc.base, "complete lift");
  Scalar out = Scalar::zero(tc.total);
  for (int l = 0; l < tc.base_dim(); ++l) {
    Scalar df = f.differentiate(l);
    if (df.is_zero()) continue;
    out += Scalar::variable(tc.total, tc.dot(l)) * df.on_chart(tc.total);
  }
  return out;
}

DifferentialForm complete_lift(const DifferentialForm& k,
                               const TangentChart& tc) {
  require_same_chart(k.chart(), tc.base, "complete lift");
  auto out = DifferentialForm::zero(tc.total, k.degree());
  for (const auto& [I, s] : k.components()) {
    for (size_t j = 0; j < I.size(); ++j) {
      std::vector<int> tuple = I;
      tuple[j] = tc.dot(tuple[j]);
      out.add_term(std::move(tuple), s.on_chart(tc.total));
    }
    out.add_term(I, complete_lift(s, tc));
  }
  return out;
}

Multivector complete_lift(const Multivector& q, const TangentChart& tc) {
  require_same_chart(q.chart(), tc.base, "complete lift");
  auto out = Multivector::zero(tc.total, q.degree());
  for (const auto& [I, s] : q.components()) {
    std::vector<int> dotted = I;
    for (int& idx : dotted) idx = tc.dot(idx);
    for (size_t j = 0; j < I.size(); ++j) {
      std::vector<int> tuple = dotted;
      tuple[j] = I[j];
      out.add_term(std::move(tuple), s.on_chart(tc.total));
    }
    out.add_term(std::move(dotted), complete_lift(s, tc));
  }
  return out;
}

Multivector vertical_lift(const Multivector& q, const TangentChart& tc) {
  require_same_chart(q.chart(), tc.base, "vertical lift");
  if (q.degree() < 1 || q.degree() > 2)
    throw DegreeMismatch("vertical lift is defined for degrees 1 and 2, got " +
                         std::to_string(q.degree()));
  auto out = Multivector::zero(tc.total, q.degree());
  for (const auto& [I, s] : q.components()) {
    std::vector<int> dotted = I;
    for (int& idx : dotted) idx = tc.dot(idx);
    out.add_term(std::move(dotted), s.on_chart(tc.total));
  }
  return out;
}

Multivector euler_field(const TangentChart& tc) {
  auto out = Multivector::zero(tc.total, 1);
  for (int i = 0; i < tc.base_dim(); ++i)
    out.add_term({tc.dot(i)}, Scalar::variable(tc.total, tc.dot(i)));
  return out;
}

Multivector tangent_poisson(const Multivector& pi) {
  StructureReport base = is_poisson(pi);
  if (!base.ok) throw NotPoisson("bivector is not Poisson: " + base.witness);
  TangentChart tc = make_tangent_chart(pi.chart());
  Multivector lifted = complete_lift(pi, tc);
  StructureReport check = is_poisson(lifted);
  if (!check.ok)
    throw NotPoisson("tangent lift is not Poisson: " + check.witness);
  return lifted;
}

TangentJacobi tangent_jacobi(const JacobiPair& pair) {
  StructureReport base = is_jacobi(pair);
  if (!base.ok) throw NotJacobi("pair is not Jacobi: " + base.witness);
  TangentChart tc = make_tangent_chart(pair.chart());
  Multivector lambda_c = complete_lift(pair.bivector, tc);
  Multivector lambda_v = vertical_lift(pair.bivector, tc);
  Multivector e_c = complete_lift(pair.field, tc);
  Multivector e_v = vertical_lift(pair.field, tc);
  Multivector tilted =
      lambda_c - lambda_v - wedge(euler_field(tc), e_c - e_v);
  JacobiPair lifted = JacobiPair::make(std::move(tilted), std::move(e_c));

  StructureReport check = is_jacobi(lifted);
  if (!check.ok)
    throw NotJacobi("tangent pair is not Jacobi: " + check.witness);
  HomogeneousPoisson hp = poissonize(lifted);
  StructureReport flat = is_poisson(hp.pi);
  if (!flat.ok)
    throw NotPoisson("poissonization of the tangent pair failed: " +
                     flat.witness);
  StructureReport hom = is_homogeneous(hp.pi, hp.z);
  if (!hom.ok)
    throw NotPoisson("poissonization is not homogeneous: " + hom.witness);
  return {std::move(tc), std::move(lifted), std::move(hp)};
}

bool is_coisotropic(const Multivector& pi, const std::vector<int>& defining) {
  if (pi.degree() != 2)
    throw DegreeMismatch("coisotropy needs a bivector, got degree " +
                         std::to_string(pi.degree()));
  std::vector<std::pair<int, Rational>> normals;
  normals.reserve(defining.size());
  for (int w : defining) normals.push_back({w, Rational(0)});
  auto locus = NormalizedSubmanifold::make(pi.chart(), std::move(normals));
  for (int w : defining) {
    Multivector image =
        sharp(pi, DifferentialForm::coordinate(pi.chart(), w));
    for (int v : defining)
      if (!locus.vanishes_on(image.component({v}))) return false;
  }
  return true;
}

bool is_coisotropic(const Multivector& pi,
                    const std::vector<std::string>& defining) {
  std::vector<int> indices;
  indices.reserve(defining.size());
  for (const std::string& name : defining)
    indices.push_back(pi.chart()->index_of(name));
  return is_coisotropic(pi, indices);
}

// ------------------------------------------------- lift-based soldering

namespace {

// Normal bundle of the submanifold inside the tangent chart: base normals
// keep their values, fiber coordinates of base tangents are pinned to zero.
NormalizedSubmanifold normal_bundle_locus(const NormalizedSubmanifold& sub,
                                          const TangentChart& tc) {
  std::vector<std::pair<int, Rational>> normals = sub.normals();
  for (int u : sub.tangent_indices())
    normals.push_back({tc.dot(u), Rational(0)});
  return NormalizedSubmanifold::make(tc.total, std::move(normals));
}

template <class Tag>
bool lift_vanishes(const Alternating<Tag>& lifted,
                   const NormalizedSubmanifold& locus, bool tangent_tuples) {
  for (const auto& [I, s] : lifted.components()) {
    bool relevant = true;
    for (int idx : I)
      if (locus.is_normal(idx) == tangent_tuples) relevant = false;
    if (relevant && !locus.vanishes_on(s)) return false;
  }
  return true;
}

}  // namespace

bool soldering_via_lift(const Scalar& f, const NormalizedSubmanifold& sub) {
  require_same_chart(f.chart(), sub.ambient(), "lift soldering check");
  TangentChart tc = make_tangent_chart(sub.ambient());
  return normal_bundle_locus(sub, tc).vanishes_on(complete_lift(f, tc));
}

bool soldering_via_lift(const DifferentialForm& k,
                        const NormalizedSubmanifold& sub) {
  require_same_chart(k.chart(), sub.ambient(), "lift soldering check");
  TangentChart tc = make_tangent_chart(sub.ambient());
  NormalizedSubmanifold locus = normal_bundle_locus(sub, tc);
  return lift_vanishes(complete_lift(k, tc), locus, /*tangent_tuples=*/true);
}

bool soldering_via_lift(const Multivector& q,
                        const NormalizedSubmanifold& sub) {
  require_same_chart(q.chart(), sub.ambient(), "lift soldering check");
  TangentChart tc = make_tangent_chart(sub.ambient());
  NormalizedSubmanifold locus = normal_bundle_locus(sub, tc);
  return lift_vanishes(complete_lift(q, tc), locus, /*tangent_tuples=*/false);
}

}  // namespace solder
