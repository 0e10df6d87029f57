#pragma once

#include <string>
#include <vector>

#include "solder/submanifold.hpp"

namespace solder {

// Chart of the tangent bundle: base variables first, then one fiber variable
// "<name>_dot" per base variable. Fiber variables are never Laurent.
struct TangentChart {
  ChartPtr base;
  ChartPtr total;

  int base_dim() const { return base->dim(); }
  int dot(int base_index) const;        // fiber index of a base variable
  bool is_dot(int total_index) const { return total_index >= base->dim(); }
  int base_index(int total_index) const;
};

// Throws VariableClash when a "<name>_dot" collides with an existing name.
TangentChart make_tangent_chart(const ChartPtr& base);

// Complete (flow) lift. For a function: sum_l zdot^l df/dz^l. For forms and
// multivectors, per sorted component: one term per index position (that
// index replaced by its fiber partner for forms, all the other indices
// replaced for multivectors) plus a derivative term (original index tuple
// for forms, the all-fiber tuple for multivectors).
Scalar complete_lift(const Scalar& f, const TangentChart& tc);
DifferentialForm complete_lift(const DifferentialForm& k, const TangentChart& tc);
Multivector complete_lift(const Multivector& q, const TangentChart& tc);

// Vertical lift: base coefficients on the all-fiber index tuple.
// Degree 1 or 2 only.
Multivector vertical_lift(const Multivector& q, const TangentChart& tc);

// Euler field of the fibration, sum_i zdot^i d/dzdot^i.
Multivector euler_field(const TangentChart& tc);

// Complete lift of a Poisson bivector; the result is verified to be Poisson.
Multivector tangent_poisson(const Multivector& pi);

// Tangent Jacobi structure (L^C - L^V - Euler ^ (E^C - E^V), E^C) together
// with its homogeneous poissonization on the further-extended chart. Both
// outputs are verified (Jacobi, Poisson, homogeneous).
struct TangentJacobi {
  TangentChart chart;
  JacobiPair pair;
  HomogeneousPoisson poissonization;
};
TangentJacobi tangent_jacobi(const JacobiPair& pair);

// True when sharp(pi, dw) is tangent to the common zero locus of the
// defining variables, for every defining variable w.
bool is_coisotropic(const Multivector& pi, const std::vector<int>& defining);
bool is_coisotropic(const Multivector& pi,
                    const std::vector<std::string>& defining);

// Soldering decided on the tangent bundle: the normal bundle of the
// submanifold sits inside it as {x^a = c^a, ydot^u = 0}, and the lift of a
// soldered tensor has a characteristic vanishing pattern there (pure-tangent
// components for forms, all-normal components for multivectors, full value
// for scalars). Agrees with the direct componentwise checks.
bool soldering_via_lift(const Scalar& f, const NormalizedSubmanifold& sub);
bool soldering_via_lift(const DifferentialForm& k,
                        const NormalizedSubmanifold& sub);
bool soldering_via_lift(const Multivector& q, const NormalizedSubmanifold& sub);

}  // namespace solder
