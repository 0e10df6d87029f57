#pragma once

#include <string>
#include <vector>

#include "solder/tensor.hpp"

namespace solder {

// Outcome of a single yes/no structural test, with the first offending
// component or identity kept as a printable witness.
struct StructureReport {
  bool ok = true;
  std::string witness;
};

// Outcome of a bundle of named identities checked together.
struct IdentityReport {
  bool ok = true;
  std::vector<std::string> lines;
  void record(const std::string& name, bool pass, const std::string& detail = "");
  void absorb(const std::string& name, const StructureReport& r);
};

// Bivector plus vector field on a common chart, the data of a (candidate)
// Jacobi structure.
struct JacobiPair {
  Multivector bivector;  // degree 2
  Multivector field;     // degree 1

  static JacobiPair make(Multivector bivector, Multivector field);
  const ChartPtr& chart() const { return bivector.chart(); }
};

// [pi, pi] = 0, with the first nonzero bracket component as witness.
StructureReport is_poisson(const Multivector& pi);

// [L, L] = -2 E ^ L together with the invariance [E, L] = 0.
StructureReport is_jacobi(const JacobiPair& pair);

// {f, g} = L(df, dg) + f E(g) - g E(f).
Scalar jacobi_bracket(const JacobiPair& pair, const Scalar& f, const Scalar& g);
Scalar poisson_bracket(const Multivector& pi, const Scalar& f, const Scalar& g);

// X_f = sharp(L, df) + f E for a pair, sharp(pi, df) for a plain bivector.
Multivector hamiltonian_field(const JacobiPair& pair, const Scalar& f);
Multivector hamiltonian_field(const Multivector& pi, const Scalar& f);

// [x, pi] = 0.
StructureReport is_infinitesimal_automorphism(const Multivector& x,
                                              const Multivector& pi);

// L_z pi = -pi, cross-checked through the bracket identity
// {f,g} = z{f,g} - [z, X_f]g + [z, X_g]f on coordinate pairs.
StructureReport is_homogeneous(const Multivector& pi, const Multivector& z);

// A Poisson bivector with a distinguished homogeneity field, living on a
// chart extended by one trailing variable tau.
struct HomogeneousPoisson {
  ChartPtr chart;
  Multivector pi;
  Multivector z;
};

// exp(-tau) (L + dtau-slot ^ E) with z = d/dtau, on chart "<name>xR".
HomogeneousPoisson poissonize(const JacobiPair& pair);

// (exp(phi) L, exp(phi) (E + sharp(L, dphi))). phi must be a polynomial.
JacobiPair conformal_change(const JacobiPair& pair, const Scalar& phi);

// Contact data: one-form theta, its Reeb-like field, and the associated
// bivector, on an odd-dimensional chart.
struct ContactData {
  DifferentialForm theta;   // degree 1
  Multivector reeb;         // degree 1
  Multivector bivector;     // degree 2
  static ContactData make(DifferentialForm theta, Multivector reeb,
                          Multivector bivector);
  const ChartPtr& chart() const { return theta.chart(); }
};

// Verifies the defining identities of a contact structure and the Jacobi
// property; the volume form theta ^ (dtheta)^m must be nonzero at the given
// point (NondegeneracyFailure otherwise).
IdentityReport contact_verify(const ContactData& data,
                              const std::vector<Rational>& point);

// Locally conformal symplectic data: nondegenerate two-form, closed Lee
// form, and the induced bivector and field, on an even-dimensional chart.
struct LcsData {
  DifferentialForm omega;   // degree 2
  DifferentialForm lee;     // degree 1
  Multivector bivector;     // degree 2
  Multivector field;        // degree 1
  static LcsData make(DifferentialForm omega, DifferentialForm lee,
                      Multivector bivector, Multivector field);
  const ChartPtr& chart() const { return omega.chart(); }
};

IdentityReport lcs_verify(const LcsData& data,
                          const std::vector<Rational>& point);

// Checks that pi (on the tau-extended chart) inverts the symplectization
// form exp(tau)(dtheta + dtau ^ theta), via sharp(pi, flat(Omega, .)) = -Id
// on coordinate fields. The point is on the base chart; tau is set to 0 for
// the nondegeneracy evaluation.
IdentityReport symplectization_check(const ContactData& data,
                                     const Multivector& pi,
                                     const std::vector<Rational>& point);

}  // namespace solder
