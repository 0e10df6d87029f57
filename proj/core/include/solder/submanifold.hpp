#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solder/structures.hpp"

namespace solder {

// Coordinate submanifold N = {x^a = c^a} of a chart, together with the
// normal bundle spanned by the d/dx^a. Tangent variables keep their names on
// the induced sub-chart. Values c^a must be 0 except on Laurent variables.
class NormalizedSubmanifold {
public:
  static NormalizedSubmanifold make(ChartPtr chart,
                                    std::vector<std::pair<int, Rational>> normals);
  static NormalizedSubmanifold make_by_name(
      const ChartPtr& chart,
      const std::vector<std::pair<std::string, Rational>>& normals);

  const ChartPtr& ambient() const { return chart_; }
  const ChartPtr& tangent_chart() const { return tangent_chart_; }
  const std::vector<std::pair<int, Rational>>& normals() const { return normals_; }
  const std::vector<int>& tangent_indices() const { return tangent_; }
  bool is_normal(int var) const;
  Rational normal_value(int var) const;  // UnknownVariable if not normal

  // Restriction to N, expressed on the tangent sub-chart.
  Scalar restricted(const Scalar& s) const;
  bool vanishes_on(const Scalar& s) const { return restricted(s).is_zero(); }

  std::string locus_str() const;
  bool operator==(const NormalizedSubmanifold& other) const;

private:
  NormalizedSubmanifold() = default;
  ChartPtr chart_;
  std::vector<std::pair<int, Rational>> normals_;  // sorted by index
  std::vector<int> tangent_;
  ChartPtr tangent_chart_;
};

struct SolderingReport {
  bool ok = true;
  std::vector<std::string> witnesses;
  std::string first_witness() const { return witnesses.empty() ? "" : witnesses.front(); }
};

// A tensor is soldered when its components with exactly one normal index
// vanish on N and its pure-tangent components have vanishing normal
// derivatives on N. Components with two or more normal indices are free.
// Degree 0 has only the derivative condition.
SolderingReport is_soldered(const DifferentialForm& k,
                            const NormalizedSubmanifold& sub);
SolderingReport is_soldered(const Multivector& q,
                            const NormalizedSubmanifold& sub);

// Symmetric case: mixed components g_{au} vanish on N, tangential components
// have vanishing normal derivatives. The per-normal derivative blocks (the
// second-fundamental data) are returned whether or not the check passes.
struct SymmetricSoldering {
  SolderingReport report;
  std::vector<std::pair<int, SymmetricTwoTensor>> data;  // on the tangent chart
};
SymmetricSoldering is_soldered(const SymmetricTwoTensor& g,
                               const NormalizedSubmanifold& sub);

// Classification of a Poisson bivector against the submanifold. Flags:
//   aPc          pi^{au}| = 0 (algebraic compatibility)
//   quasiDirac   d(pi^{uv})/dx^a| = 0
//   dirac        both of the above
//   strongDirac  dirac and d(pi^{uv})/dx^a = 0 identically on the chart
//   cosymplectic det(pi^{ab}|) is a unit of the scalar ring
// plus the soldering aliases solderedAlgebraic = aPc and soldered = dirac.
struct PoissonFlags {
  bool apc = true;
  bool quasi_dirac = true;
  bool dirac = true;
  bool strong_dirac = true;
  bool cosymplectic = false;
  std::map<std::string, std::string> witnesses;

  bool flag(const std::string& name) const;  // NameError on unknown name
  std::vector<std::pair<std::string, bool>> all() const;
};
PoissonFlags classify_poisson(const Multivector& pi,
                              const NormalizedSubmanifold& sub);

// Jacobi classification. Flags:
//   almostDirac  the bivector alone is soldered
//   aJc          L^{au}| = 0 and E^a| = 0 (algebraic compatibility)
//   quasiDirac   d(L^{uv})/dx^a| = 0 and d(E^u)/dx^a| = 0
//   dirac        both tensors soldered
//   fieldNormal  E^u| = 0 (forces a Poisson induced structure)
struct JacobiFlags {
  bool almost_dirac = true;
  bool ajc = true;
  bool quasi_dirac = true;
  bool dirac = true;
  bool field_normal = true;
  std::map<std::string, std::string> witnesses;

  bool flag(const std::string& name) const;
  std::vector<std::pair<std::string, bool>> all() const;
};
JacobiFlags classify_jacobi(const JacobiPair& pair,
                            const NormalizedSubmanifold& sub);

// Pure-tangent components restricted to N, on the tangent sub-chart.
Multivector tangential_restriction(const Multivector& q,
                                   const NormalizedSubmanifold& sub);
DifferentialForm tangential_restriction(const DifferentialForm& k,
                                        const NormalizedSubmanifold& sub);

// Induced structure on N. For a bivector: needs aPc or quasiDirac. For a
// pair: needs almostDirac, aJc, quasiDirac, or (algebraic bivector
// compatibility with a normal field). The kind is Poisson exactly when the
// restricted field vanishes.
struct InducedStructure {
  bool jacobi_kind = false;
  JacobiPair pair;
};
InducedStructure induced_structure(const Multivector& pi,
                                   const NormalizedSubmanifold& sub);
InducedStructure induced_structure(const JacobiPair& pair,
                                   const NormalizedSubmanifold& sub);

// Tangential restriction of L_{d/dx^a} T per normal direction a; vanishes
// for every a exactly when the corresponding soldering flag holds.
std::vector<std::pair<int, Multivector>> second_fundamental(
    const Multivector& pi, const NormalizedSubmanifold& sub);
struct JacobiSecondFundamental {
  int normal;
  Multivector bivector_part;
  Multivector field_part;
};
std::vector<JacobiSecondFundamental> second_fundamental(
    const JacobiPair& pair, const NormalizedSubmanifold& sub);
std::vector<std::pair<int, SymmetricTwoTensor>> second_fundamental(
    const SymmetricTwoTensor& g, const NormalizedSubmanifold& sub);

// Candidate change of normal bundle: entries theta^u_a (tangent x normal)
// over the ambient chart, describing the frame X_a = d/dx^a - theta^u_a d/dy^u.
class FrameMatrix {
public:
  static FrameMatrix zero(ChartPtr chart);
  const ChartPtr& chart() const { return chart_; }
  void set_entry(int tangent_var, int normal_var, const Scalar& value);
  Scalar entry(int tangent_var, int normal_var) const;
  const std::map<std::pair<int, int>, Scalar>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  bool operator==(const FrameMatrix& other) const;
  std::string str() const;

private:
  explicit FrameMatrix(ChartPtr chart) : chart_(std::move(chart)) {}
  ChartPtr chart_;
  std::map<std::pair<int, int>, Scalar> entries_;  // (tangent var, normal var)
};

// Evaluates the two frame conditions for the tilted normal bundle at x=c.
// apc_tilde: (pi^{ab} theta^u_b)| = 0. dirac_tilde: the derivative condition
//   [d_c(pi^{ab}) theta^u_a theta^v_b + d_c(pi^{av}) theta^u_a
//    - d_c(pi^{au}) theta^v_a - theta^w_c d_w(pi^{uv})]| = 0.
// The two flags are evaluated independently; requires a Dirac instance.
struct FrameFlags {
  bool apc_tilde = true;
  bool dirac_tilde = true;
  std::map<std::string, std::string> witnesses;
};
FrameFlags alternate_normal_check(const Multivector& pi,
                                  const NormalizedSubmanifold& sub,
                                  const FrameMatrix& theta);

// Tangential bivector as seen from the tilted frame:
// pi~^{uv} = pi^{uv} + pi^{av} theta^u_a - pi^{au} theta^v_a
//            + pi^{ab} theta^u_a theta^v_b, restricted to N.
Multivector frame_induced_bivector(const Multivector& pi,
                                   const NormalizedSubmanifold& sub,
                                   const FrameMatrix& theta);

// Conformal exponent phi = sum_a (x^a - c^a) mu_a(y) solving
// (L^{ab}|) mu_b = E^a| through the adjugate; the changed pair has a field
// tangent to N. Requires L^{au}| = 0 and an invertible normal block.
Scalar conformal_flatten(const JacobiPair& pair,
                         const NormalizedSubmanifold& sub);

// Checks the three tubular-chart bracket identities for tangent-only f, g:
// restriction commutes with the bracket, Hamiltonian fields match through
// the projection, and the bracket is normal-derivative-flat on N.
IdentityReport tubular_poisson_check(const Multivector& pi,
                                     const NormalizedSubmanifold& sub,
                                     const Scalar& f, const Scalar& g);

// Randomized closure harness for the soldered complex: generates soldered
// scalars/forms/multivectors constructively and asserts closure under d,
// wedge, interior product, and the Schouten bracket; with a soldered Poisson
// bivector also asserts sharp preservation and the chain identity
// [pi, sharp(k)] = sharp(dk). Deterministic for a fixed seed.
IdentityReport soldered_closure_suite(
    const NormalizedSubmanifold& sub, int samples,
    const std::optional<Multivector>& soldered_poisson = std::nullopt,
    std::uint64_t seed = 20240817u);

// For an involution preserving the tensor, splits coordinates into fixed
// (tangent) and flipped (normal) ones along the fixed locus and checks
// soldering there. Throws NotInvolution, NotPreserved (with the defect),
// or LocusNotCoordinate.
struct InvolutionOutcome {
  NormalizedSubmanifold locus;
  SolderingReport soldering;
};
InvolutionOutcome involution_fixed_locus_check(const DifferentialForm& k,
                                               const PolyMap& map);
InvolutionOutcome involution_fixed_locus_check(const Multivector& q,
                                               const PolyMap& map);

// Exact determinant of a square Scalar matrix by cofactor expansion
// (empty matrix gives 1).
Scalar determinant(const std::vector<std::vector<Scalar>>& m, const ChartPtr& chart);

}  // namespace solder
