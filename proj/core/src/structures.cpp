#include "solder/structures.hpp"

#include <sstream>

namespace solder {

void IdentityReport::record(const std::string& name, bool pass,
                            const std::string& detail) {
  std::string line = name + ": " + (pass ? "ok" : "FAIL");
  if (!pass && !detail.empty()) line += " (" + detail + ")";
  lines.push_back(std::move(line));
  ok = ok && pass;
}

void IdentityReport::absorb(const std::string& name, const StructureReport& r) {
  record(name, r.ok, r.witness);
}

JacobiPair JacobiPair::make(Multivector bivector, Multivector field) {
  if (bivector.degree() != 2)
    throw DegreeMismatch("pair needs a bivector, got degree " +
                         std::to_string(bivector.degree()));
  if (field.degree() != 1)
    throw DegreeMismatch("pair needs a vector field, got degree " +
                         std::to_string(field.degree()));
  require_same_chart(bivector.chart(), field.chart(), "structure pair");
  return JacobiPair{std::move(bivector), std::move(field)};
}

namespace {
std::string component_witness(const Multivector& t) {
  auto nz = t.first_nonzero();
  if (!nz) return "";
  return detail::tuple_str(*t.chart(), nz->first) + " = " + nz->second.str();
}
}  // namespace

StructureReport is_poisson(const Multivector& pi) {
  if (pi.degree() != 2)
    throw DegreeMismatch("Poisson test needs a bivector, got degree " +
                         std::to_string(pi.degree()));
  Multivector bracket = schouten(pi, pi);
  if (bracket.is_zero()) return {true, ""};
  return {false, "[pi,pi] " + component_witness(bracket)};
}

StructureReport is_jacobi(const JacobiPair& pair) {
  Multivector defect = schouten(pair.bivector, pair.bivector) +
                       wedge(pair.field, pair.bivector).scaled(Rational(2));
  if (!defect.is_zero())
    return {false, "[L,L] + 2 E^L " + component_witness(defect)};
  Multivector invariance = schouten(pair.field, pair.bivector);
  if (!invariance.is_zero())
    return {false, "[E,L] " + component_witness(invariance)};
  return {true, ""};
}

Scalar jacobi_bracket(const JacobiPair& pair, const Scalar& f, const Scalar& g) {
  DifferentialForm df = exterior_derivative(DifferentialForm::from_scalar(f));
  DifferentialForm dg = exterior_derivative(DifferentialForm::from_scalar(g));
  return pairing(pair.bivector, df, dg) + f * derive_along(pair.field, g) -
         g * derive_along(pair.field, f);
}

Scalar poisson_bracket(const Multivector& pi, const Scalar& f, const Scalar& g) {
  if (pi.degree() != 2)
    throw DegreeMismatch("bracket needs a bivector");
  DifferentialForm df = exterior_derivative(DifferentialForm::from_scalar(f));
  DifferentialForm dg = exterior_derivative(DifferentialForm::from_scalar(g));
  return pairing(pi, df, dg);
}

Multivector hamiltonian_field(const JacobiPair& pair, const Scalar& f) {
  DifferentialForm df = exterior_derivative(DifferentialForm::from_scalar(f));
  return sharp(pair.bivector, df) + pair.field.scaled(f);
}

Multivector hamiltonian_field(const Multivector& pi, const Scalar& f) {
  if (pi.degree() != 2)
    throw DegreeMismatch("Hamiltonian field needs a bivector");
  DifferentialForm df = exterior_derivative(DifferentialForm::from_scalar(f));
  return sharp(pi, df);
}

StructureReport is_infinitesimal_automorphism(const Multivector& x,
                                              const Multivector& pi) {
  Multivector defect = lie_derivative(x, pi);
  if (defect.is_zero()) return {true, ""};
  return {false, "[x,pi] " + component_witness(defect)};
}

StructureReport is_homogeneous(const Multivector& pi, const Multivector& z) {
  if (pi.degree() != 2 || z.degree() != 1)
    throw DegreeMismatch("homogeneity test needs a bivector and a field");
  require_same_chart(pi.chart(), z.chart(), "homogeneity test");
  Multivector defect = lie_derivative(z, pi) + pi;
  if (!defect.is_zero())
    return {false, "L_z pi + pi " + component_witness(defect)};
  // independent second route through the bracket identity on coordinates
  const ChartPtr& chart = pi.chart();
  for (int i = 0; i < chart->dim(); ++i) {
    for (int j = i + 1; j < chart->dim(); ++j) {
      Scalar zi = Scalar::variable(chart, i), zj = Scalar::variable(chart, j);
      Scalar lhs = poisson_bracket(pi, zi, zj);
      Multivector xi = hamiltonian_field(pi, zi);
      Multivector xj = hamiltonian_field(pi, zj);
      Scalar rhs = derive_along(z, lhs) -
                   derive_along(schouten(z, xi), zj) +
                   derive_along(schouten(z, xj), zi);
      if (lhs != rhs)
        return {false, "bracket identity fails on (" + chart->var(i).name +
                           ", " + chart->var(j).name + ")"};
    }
  }
  return {true, ""};
}

HomogeneousPoisson poissonize(const JacobiPair& pair) {
  const ChartPtr& base = pair.chart();
  ChartPtr ext = base->extended(base->name() + "xR", {"tau", false});
  int tau = ext->dim() - 1;
  Multivector lambda = transported(pair.bivector, ext);
  Multivector field = transported(pair.field, ext);
  Multivector dtau = Multivector::coordinate(ext, tau);
  Scalar damp = Scalar::exponential(-Scalar::variable(ext, tau));
  Multivector pi = (lambda + wedge(dtau, field)).scaled(damp);
  return {ext, std::move(pi), std::move(dtau)};
}

JacobiPair conformal_change(const JacobiPair& pair, const Scalar& phi) {
  require_same_chart(phi.chart(), pair.chart(), "conformal change");
  Scalar factor = Scalar::exponential(phi);  // NonPolynomialExponent if unfit
  DifferentialForm dphi = exterior_derivative(DifferentialForm::from_scalar(phi));
  Multivector field = (pair.field + sharp(pair.bivector, dphi)).scaled(factor);
  return JacobiPair::make(pair.bivector.scaled(factor), std::move(field));
}

ContactData ContactData::make(DifferentialForm theta, Multivector reeb,
                              Multivector bivector) {
  if (theta.degree() != 1 || reeb.degree() != 1 || bivector.degree() != 2)
    throw DegreeMismatch("contact data needs a one-form, a field, and a bivector");
  require_same_chart(theta.chart(), reeb.chart(), "contact data");
  require_same_chart(theta.chart(), bivector.chart(), "contact data");
  if (theta.chart()->dim() % 2 == 0)
    throw PreconditionFailed("contact data lives on an odd-dimensional chart");
  return ContactData{std::move(theta), std::move(reeb), std::move(bivector)};
}

IdentityReport contact_verify(const ContactData& data,
                              const std::vector<Rational>& point) {
  const ChartPtr& chart = data.chart();
  int m = (chart->dim() - 1) / 2;
  IdentityReport report;

  DifferentialForm dtheta = exterior_derivative(data.theta);
  DifferentialForm volume = data.theta;
  for (int i = 0; i < m; ++i) volume = wedge(volume, dtheta);
  if (volume.evaluated(point).is_zero())
    throw NondegeneracyFailure("theta ^ (dtheta)^" + std::to_string(m) +
                               " vanishes at the given point");
  report.record("volume form nonzero at point", true);

  report.record("i(E) theta = 1",
                interior(data.reeb, data.theta).scalar_part() ==
                    Scalar::one(chart));
  report.record("i(E) dtheta = 0", interior(data.reeb, dtheta).is_zero());

  std::vector<std::pair<std::string, Scalar>> functions;
  functions.emplace_back("1", Scalar::one(chart));
  for (int i = 0; i < chart->dim(); ++i)
    functions.emplace_back(chart->var(i).name, Scalar::variable(chart, i));
  JacobiPair pair = JacobiPair::make(data.bivector, data.reeb);
  for (const auto& [name, f] : functions) {
    Multivector xf = hamiltonian_field(pair, f);
    DifferentialForm df = exterior_derivative(DifferentialForm::from_scalar(f));
    bool pair_ok = interior(xf, data.theta).scalar_part() == f;
    bool kernel_ok = interior(xf, dtheta) ==
                     -df + data.theta.scaled(derive_along(data.reeb, f));
    report.record("i(X_f) theta = f, f = " + name, pair_ok);
    report.record("i(X_f) dtheta = -df + (Ef) theta, f = " + name, kernel_ok);
  }

  bool pairing_ok = true;
  std::string pairing_witness;
  for (int i = 0; i < chart->dim() && pairing_ok; ++i) {
    for (int j = i + 1; j < chart->dim() && pairing_ok; ++j) {
      DifferentialForm di = DifferentialForm::coordinate(chart, i);
      DifferentialForm dj = DifferentialForm::coordinate(chart, j);
      Scalar lhs = pairing(data.bivector, di, dj);
      Scalar rhs = pairing(dtheta, sharp(data.bivector, di),
                           sharp(data.bivector, dj));
      if (lhs != rhs) {
        pairing_ok = false;
        pairing_witness = "(" + chart->var(i).name + ", " + chart->var(j).name + ")";
      }
    }
  }
  report.record("L(df,dg) = dtheta(sharp df, sharp dg)", pairing_ok,
                pairing_witness);

  report.absorb("jacobi pair", is_jacobi(pair));
  return report;
}

LcsData LcsData::make(DifferentialForm omega, DifferentialForm lee,
                      Multivector bivector, Multivector field) {
  if (omega.degree() != 2 || lee.degree() != 1 || bivector.degree() != 2 ||
      field.degree() != 1)
    throw DegreeMismatch("lcs data needs a two-form, a one-form, a bivector, "
                         "and a field");
  require_same_chart(omega.chart(), lee.chart(), "lcs data");
  require_same_chart(omega.chart(), bivector.chart(), "lcs data");
  require_same_chart(omega.chart(), field.chart(), "lcs data");
  if (omega.chart()->dim() % 2 != 0)
    throw PreconditionFailed("lcs data lives on an even-dimensional chart");
  return LcsData{std::move(omega), std::move(lee), std::move(bivector),
                 std::move(field)};
}

IdentityReport lcs_verify(const LcsData& data,
                          const std::vector<Rational>& point) {
  const ChartPtr& chart = data.chart();
  int m = chart->dim() / 2;
  IdentityReport report;

  DifferentialForm power = data.omega;
  for (int i = 1; i < m; ++i) power = wedge(power, data.omega);
  if (power.evaluated(point).is_zero())
    throw NondegeneracyFailure("omega^" + std::to_string(m) +
                               " vanishes at the given point");
  report.record("volume form nonzero at point", true);

  report.record("lee form closed", exterior_derivative(data.lee).is_zero());
  report.record("d omega = lee ^ omega",
                exterior_derivative(data.omega) == wedge(data.lee, data.omega));

  bool musical_ok = true;
  std::string musical_witness;
  for (int i = 0; i < chart->dim(); ++i) {
    DifferentialForm di = DifferentialForm::coordinate(chart, i);
    if (flat(data.omega, sharp(data.bivector, di)) != di) {
      musical_ok = false;
      musical_witness = "d" + chart->var(i).name;
      break;
    }
  }
  report.record("flat(omega, sharp(L, a)) = a", musical_ok, musical_witness);

  report.record("E = sharp(L, lee)",
                data.field == sharp(data.bivector, data.lee));
  report.absorb("jacobi pair",
                is_jacobi(JacobiPair::make(data.bivector, data.field)));
  return report;
}

IdentityReport symplectization_check(const ContactData& data,
                                     const Multivector& pi,
                                     const std::vector<Rational>& point) {
  const ChartPtr& base = data.chart();
  ChartPtr ext = base->extended(base->name() + "xR", {"tau", false});
  require_same_chart(pi.chart(), ext, "symplectization bivector");
  int tau = ext->dim() - 1;

  DifferentialForm theta = transported(data.theta, ext);
  DifferentialForm dtau = DifferentialForm::coordinate(ext, tau);
  Scalar grow = Scalar::exponential(Scalar::variable(ext, tau));
  DifferentialForm omega =
      (exterior_derivative(theta) + wedge(dtau, theta)).scaled(grow);

  IdentityReport report;
  std::vector<Rational> ext_point = point;
  ext_point.push_back(Rational(0));
  int m = ext->dim() / 2;
  DifferentialForm power = omega;
  for (int i = 1; i < m; ++i) power = wedge(power, omega);
  if (power.evaluated(ext_point).is_zero())
    throw NondegeneracyFailure("symplectization form degenerates at the point");
  report.record("volume form nonzero at point", true);

  report.record("d omega = 0 on the extension",
                exterior_derivative(omega).is_zero());

  bool inverse_ok = true;
  std::string witness;
  for (int i = 0; i < ext->dim(); ++i) {
    Multivector ei = Multivector::coordinate(ext, i);
    if (sharp(pi, flat(omega, ei)) != -ei) {
      inverse_ok = false;
      witness = "d/d" + ext->var(i).name;
      break;
    }
  }
  report.record("sharp(pi, flat(omega, X)) = -X", inverse_ok, witness);
  return report;
}

}  // namespace solder
