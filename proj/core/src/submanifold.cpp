#include "solder/submanifold.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace solder {

// ------------------------------------------------- NormalizedSubmanifold

NormalizedSubmanifold NormalizedSubmanifold::make(
    ChartPtr chart, std::vector<std::pair<int, Rational>> normals) {
  std::sort(normals.begin(), normals.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < normals.size(); ++i) {
    auto [idx, value] = normals[i];
    if (idx < 0 || idx >= chart->dim())
      throw UnknownVariable("normal index " + std::to_string(idx) +
                            " out of range on chart '" + chart->name() + "'");
    if (i > 0 && normals[i - 1].first == idx)
      throw PreconditionFailed("duplicate normal variable '" +
                               chart->var(idx).name + "'");
    if (value != 0 && !chart->var(idx).laurent)
      throw PreconditionFailed("normal value for non-Laurent variable '" +
                               chart->var(idx).name + "' must be 0");
  }
  NormalizedSubmanifold sub;
  sub.chart_ = chart;
  sub.normals_ = std::move(normals);
  for (int i = 0; i < chart->dim(); ++i)
    if (!sub.is_normal(i)) sub.tangent_.push_back(i);
  sub.tangent_chart_ = chart->restricted_to(chart->name(), sub.tangent_);
  return sub;
}

NormalizedSubmanifold NormalizedSubmanifold::make_by_name(
    const ChartPtr& chart,
    const std::vector<std::pair<std::string, Rational>>& normals) {
  std::vector<std::pair<int, Rational>> by_index;
  by_index.reserve(normals.size());
  for (const auto& [name, value] : normals)
    by_index.push_back({chart->index_of(name), value});
  return make(chart, std::move(by_index));
}

bool NormalizedSubmanifold::is_normal(int var) const {
  for (const auto& [idx, value] : normals_)
    if (idx == var) return true;
  return false;
}

Rational NormalizedSubmanifold::normal_value(int var) const {
  for (const auto& [idx, value] : normals_)
    if (idx == var) return value;
  throw UnknownVariable("variable '" + chart_->var(var).name +
                        "' is not normal to the submanifold");
}

Scalar NormalizedSubmanifold::restricted(const Scalar& s) const {
  require_same_chart(s.chart(), chart_, "restriction");
  std::map<int, Scalar> bindings;
  for (const auto& [idx, value] : normals_)
    bindings.emplace(idx, Scalar::constant(tangent_chart_, value));
  return s.substitute(bindings, tangent_chart_);
}

std::string NormalizedSubmanifold::locus_str() const {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < normals_.size(); ++i) {
    if (i) out << ", ";
    out << chart_->var(normals_[i].first).name << " = "
        << to_string(normals_[i].second);
  }
  out << "}";
  return out.str();
}

bool NormalizedSubmanifold::operator==(const NormalizedSubmanifold& other) const {
  return *chart_ == *other.chart_ && normals_ == other.normals_;
}

// --------------------------------------------------------- soldering checks

namespace {

int count_normal(const std::vector<int>& tuple, const NormalizedSubmanifold& sub) {
  int n = 0;
  for (int i : tuple)
    if (sub.is_normal(i)) ++n;
  return n;
}

template <class Tag>
SolderingReport soldering_check(const Alternating<Tag>& t,
                                const NormalizedSubmanifold& sub) {
  require_same_chart(t.chart(), sub.ambient(), "soldering check");
  SolderingReport report;
  for (const auto& [I, s] : t.components()) {
    int n = count_normal(I, sub);
    if (n == 1) {
      Scalar r = sub.restricted(s);
      if (!r.is_zero()) {
        report.ok = false;
        report.witnesses.push_back("component " +
                                   detail::tuple_str(*t.chart(), I) +
                                   " restricts to " + r.str());
      }
    } else if (n == 0) {
      for (const auto& [a, value] : sub.normals()) {
        Scalar r = sub.restricted(s.differentiate(a));
        if (!r.is_zero()) {
          report.ok = false;
          report.witnesses.push_back(
              "d" + detail::tuple_str(*t.chart(), I) + "/d" +
              t.chart()->var(a).name + " restricts to " + r.str());
        }
      }
    }
  }
  return report;
}

}  // namespace

SolderingReport is_soldered(const DifferentialForm& k,
                            const NormalizedSubmanifold& sub) {
  return soldering_check(k, sub);
}

SolderingReport is_soldered(const Multivector& q,
                            const NormalizedSubmanifold& sub) {
  return soldering_check(q, sub);
}

SymmetricSoldering is_soldered(const SymmetricTwoTensor& g,
                               const NormalizedSubmanifold& sub) {
  require_same_chart(g.chart(), sub.ambient(), "soldering check");
  SymmetricSoldering out;
  const auto& chart = g.chart();
  for (const auto& [key, s] : g.components()) {
    bool in = sub.is_normal(key.first), jn = sub.is_normal(key.second);
    if (in != jn) {  // exactly one normal index
      Scalar r = sub.restricted(s);
      if (!r.is_zero()) {
        out.report.ok = false;
        out.report.witnesses.push_back(
            "component [" + chart->var(key.first).name + "," +
            chart->var(key.second).name + "] restricts to " + r.str());
      }
    }
  }
  for (const auto& [a, value] : sub.normals()) {
    auto block = SymmetricTwoTensor::zero(sub.tangent_chart());
    const auto& tangent = sub.tangent_indices();
    for (size_t i = 0; i < tangent.size(); ++i) {
      for (size_t j = i; j < tangent.size(); ++j) {
        Scalar r = sub.restricted(
            g.component(tangent[i], tangent[j]).differentiate(a));
        if (r.is_zero()) continue;
        block.set_component(static_cast<int>(i), static_cast<int>(j), r);
        out.report.ok = false;
        out.report.witnesses.push_back(
            "d[" + chart->var(tangent[i]).name + "," +
            chart->var(tangent[j]).name + "]/d" + chart->var(a).name +
            " restricts to " + r.str());
      }
    }
    out.data.push_back({a, std::move(block)});
  }
  return out;
}

// ----------------------------------------------------------- classification

bool PoissonFlags::flag(const std::string& name) const {
  if (name == "aPc" || name == "solderedAlgebraic") return apc;
  if (name == "quasiDirac") return quasi_dirac;
  if (name == "dirac" || name == "soldered") return dirac;
  if (name == "strongDirac") return strong_dirac;
  if (name == "cosymplectic") return cosymplectic;
  throw NameError("unknown Poisson flag '" + name + "'");
}

std::vector<std::pair<std::string, bool>> PoissonFlags::all() const {
  return {{"aPc", apc},
          {"quasiDirac", quasi_dirac},
          {"dirac", dirac},
          {"strongDirac", strong_dirac},
          {"cosymplectic", cosymplectic},
          {"solderedAlgebraic", apc},
          {"soldered", dirac}};
}

bool JacobiFlags::flag(const std::string& name) const {
  if (name == "almostDirac") return almost_dirac;
  if (name == "aJc") return ajc;
  if (name == "quasiDirac") return quasi_dirac;
  if (name == "dirac") return dirac;
  if (name == "fieldNormal") return field_normal;
  throw NameError("unknown Jacobi flag '" + name + "'");
}

std::vector<std::pair<std::string, bool>> JacobiFlags::all() const {
  return {{"almostDirac", almost_dirac},
          {"aJc", ajc},
          {"quasiDirac", quasi_dirac},
          {"dirac", dirac},
          {"fieldNormal", field_normal}};
}

PoissonFlags classify_poisson(const Multivector& pi,
                              const NormalizedSubmanifold& sub) {
  require_same_chart(pi.chart(), sub.ambient(), "classification");
  StructureReport poisson = is_poisson(pi);
  if (!poisson.ok)
    throw NotPoisson("bivector is not Poisson: " + poisson.witness);

  PoissonFlags flags;
  const auto& chart = pi.chart();
  for (const auto& [a, value] : sub.normals()) {
    for (int u : sub.tangent_indices()) {
      Scalar r = sub.restricted(pi.component({a, u}));
      if (!r.is_zero() && flags.apc) {
        flags.apc = false;
        flags.witnesses["aPc"] = "[" + chart->var(a).name + "," +
                                 chart->var(u).name + "]| = " + r.str();
      }
    }
  }
  const auto& tangent = sub.tangent_indices();
  for (size_t i = 0; i < tangent.size(); ++i) {
    for (size_t j = i + 1; j < tangent.size(); ++j) {
      Scalar comp = pi.component({tangent[i], tangent[j]});
      for (const auto& [a, value] : sub.normals()) {
        Scalar d = comp.differentiate(a);
        std::string where = "d[" + chart->var(tangent[i]).name + "," +
                            chart->var(tangent[j]).name + "]/d" +
                            chart->var(a).name;
        if (flags.quasi_dirac && !sub.vanishes_on(d)) {
          flags.quasi_dirac = false;
          flags.witnesses["quasiDirac"] = where + "| = " +
                                          sub.restricted(d).str();
        }
        if (flags.strong_dirac && !d.is_zero()) {
          flags.strong_dirac = false;
          flags.witnesses["strongDirac"] = where + " = " + d.str() +
                                           " (not identically zero)";
        }
      }
    }
  }
  flags.dirac = flags.apc && flags.quasi_dirac;
  if (!flags.dirac) {
    flags.strong_dirac = false;
    if (!flags.witnesses.count("strongDirac"))
      flags.witnesses["strongDirac"] = "submanifold is not Dirac";
    flags.witnesses.emplace("dirac", flags.apc
                                         ? flags.witnesses["quasiDirac"]
                                         : flags.witnesses["aPc"]);
  }

  std::vector<std::vector<Scalar>> block;
  const auto& normals = sub.normals();
  block.resize(normals.size());
  for (size_t i = 0; i < normals.size(); ++i)
    for (size_t j = 0; j < normals.size(); ++j)
      block[i].push_back(
          sub.restricted(pi.component({normals[i].first, normals[j].first})));
  Scalar det = determinant(block, sub.tangent_chart());
  flags.cosymplectic = det.is_unit();
  if (!flags.cosymplectic)
    flags.witnesses["cosymplectic"] = "det(normal block)| = " + det.str() +
                                      " is not a unit";
  return flags;
}

JacobiFlags classify_jacobi(const JacobiPair& pair,
                            const NormalizedSubmanifold& sub) {
  require_same_chart(pair.chart(), sub.ambient(), "classification");
  StructureReport jac = is_jacobi(pair);
  if (!jac.ok) throw NotJacobi("pair is not Jacobi: " + jac.witness);

  JacobiFlags flags;
  const auto& chart = pair.chart();

  SolderingReport lambda_soldered = is_soldered(pair.bivector, sub);
  flags.almost_dirac = lambda_soldered.ok;
  if (!flags.almost_dirac)
    flags.witnesses["almostDirac"] = lambda_soldered.first_witness();

  bool lambda_algebraic = true;
  std::string lambda_alg_witness;
  for (const auto& [a, value] : sub.normals()) {
    for (int u : sub.tangent_indices()) {
      Scalar r = sub.restricted(pair.bivector.component({a, u}));
      if (!r.is_zero() && lambda_algebraic) {
        lambda_algebraic = false;
        lambda_alg_witness = "[" + chart->var(a).name + "," +
                             chart->var(u).name + "]| = " + r.str();
      }
    }
  }
  bool field_normal_part = true;
  std::string field_normal_witness;
  for (const auto& [a, value] : sub.normals()) {
    Scalar r = sub.restricted(pair.field.component({a}));
    if (!r.is_zero() && field_normal_part) {
      field_normal_part = false;
      field_normal_witness = "E[" + chart->var(a).name + "]| = " + r.str();
    }
  }
  flags.ajc = lambda_algebraic && field_normal_part;
  if (!flags.ajc)
    flags.witnesses["aJc"] =
        lambda_algebraic ? field_normal_witness : lambda_alg_witness;

  bool lambda_quasi = true;
  std::string quasi_witness;
  const auto& tangent = sub.tangent_indices();
  for (size_t i = 0; i < tangent.size() && lambda_quasi; ++i)
    for (size_t j = i + 1; j < tangent.size() && lambda_quasi; ++j)
      for (const auto& [a, value] : sub.normals()) {
        Scalar d = pair.bivector.component({tangent[i], tangent[j]})
                       .differentiate(a);
        if (!sub.vanishes_on(d)) {
          lambda_quasi = false;
          quasi_witness = "d[" + chart->var(tangent[i]).name + "," +
                          chart->var(tangent[j]).name + "]/d" +
                          chart->var(a).name + "| = " +
                          sub.restricted(d).str();
          break;
        }
      }
  bool field_quasi = true;
  for (int u : tangent) {
    for (const auto& [a, value] : sub.normals()) {
      Scalar d = pair.field.component({u}).differentiate(a);
      if (!sub.vanishes_on(d) && field_quasi) {
        field_quasi = false;
        if (quasi_witness.empty())
          quasi_witness = "dE[" + chart->var(u).name + "]/d" +
                          chart->var(a).name + "| = " +
                          sub.restricted(d).str();
      }
    }
  }
  flags.quasi_dirac = lambda_quasi && field_quasi;
  if (!flags.quasi_dirac) flags.witnesses["quasiDirac"] = quasi_witness;

  bool field_soldered = field_normal_part && field_quasi;
  flags.dirac = flags.almost_dirac && field_soldered;
  if (!flags.dirac)
    flags.witnesses.emplace("dirac", flags.almost_dirac
                                         ? (field_normal_part ? quasi_witness
                                                              : field_normal_witness)
                                         : flags.witnesses["almostDirac"]);

  for (int u : tangent) {
    Scalar r = sub.restricted(pair.field.component({u}));
    if (!r.is_zero() && flags.field_normal) {
      flags.field_normal = false;
      flags.witnesses["fieldNormal"] = "E[" + chart->var(u).name + "]| = " +
                                       r.str();
    }
  }
  return flags;
}

// ------------------------------------------------------- induced structures

namespace {

template <class Tag>
Alternating<Tag> tangential_restriction_impl(const Alternating<Tag>& t,
                                             const NormalizedSubmanifold& sub) {
  require_same_chart(t.chart(), sub.ambient(), "tangential restriction");
  const auto& tangent = sub.tangent_indices();
  std::map<int, int> position;
  for (size_t i = 0; i < tangent.size(); ++i)
    position.emplace(tangent[i], static_cast<int>(i));
  auto out = Alternating<Tag>::zero(sub.tangent_chart(), t.degree());
  for (const auto& [I, s] : t.components()) {
    if (count_normal(I, sub) != 0) continue;
    std::vector<int> idx;
    idx.reserve(I.size());
    for (int i : I) idx.push_back(position.at(i));
    out.add_term(std::move(idx), sub.restricted(s));
  }
  return out;
}

}  // namespace

Multivector tangential_restriction(const Multivector& q,
                                   const NormalizedSubmanifold& sub) {
  return tangential_restriction_impl(q, sub);
}

DifferentialForm tangential_restriction(const DifferentialForm& k,
                                        const NormalizedSubmanifold& sub) {
  return tangential_restriction_impl(k, sub);
}

InducedStructure induced_structure(const Multivector& pi,
                                   const NormalizedSubmanifold& sub) {
  PoissonFlags flags = classify_poisson(pi, sub);
  if (!flags.apc && !flags.quasi_dirac)
    throw PreconditionFailed(
        "induced structure needs aPc or quasiDirac; aPc witness: " +
        flags.witnesses.at("aPc") + "; quasiDirac witness: " +
        flags.witnesses.at("quasiDirac"));
  Multivector induced = tangential_restriction(pi, sub);
  Multivector zero_field = Multivector::zero(sub.tangent_chart(), 1);
  return {false, JacobiPair::make(std::move(induced), std::move(zero_field))};
}

InducedStructure induced_structure(const JacobiPair& pair,
                                   const NormalizedSubmanifold& sub) {
  JacobiFlags flags = classify_jacobi(pair, sub);
  bool lambda_algebraic = true;
  for (const auto& [a, value] : sub.normals())
    for (int u : sub.tangent_indices())
      if (!sub.restricted(pair.bivector.component({a, u})).is_zero())
        lambda_algebraic = false;
  bool admissible = flags.almost_dirac || flags.ajc || flags.quasi_dirac ||
                    (lambda_algebraic && flags.field_normal);
  if (!admissible)
    throw PreconditionFailed(
        "induced structure needs almostDirac, aJc, quasiDirac, or an "
        "algebraically compatible bivector with a normal field");
  Multivector lambda = tangential_restriction(pair.bivector, sub);
  Multivector field = tangential_restriction(pair.field, sub);
  bool jacobi_kind = !field.is_zero();
  return {jacobi_kind, JacobiPair::make(std::move(lambda), std::move(field))};
}

// ---------------------------------------------------- second fundamental

std::vector<std::pair<int, Multivector>> second_fundamental(
    const Multivector& pi, const NormalizedSubmanifold& sub) {
  require_same_chart(pi.chart(), sub.ambient(), "second fundamental data");
  for (const auto& [a, value] : sub.normals())
    for (int u : sub.tangent_indices()) {
      Scalar r = sub.restricted(pi.component({a, u}));
      if (!r.is_zero())
        throw PreconditionFailed(
            "second fundamental data needs algebraic compatibility; [" +
            pi.chart()->var(a).name + "," + pi.chart()->var(u).name +
            "]| = " + r.str());
    }
  std::vector<std::pair<int, Multivector>> out;
  for (const auto& [a, value] : sub.normals()) {
    Multivector lie = schouten(Multivector::coordinate(pi.chart(), a), pi);
    out.push_back({a, tangential_restriction(lie, sub)});
  }
  return out;
}

std::vector<JacobiSecondFundamental> second_fundamental(
    const JacobiPair& pair, const NormalizedSubmanifold& sub) {
  auto bivector_data = second_fundamental(pair.bivector, sub);
  for (const auto& [a, value] : sub.normals()) {
    Scalar r = sub.restricted(pair.field.component({a}));
    if (!r.is_zero())
      throw PreconditionFailed("second fundamental data needs a normal-"
                               "compatible field; E[" +
                               pair.chart()->var(a).name + "]| = " + r.str());
  }
  std::vector<JacobiSecondFundamental> out;
  for (size_t i = 0; i < bivector_data.size(); ++i) {
    int a = bivector_data[i].first;
    Multivector lie_field =
        schouten(Multivector::coordinate(pair.chart(), a), pair.field);
    out.push_back({a, std::move(bivector_data[i].second),
                   tangential_restriction(lie_field, sub)});
  }
  return out;
}

std::vector<std::pair<int, SymmetricTwoTensor>> second_fundamental(
    const SymmetricTwoTensor& g, const NormalizedSubmanifold& sub) {
  require_same_chart(g.chart(), sub.ambient(), "second fundamental data");
  for (const auto& [a, value] : sub.normals())
    for (int u : sub.tangent_indices()) {
      Scalar r = sub.restricted(g.component(a, u));
      if (!r.is_zero())
        throw PreconditionFailed(
            "second fundamental data needs algebraic compatibility; [" +
            g.chart()->var(a).name + "," + g.chart()->var(u).name +
            "]| = " + r.str());
    }
  return is_soldered(g, sub).data;
}

// -------------------------------------------------------------- frames

FrameMatrix FrameMatrix::zero(ChartPtr chart) {
  return FrameMatrix(std::move(chart));
}

void FrameMatrix::set_entry(int tangent_var, int normal_var,
                            const Scalar& value) {
  if (tangent_var < 0 || tangent_var >= chart_->dim() || normal_var < 0 ||
      normal_var >= chart_->dim())
    throw UnknownVariable("frame entry index out of range");
  require_same_chart(chart_, value.chart(), "frame entry");
  if (value.is_zero())
    entries_.erase({tangent_var, normal_var});
  else
    entries_.insert_or_assign({tangent_var, normal_var}, value);
}

Scalar FrameMatrix::entry(int tangent_var, int normal_var) const {
  auto it = entries_.find({tangent_var, normal_var});
  return it == entries_.end() ? Scalar::zero(chart_) : it->second;
}

bool FrameMatrix::operator==(const FrameMatrix& other) const {
  return *chart_ == *other.chart_ && entries_ == other.entries_;
}

std::string FrameMatrix::str() const {
  if (entries_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, value] : entries_) {
    if (!first) out << "; ";
    first = false;
    out << "[" << chart_->var(key.first).name << ";"
        << chart_->var(key.second).name << "] = " << value.str();
  }
  return out.str();
}

FrameFlags alternate_normal_check(const Multivector& pi,
                                  const NormalizedSubmanifold& sub,
                                  const FrameMatrix& theta) {
  require_same_chart(pi.chart(), sub.ambient(), "frame check");
  require_same_chart(theta.chart(), sub.ambient(), "frame check");
  for (const auto& [key, value] : theta.entries()) {
    if (sub.is_normal(key.first) || !sub.is_normal(key.second))
      throw PreconditionFailed("frame entry [" +
                               theta.chart()->var(key.first).name + ";" +
                               theta.chart()->var(key.second).name +
                               "] is not tangent x normal");
  }
  PoissonFlags base = classify_poisson(pi, sub);
  if (!base.dirac)
    throw PreconditionFailed("frame check needs a Dirac instance; " +
                             base.witnesses.at("dirac"));

  const auto& chart = pi.chart();
  FrameFlags flags;
  for (const auto& [a, av] : sub.normals()) {
    for (int u : sub.tangent_indices()) {
      Scalar acc = Scalar::zero(chart);
      for (const auto& [b, bv] : sub.normals())
        acc += pi.component({a, b}) * theta.entry(u, b);
      if (!sub.vanishes_on(acc) && flags.apc_tilde) {
        flags.apc_tilde = false;
        flags.witnesses["aPc"] = "(pi[" + chart->var(a).name +
                                 ",.] theta[" + chart->var(u).name +
                                 ";.])| = " + sub.restricted(acc).str();
      }
    }
  }
  const auto& tangent = sub.tangent_indices();
  for (const auto& [c, cv] : sub.normals()) {
    for (size_t iu = 0; iu < tangent.size(); ++iu) {
      for (size_t iv = iu + 1; iv < tangent.size(); ++iv) {
        int u = tangent[iu], v = tangent[iv];
        Scalar acc = Scalar::zero(chart);
        for (const auto& [a, av] : sub.normals()) {
          for (const auto& [b, bv] : sub.normals())
            acc += pi.component({a, b}).differentiate(c) * theta.entry(u, a) *
                   theta.entry(v, b);
          acc += pi.component({a, v}).differentiate(c) * theta.entry(u, a);
          acc = acc - pi.component({a, u}).differentiate(c) * theta.entry(v, a);
        }
        for (int w : tangent)
          acc = acc - theta.entry(w, c) * pi.component({u, v}).differentiate(w);
        if (!sub.vanishes_on(acc) && flags.dirac_tilde) {
          flags.dirac_tilde = false;
          flags.witnesses["dirac"] =
              "frame derivative condition fails on (" + chart->var(u).name +
              "," + chart->var(v).name + ") along " + chart->var(c).name +
              ": " + sub.restricted(acc).str();
        }
      }
    }
  }
  return flags;
}

Multivector frame_induced_bivector(const Multivector& pi,
                                   const NormalizedSubmanifold& sub,
                                   const FrameMatrix& theta) {
  require_same_chart(pi.chart(), sub.ambient(), "frame-induced bivector");
  const auto& tangent = sub.tangent_indices();
  auto out = Multivector::zero(sub.tangent_chart(), 2);
  for (size_t iu = 0; iu < tangent.size(); ++iu) {
    for (size_t iv = iu + 1; iv < tangent.size(); ++iv) {
      int u = tangent[iu], v = tangent[iv];
      Scalar acc = pi.component({u, v});
      for (const auto& [a, av] : sub.normals()) {
        acc += pi.component({a, v}) * theta.entry(u, a);
        acc = acc - pi.component({a, u}) * theta.entry(v, a);
        for (const auto& [b, bv] : sub.normals())
          acc += pi.component({a, b}) * theta.entry(u, a) * theta.entry(v, b);
      }
      out.add_term({static_cast<int>(iu), static_cast<int>(iv)},
                   sub.restricted(acc));
    }
  }
  return out;
}

// ------------------------------------------------------------ determinant

Scalar determinant(const std::vector<std::vector<Scalar>>& m,
                   const ChartPtr& chart) {
  size_t n = m.size();
  if (n == 0) return Scalar::one(chart);
  if (n == 1) return m[0][0];
  Scalar det = Scalar::zero(chart);
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Scalar>> minor;
    minor.reserve(n - 1);
    for (size_t i = 1; i < n; ++i) {
      std::vector<Scalar> row;
      row.reserve(n - 1);
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Scalar term = m[0][j] * determinant(minor, chart);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

namespace {

std::vector<std::vector<Scalar>> adjugate(
    const std::vector<std::vector<Scalar>>& m, const ChartPtr& chart) {
  size_t n = m.size();
  std::vector<std::vector<Scalar>> adj(n, std::vector<Scalar>());
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      // cofactor of entry (j, i), transposed
      std::vector<std::vector<Scalar>> minor;
      minor.reserve(n - 1);
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Scalar> row;
        row.reserve(n - 1);
        for (size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Scalar cof = determinant(minor, chart);
      adj[i].push_back((i + j) % 2 == 0 ? cof : -cof);
    }
  }
  return adj;
}

}  // namespace

Scalar conformal_flatten(const JacobiPair& pair,
                         const NormalizedSubmanifold& sub) {
  require_same_chart(pair.chart(), sub.ambient(), "conformal flattening");
  const auto& chart = pair.chart();
  for (const auto& [a, value] : sub.normals())
    for (int u : sub.tangent_indices()) {
      Scalar r = sub.restricted(pair.bivector.component({a, u}));
      if (!r.is_zero())
        throw PreconditionFailed("conformal flattening needs [" +
                                 chart->var(a).name + "," +
                                 chart->var(u).name + "]| = 0, got " + r.str());
    }

  const auto& normals = sub.normals();
  size_t n = normals.size();
  std::vector<std::vector<Scalar>> block(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      block[i].push_back(sub.restricted(
          pair.bivector.component({normals[i].first, normals[j].first})));
  Scalar det = determinant(block, sub.tangent_chart());
  if (!det.is_unit())
    throw NotAUnit("normal block determinant " + det.str() +
                   " is not invertible in the scalar ring");
  Scalar det_inv = det.inverse();
  auto adj = adjugate(block, sub.tangent_chart());

  std::vector<Scalar> rhs;
  rhs.reserve(n);
  for (size_t i = 0; i < n; ++i)
    rhs.push_back(sub.restricted(pair.field.component({normals[i].first})));

  Scalar phi = Scalar::zero(chart);
  for (size_t b = 0; b < n; ++b) {
    Scalar mu = Scalar::zero(sub.tangent_chart());
    for (size_t j = 0; j < n; ++j) mu += adj[b][j] * rhs[j];
    mu = mu * det_inv;
    Scalar offset = Scalar::variable(chart, normals[b].first) -
                    Scalar::constant(chart, normals[b].second);
    phi += offset * mu.on_chart(chart);
  }
  return phi;
}

// ---------------------------------------------------------------- tubular

IdentityReport tubular_poisson_check(const Multivector& pi,
                                     const NormalizedSubmanifold& sub,
                                     const Scalar& f, const Scalar& g) {
  require_same_chart(pi.chart(), sub.ambient(), "tubular check");
  require_same_chart(f.chart(), sub.ambient(), "tubular check");
  require_same_chart(g.chart(), sub.ambient(), "tubular check");
  for (const auto& [a, value] : sub.normals()) {
    if (f.depends_on(a))
      throw NotTangentFunction("f depends on normal variable '" +
                               sub.ambient()->var(a).name + "'");
    if (g.depends_on(a))
      throw NotTangentFunction("g depends on normal variable '" +
                               sub.ambient()->var(a).name + "'");
  }
  InducedStructure induced = induced_structure(pi, sub);
  const Multivector& pi_n = induced.pair.bivector;
  Scalar fn = sub.restricted(f), gn = sub.restricted(g);

  IdentityReport report;
  Scalar ambient_bracket = poisson_bracket(pi, f, g);
  report.record("restricted bracket matches induced bracket",
                poisson_bracket(pi_n, fn, gn) == sub.restricted(ambient_bracket));

  bool musical_ok = true;
  std::string musical_witness;
  auto check_field = [&](const std::string& name, const Scalar& h,
                         const Scalar& hn) {
    Multivector xh = hamiltonian_field(pi, h);
    for (const auto& [a, value] : sub.normals()) {
      if (!sub.vanishes_on(xh.component({a}))) {
        musical_ok = false;
        if (musical_witness.empty())
          musical_witness = "X_" + name + " has a normal component along " +
                            sub.ambient()->var(a).name;
      }
    }
    if (tangential_restriction(xh, sub) != hamiltonian_field(pi_n, hn)) {
      musical_ok = false;
      if (musical_witness.empty())
        musical_witness = "tangential X_" + name +
                          " differs from the induced Hamiltonian field";
    }
  };
  check_field("f", f, fn);
  check_field("g", g, gn);
  report.record("Hamiltonian fields match through the projection", musical_ok,
                musical_witness);

  bool flat_ok = true;
  std::string flat_witness;
  for (const auto& [a, value] : sub.normals()) {
    Scalar d = ambient_bracket.differentiate(a);
    if (!sub.vanishes_on(d)) {
      flat_ok = false;
      flat_witness = "d{f,g}/d" + sub.ambient()->var(a).name + "| = " +
                     sub.restricted(d).str();
      break;
    }
  }
  report.record("bracket has no first-order normal variation on N", flat_ok,
                flat_witness);
  return report;
}

// ------------------------------------------------------------ closure suite

namespace {

class SolderedGenerator {
public:
  SolderedGenerator(const NormalizedSubmanifold& sub, std::uint64_t seed)
      : sub_(sub), rng_(seed) {}

  Scalar soldered_scalar() {
    Scalar s = tangent_poly();
    int extra = pick(0, 1);
    for (int i = 0; i < extra && !sub_.normals().empty(); ++i)
      s += offset(pick_normal()) * offset(pick_normal()) * any_poly();
    return s;
  }

  Scalar any_poly() {
    const auto& chart = sub_.ambient();
    Scalar s = Scalar::constant(chart, coeff());
    int terms = pick(1, 2);
    for (int t = 0; t < terms; ++t) {
      Scalar m = Scalar::constant(chart, coeff());
      int deg = pick(0, 2);
      for (int d = 0; d < deg; ++d)
        m = m * Scalar::variable(chart, pick(0, chart->dim() - 1));
      s += m;
    }
    return s;
  }

  template <class Tag>
  Alternating<Tag> soldered_tensor(int degree) {
    const auto& chart = sub_.ambient();
    auto out = Alternating<Tag>::zero(chart, degree);
    std::vector<int> tuple;
    fill_tuples(out, tuple, 0, degree);
    return out;
  }

private:
  template <class Tag>
  void fill_tuples(Alternating<Tag>& out, std::vector<int>& tuple, int from,
                   int remaining) {
    const auto& chart = sub_.ambient();
    if (remaining == 0) {
      if (pick(0, 2) == 0) return;  // keep the tensor sparse
      int n = count_normal(tuple, sub_);
      Scalar value = n == 0   ? soldered_scalar()
                     : n == 1 ? offset(pick_normal()) * any_poly()
                              : any_poly();
      out.add_term(tuple, value);
      return;
    }
    for (int i = from; i <= chart->dim() - remaining; ++i) {
      tuple.push_back(i);
      fill_tuples(out, tuple, i + 1, remaining - 1);
      tuple.pop_back();
    }
  }

  Scalar tangent_poly() {
    const auto& chart = sub_.ambient();
    Scalar s = Scalar::constant(chart, coeff());
    if (sub_.tangent_indices().empty()) return s;
    int terms = pick(1, 2);
    for (int t = 0; t < terms; ++t) {
      Scalar m = Scalar::constant(chart, coeff());
      int deg = pick(0, 2);
      for (int d = 0; d < deg; ++d) {
        int u = sub_.tangent_indices()[static_cast<size_t>(
            pick(0, static_cast<int>(sub_.tangent_indices().size()) - 1))];
        m = m * Scalar::variable(chart, u);
      }
      s += m;
    }
    return s;
  }

  Scalar offset(int normal_var) {
    return Scalar::variable(sub_.ambient(), normal_var) -
           Scalar::constant(sub_.ambient(), sub_.normal_value(normal_var));
  }

  int pick_normal() {
    return sub_.normals()[static_cast<size_t>(
        pick(0, static_cast<int>(sub_.normals().size()) - 1))].first;
  }

  int pick(int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng_);
  }

  Rational coeff() {
    int n = pick(-2, 2);
    if (n == 0) n = 1;
    return Rational(n, pick(1, 2));
  }

  const NormalizedSubmanifold& sub_;
  std::mt19937_64 rng_;
};

struct PropertyTracker {
  bool ok = true;
  std::string witness;
  void observe(int sample, const SolderingReport& r) {
    if (ok && !r.ok) {
      ok = false;
      witness = "sample " + std::to_string(sample) + ": " + r.first_witness();
    }
  }
  void observe(int sample, bool pass, const std::string& detail) {
    if (ok && !pass) {
      ok = false;
      witness = "sample " + std::to_string(sample) + ": " + detail;
    }
  }
};

}  // namespace

IdentityReport soldered_closure_suite(
    const NormalizedSubmanifold& sub, int samples,
    const std::optional<Multivector>& soldered_poisson, std::uint64_t seed) {
  if (soldered_poisson) {
    require_same_chart(soldered_poisson->chart(), sub.ambient(),
                       "closure suite");
    if (soldered_poisson->degree() != 2)
      throw DegreeMismatch("closure suite needs a bivector");
  }
  SolderedGenerator gen(sub, seed);
  int max_degree = std::min(2, sub.ambient()->dim());

  PropertyTracker d_closed, wedge_closed, interior_closed, bracket_closed,
      module_closed, sharp_closed, chain, boundary_squares;
  for (int s = 0; s < samples; ++s) {
    Scalar f = gen.soldered_scalar();
    auto k1 = gen.soldered_tensor<FormTag>(std::min(1 + s % 2, max_degree));
    auto k2 = gen.soldered_tensor<FormTag>(1);
    auto p = gen.soldered_tensor<MultivectorTag>(std::min(1 + s % 2, max_degree));
    auto q = gen.soldered_tensor<MultivectorTag>(std::min(2 - s % 2, max_degree));
    auto y = gen.soldered_tensor<MultivectorTag>(1);
    auto z = gen.soldered_tensor<MultivectorTag>(1);

    d_closed.observe(s, is_soldered(exterior_derivative(k1), sub));
    d_closed.observe(
        s, is_soldered(exterior_derivative(DifferentialForm::from_scalar(f)), sub));
    if (k1.degree() + k2.degree() <= sub.ambient()->dim())
      wedge_closed.observe(s, is_soldered(wedge(k1, k2), sub));
    interior_closed.observe(s, is_soldered(interior(y, k1), sub));
    bracket_closed.observe(s, is_soldered(schouten(p, q), sub));
    module_closed.observe(s, is_soldered(y.scaled(f), sub));
    module_closed.observe(s, is_soldered(schouten(y, z), sub));

    if (soldered_poisson) {
      const Multivector& pi = *soldered_poisson;
      sharp_closed.observe(s, is_soldered(sharp_cochain(pi, k1), sub));
      for (const DifferentialForm& k :
           {k1, DifferentialForm::from_scalar(f)}) {
        Multivector lhs = schouten(pi, sharp_cochain(pi, k));
        Multivector rhs = sharp_cochain(pi, exterior_derivative(k));
        chain.observe(s, lhs == rhs,
                      "chain identity defect " + (lhs - rhs).str());
      }
      Multivector dd = schouten(pi, schouten(pi, q));
      boundary_squares.observe(s, dd.is_zero(),
                               "[pi,[pi,q]] = " + dd.str());
    }
  }

  std::string count = " (" + std::to_string(samples) + " samples)";
  IdentityReport report;
  report.record("d keeps soldered forms soldered" + count, d_closed.ok,
                d_closed.witness);
  report.record("wedge of soldered forms is soldered" + count,
                wedge_closed.ok, wedge_closed.witness);
  report.record("interior product by soldered fields is soldered" + count,
                interior_closed.ok, interior_closed.witness);
  report.record("Schouten bracket of soldered multivectors is soldered" + count,
                bracket_closed.ok, bracket_closed.witness);
  report.record("soldered functions and fields close under module ops" + count,
                module_closed.ok, module_closed.witness);
  if (soldered_poisson) {
    report.record("sharp maps soldered forms to soldered multivectors" + count,
                  sharp_closed.ok, sharp_closed.witness);
    report.record("[pi, sharp(k)] = sharp(dk)" + count, chain.ok, chain.witness);
    report.record("boundary operator squares to zero" + count,
                  boundary_squares.ok, boundary_squares.witness);
  }
  return report;
}

// ------------------------------------------------------------- involutions

namespace {

std::vector<std::pair<int, Rational>> involution_locus(const PolyMap& map) {
  const ChartPtr& chart = map.source();
  std::vector<std::pair<int, Rational>> normals;
  for (int v = 0; v < chart->dim(); ++v) {
    const Scalar& image = map.forward_component(v);
    Scalar var = Scalar::variable(chart, v);
    if (image == var) continue;  // fixed direction, stays tangent
    if (auto sum = (image + var).as_constant()) {
      Rational value = *sum / 2;
      if (value != 0 && !chart->var(v).laurent)
        throw LocusNotCoordinate("variable '" + chart->var(v).name +
                                 "' reflects about the nonzero value " +
                                 to_string(value));
      normals.push_back({v, value});
      continue;
    }
    if (auto prod = (image * var).as_constant()) {
      auto root = exact_sqrt(*prod);
      if (root && *root > 0 && chart->var(v).laurent) {
        normals.push_back({v, *root});
        continue;
      }
      throw LocusNotCoordinate("variable '" + chart->var(v).name +
                               "' inverts about a locus that is not a "
                               "positive rational coordinate value");
    }
    throw LocusNotCoordinate("image of '" + chart->var(v).name +
                             "' is neither fixed nor a coordinate flip: " +
                             image.str());
  }
  return normals;
}

}  // namespace

InvolutionOutcome involution_fixed_locus_check(const DifferentialForm& k,
                                               const PolyMap& map) {
  if (!(*map.source() == *map.target()) || !map.is_involution())
    throw NotInvolution("map does not square to the identity on its chart");
  require_same_chart(k.chart(), map.source(), "involution check");
  DifferentialForm defect = pullback(k, map) - k;
  if (!defect.is_zero())
    throw NotPreserved("form is not preserved by the involution", defect.str());
  auto sub = NormalizedSubmanifold::make(map.source(), involution_locus(map));
  SolderingReport report = is_soldered(k, sub);
  return {std::move(sub), std::move(report)};
}

InvolutionOutcome involution_fixed_locus_check(const Multivector& q,
                                               const PolyMap& map) {
  if (!(*map.source() == *map.target()) || !map.is_involution())
    throw NotInvolution("map does not square to the identity on its chart");
  require_same_chart(q.chart(), map.source(), "involution check");
  Multivector defect = pushforward(q, map) - q;
  if (!defect.is_zero())
    throw NotPreserved("multivector is not preserved by the involution",
                       defect.str());
  auto sub = NormalizedSubmanifold::make(map.source(), involution_locus(map));
  SolderingReport report = is_soldered(q, sub);
  return {std::move(sub), std::move(report)};
}

}  // namespace solder
