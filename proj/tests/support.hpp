#pragma once

// Seeded generators and shared fixtures for the test binaries. Everything is
// deterministic for a fixed seed so failures replay exactly.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "solder/lifts.hpp"
#include "solder/structures.hpp"
#include "solder/submanifold.hpp"

namespace testgen {

using namespace solder;

inline ChartPtr chart_n(const std::string& name, int n) {
  std::vector<Variable> vars;
  for (int i = 1; i <= n; ++i) vars.push_back({"x" + std::to_string(i), false});
  return Chart::make(name, vars);
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  bool coin() { return pick(0, 1) == 1; }

  Rational rational(bool nonzero = false) {
    int num = pick(-3, 3);
    if (nonzero && num == 0) num = coin() ? 1 : -1;
    return Rational(num, pick(1, 2));
  }

  // Polynomial supported on the listed variables (all chart variables when
  // the list is empty), with the given monomial degree bound.
  Scalar poly(const ChartPtr& chart, std::vector<int> vars = {},
              int max_degree = 2, int terms = 3) {
    if (vars.empty())
      for (int v = 0; v < chart->dim(); ++v) vars.push_back(v);
    Scalar out = Scalar::zero(chart);
    for (int t = 0; t < terms; ++t) {
      Scalar mono = Scalar::constant(chart, rational(true));
      int deg = pick(0, max_degree);
      for (int d = 0; d < deg; ++d)
        mono = mono * Scalar::variable(chart, vars[static_cast<size_t>(
                                                  pick(0, static_cast<int>(vars.size()) - 1))]);
      out = out + mono;
    }
    return out;
  }

  // Polynomial plus an occasional exponential term exp(linear) * poly.
  Scalar scalar(const ChartPtr& chart, bool allow_exp = true) {
    Scalar out = poly(chart);
    if (allow_exp && coin()) {
      Scalar q = Scalar::variable(chart, pick(0, chart->dim() - 1))
                     .scaled(rational(true));
      out = out + Scalar::exponential(q) * poly(chart, {}, 1, 2);
    }
    return out;
  }

  std::vector<int> tuple(const ChartPtr& chart, int degree) {
    std::vector<int> all;
    for (int v = 0; v < chart->dim(); ++v) all.push_back(v);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<size_t>(degree));
    return all;
  }

  Multivector multivector(const ChartPtr& chart, int degree, int terms = 2,
                          bool allow_exp = false) {
    auto out = Multivector::zero(chart, degree);
    for (int t = 0; t < terms; ++t)
      out.add_term(tuple(chart, degree), scalar(chart, allow_exp));
    return out;
  }

  DifferentialForm form(const ChartPtr& chart, int degree, int terms = 2,
                        bool allow_exp = false) {
    auto out = DifferentialForm::zero(chart, degree);
    for (int t = 0; t < terms; ++t)
      out.add_term(tuple(chart, degree), scalar(chart, allow_exp));
    return out;
  }

  std::vector<Rational> point(const ChartPtr& chart) {
    std::vector<Rational> p;
    for (int v = 0; v < chart->dim(); ++v) p.push_back(rational());
    return p;
  }

  // Coordinate sign flip with at least one reversed variable.
  PolyMap sign_involution(const ChartPtr& chart, std::vector<bool>* flips = nullptr) {
    std::vector<bool> flip(static_cast<size_t>(chart->dim()));
    bool any = false;
    for (auto&& f : flip) {
      f = coin();
      any = any || f;
    }
    if (!any) flip[static_cast<size_t>(pick(0, chart->dim() - 1))] = true;
    std::vector<Scalar> fwd;
    for (int v = 0; v < chart->dim(); ++v) {
      Scalar x = Scalar::variable(chart, v);
      fwd.push_back(flip[static_cast<size_t>(v)] ? -x : x);
    }
    if (flips) *flips = flip;
    return PolyMap::make(chart, chart, fwd, fwd);
  }
};

inline Multivector symmetrized(const Multivector& q, const PolyMap& map) {
  return q + pushforward(q, map);
}
inline DifferentialForm symmetrized(const DifferentialForm& k, const PolyMap& map) {
  return k + pullback(k, map);
}

// Contact structure in Darboux coordinates on 2m+1 variables
// (x1..xm, y1..ym, z): theta = dz - sum yi dxi, reeb = d/dz,
// bivector = sum dxi^dyi-part with the yi d/dyi ^ d/dz tail.
struct ContactFixture {
  ChartPtr chart;
  DifferentialForm theta;
  Multivector reeb;
  Multivector lambda;
  JacobiPair pair() const { return JacobiPair::make(lambda, reeb); }
};

inline ContactFixture darboux_contact(int m, const std::string& name) {
  std::vector<Variable> vars;
  for (int i = 1; i <= m; ++i) vars.push_back({"x" + std::to_string(i), false});
  for (int i = 1; i <= m; ++i) vars.push_back({"y" + std::to_string(i), false});
  vars.push_back({"z", false});
  ChartPtr chart = Chart::make(name, vars);
  int z = 2 * m;
  auto theta = DifferentialForm::zero(chart, 1);
  theta.add_term({z}, Scalar::one(chart));
  for (int i = 0; i < m; ++i)
    theta.add_term({i}, -Scalar::variable(chart, m + i));
  auto reeb = Multivector::zero(chart, 1);
  reeb.add_term({z}, Scalar::one(chart));
  auto lambda = Multivector::zero(chart, 2);
  for (int i = 0; i < m; ++i) {
    lambda.add_term({i, m + i}, Scalar::one(chart));
    lambda.add_term({m + i, z}, -Scalar::variable(chart, m + i));
  }
  return {chart, theta, reeb, lambda};
}

// Poisson bivector soldered to N = {x1 = x2 = 0} on (x1, x2, y1, y2):
// f(y1,y2) dy1^dy2 block plus a constant normal block.
struct SolderedPoissonFixture {
  ChartPtr chart;
  Multivector pi;
  NormalizedSubmanifold sub;
};

inline SolderedPoissonFixture soldered_poisson_instance(Gen& g) {
  ChartPtr chart = Chart::make("SP", {{"x1", false}, {"x2", false},
                                      {"y1", false}, {"y2", false}});
  auto pi = Multivector::zero(chart, 2);
  pi.add_term({2, 3}, g.poly(chart, {2, 3}));
  pi.add_term({0, 1}, Scalar::constant(chart, g.rational(true)));
  auto sub = NormalizedSubmanifold::make(chart, {{0, 0}, {1, 0}});
  return {chart, pi, std::move(sub)};
}

// Poisson but not soldered: the tangential coefficient leans on a normal
// variable.
inline SolderedPoissonFixture unsoldered_poisson_instance(Gen& g) {
  ChartPtr chart = Chart::make("SP", {{"x1", false}, {"x2", false},
                                      {"y1", false}, {"y2", false}});
  auto pi = Multivector::zero(chart, 2);
  // the degree-3 spike cannot be cancelled by the low-degree noise
  Scalar y1 = Scalar::variable(chart, 2);
  Scalar f = g.poly(chart, {0, 2, 3}, 2, 2) +
             Scalar::variable(chart, 0) * (Scalar::one(chart) + y1 * y1);
  pi.add_term({2, 3}, f);
  auto sub = NormalizedSubmanifold::make(chart, {{0, 0}, {1, 0}});
  return {chart, pi, std::move(sub)};
}

// Random Jacobi pairs from verified families; flavor cycles the family.
inline JacobiPair random_jacobi_pair(Gen& g, int flavor) {
  switch (flavor % 3) {
    case 0: {
      ContactFixture fx = darboux_contact(1, "J0");
      return conformal_change(fx.pair(), g.poly(fx.chart, {}, 2, 2));
    }
    case 1: {
      auto fx = soldered_poisson_instance(g);
      return JacobiPair::make(fx.pi, Multivector::zero(fx.chart, 1));
    }
    default: {
      ContactFixture fx = darboux_contact(2, "J2");
      return conformal_change(fx.pair(), g.poly(fx.chart, {}, 1, 2));
    }
  }
}

// Perturbed pairs; callers assert they really fail is_jacobi.
inline JacobiPair random_non_jacobi_pair(Gen& g, int flavor) {
  ContactFixture fx = darboux_contact(1, "NJ");
  auto lambda = fx.lambda;
  auto reeb = fx.reeb;
  Scalar x = Scalar::variable(fx.chart, 0);
  Scalar y = Scalar::variable(fx.chart, 1);
  Scalar z = Scalar::variable(fx.chart, 2);
  switch (flavor % 3) {
    case 0:
      lambda.add_term({0, 2}, z);
      break;
    case 1:
      reeb.add_term({0}, x);
      break;
    default:
      lambda.add_term({1, 2}, y * y);
      break;
  }
  (void)g;
  return JacobiPair::make(lambda, reeb);
}

}  // namespace testgen
