#include "doctest.h"

#include "solder/tensor.hpp"

#include "support.hpp"

using namespace solder;
using testgen::Gen;

namespace {

ChartPtr plain(int n) { return testgen::chart_n("T", n); }

Multivector basis_field(const ChartPtr& chart, int i) {
  return Multivector::coordinate(chart, i);
}

DifferentialForm basis_form(const ChartPtr& chart, int i) {
  return DifferentialForm::coordinate(chart, i);
}

}  // namespace

TEST_CASE("component storage normalizes index tuples") {
  ChartPtr chart = plain(3);
  auto q = Multivector::zero(chart, 2);
  Scalar s = Scalar::variable(chart, 2);
  q.add_term({1, 0}, s);
  CHECK(q.component({0, 1}) == -s);
  CHECK(q.component({1, 0}) == s);
  q.add_term({0, 1}, s);
  CHECK(q.is_zero());
  q.add_term({2, 2}, s);
  CHECK(q.is_zero());
  CHECK(detail::tuple_str(*chart, {0, 1}) == "[x1,x2]");
}

TEST_CASE("wedge is graded commutative and associative") {
  Gen g(201);
  ChartPtr chart = plain(4);
  for (int i = 0; i < 12; ++i) {
    int p = g.pick(0, 2), q = g.pick(0, 2), r = g.pick(0, 1);
    auto a = g.form(chart, p), b = g.form(chart, q), c = g.form(chart, r);
    auto ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == (p * q % 2 ? -ba : ba));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    auto am = g.multivector(chart, p), bm = g.multivector(chart, q);
    auto abm = wedge(am, bm), bam = wedge(bm, am);
    CHECK(abm == (p * q % 2 ? -bam : bam));
  }
}

TEST_CASE("interior product contracts the first slot") {
  ChartPtr chart = plain(2);
  auto dx = basis_form(chart, 0), dy = basis_form(chart, 1);
  auto ex = basis_field(chart, 0), ey = basis_field(chart, 1);
  auto pxy = wedge(ex, ey);
  auto oxy = wedge(dx, dy);
  CHECK(interior(dy, pxy) == -ex);
  CHECK(interior(dx, pxy) == ey);
  CHECK(interior(ex, oxy) == dy);
  CHECK(interior(ey, oxy) == -dx);
  // one-form contractions anticommute
  Gen g(202);
  ChartPtr big = plain(4);
  for (int i = 0; i < 8; ++i) {
    auto a = g.form(big, 1), b = g.form(big, 1);
    auto q = g.multivector(big, 3);
    CHECK(interior(a, interior(b, q)) == -interior(b, interior(a, q)));
  }
  CHECK_THROWS_AS((void)interior(oxy, basis_field(chart, 0)), DegreeMismatch);
}

TEST_CASE("pairings agree with iterated contraction") {
  ChartPtr chart = plain(2);
  auto dx = basis_form(chart, 0), dy = basis_form(chart, 1);
  auto ex = basis_field(chart, 0), ey = basis_field(chart, 1);
  CHECK(pairing(wedge(ex, ey), dx, dy) == Scalar::one(chart));
  CHECK(pairing(wedge(ex, ey), dy, dx) == -Scalar::one(chart));
  CHECK(pairing(wedge(dx, dy), ex, ey) == Scalar::one(chart));
  CHECK(flat(wedge(dx, dy), ex) == dy);
  CHECK(sharp(wedge(ex, ey), dy) == -ex);
}

TEST_CASE("exterior derivative squares to zero and is a graded derivation") {
  Gen g(203);
  ChartPtr chart = plain(4);
  for (int i = 0; i < 10; ++i) {
    int p = g.pick(0, 2);
    auto a = g.form(chart, p, 2, true);
    auto b = g.form(chart, g.pick(0, 2), 2, true);
    CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
    auto left = exterior_derivative(wedge(a, b));
    auto right = wedge(exterior_derivative(a), b) +
                 (p % 2 ? -wedge(a, exterior_derivative(b))
                        : wedge(a, exterior_derivative(b)));
    CHECK(left == right);
  }
  // d of a function is its differential
  Scalar f = g.scalar(chart);
  auto df = exterior_derivative(DifferentialForm::from_scalar(f));
  for (int v = 0; v < 4; ++v)
    CHECK(df.component({v}) == f.differentiate(v));
}

TEST_CASE("schouten bracket of vector fields acts as the commutator") {
  Gen g(204);
  ChartPtr chart = plain(3);
  for (int i = 0; i < 12; ++i) {
    auto x = g.multivector(chart, 1, 2, true);
    auto y = g.multivector(chart, 1, 2, true);
    Scalar f = g.scalar(chart);
    CHECK(derive_along(schouten(x, y), f) ==
          derive_along(x, derive_along(y, f)) -
              derive_along(y, derive_along(x, f)));
  }
  // degree-zero arguments reduce to directional derivatives
  auto x = g.multivector(chart, 1);
  Scalar f = g.poly(chart);
  auto f0 = Multivector::from_scalar(f);
  CHECK(schouten(x, f0) == Multivector::from_scalar(derive_along(x, f)));
  CHECK(schouten(f0, x) == -Multivector::from_scalar(derive_along(x, f)));
}

TEST_CASE("schouten bracket graded identities") {
  Gen g(205);
  ChartPtr chart = plain(3);
  auto sign = [](int e) { return e % 2 ? -1 : 1; };
  for (int i = 0; i < 8; ++i) {
    int p = g.pick(1, 2), q = g.pick(1, 2), r = g.pick(1, 2);
    auto P = g.multivector(chart, p), Q = g.multivector(chart, q),
         R = g.multivector(chart, r);
    auto pq = schouten(P, Q);
    CHECK(pq == schouten(Q, P).scaled(Rational(-sign((p - 1) * (q - 1)))));
    // graded Jacobi
    auto j = schouten(pq, R).scaled(Rational(sign((p - 1) * (r - 1)))) +
             schouten(schouten(Q, R), P).scaled(Rational(sign((q - 1) * (p - 1)))) +
             schouten(schouten(R, P), Q).scaled(Rational(sign((r - 1) * (q - 1))));
    CHECK(j.is_zero());
    // Leibniz in the second slot
    auto QR = wedge(Q, R);
    auto leib = schouten(P, QR);
    auto expect = wedge(pq, R) +
                  wedge(Q, schouten(P, R)).scaled(Rational(sign((p - 1) * q)));
    CHECK(leib == expect);
  }
}

namespace {

// Independent route for the bracket: full contraction against a test form of
// complementary degree, using only d, wedge, and interior.
bool lichnerowicz_agrees(const Multivector& P, const Multivector& Q,
                         const DifferentialForm& w) {
  int p = P.degree(), q = Q.degree();
  // with w of degree p+q-1 every term lands in degree zero; a contraction
  // past the form's degree kills its whole term
  auto zero0 = DifferentialForm::zero(w.chart(), 0);
  auto nested = [&](const Multivector& outer, const Multivector& inner) {
    if (inner.degree() > w.degree()) return zero0;
    auto mid = exterior_derivative(interior(inner, w));
    if (outer.degree() > mid.degree()) return zero0;
    return interior(outer, mid);
  };
  auto lhs = interior(schouten(P, Q), w);
  auto s1 = nested(P, Q);
  auto s2 = nested(Q, P);
  auto s3 = interior(wedge(P, Q), exterior_derivative(w));
  int sign1 = ((p + 1) * (q + 1)) % 2 ? -1 : 1;
  int sign3 = p % 2 ? -1 : 1;
  auto rhs = s1.scaled(Rational(sign1)) - s2 + s3.scaled(Rational(sign3));
  return lhs == rhs;
}

}  // namespace

TEST_CASE("schouten bracket matches the contraction formula") {
  Gen g(206);
  ChartPtr chart = plain(4);
  // fixed low-degree cases first, then randomized degrees
  for (int i = 0; i < 6; ++i) {
    auto P2 = g.multivector(chart, 2);
    auto Q0 = g.multivector(chart, 0);
    CHECK(lichnerowicz_agrees(P2, Q0, g.form(chart, 1)));
    auto X = g.multivector(chart, 1), Y = g.multivector(chart, 1);
    CHECK(lichnerowicz_agrees(X, Y, g.form(chart, 1)));
  }
  for (int i = 0; i < 15; ++i) {
    int p = g.pick(1, 2), q = g.pick(1, 3);
    if (p + q - 1 > 4) continue;
    auto P = g.multivector(chart, p), Q = g.multivector(chart, q);
    CHECK(lichnerowicz_agrees(P, Q, g.form(chart, p + q - 1)));
  }
}

TEST_CASE("lie derivatives") {
  Gen g(207);
  ChartPtr chart = plain(3);
  for (int i = 0; i < 8; ++i) {
    auto x = g.multivector(chart, 1), y = g.multivector(chart, 1);
    auto w = g.form(chart, g.pick(1, 2), 2, true);
    // commutes with d
    CHECK(lie_derivative(x, exterior_derivative(w)) ==
          exterior_derivative(lie_derivative(x, w)));
    // representation property on forms
    auto lhs = lie_derivative(schouten(x, y), w);
    auto rhs = lie_derivative(x, lie_derivative(y, w)) -
               lie_derivative(y, lie_derivative(x, w));
    CHECK(lhs == rhs);
    // multivector version is the adjoint action
    auto q = g.multivector(chart, 2);
    CHECK(lie_derivative(x, q) == schouten(x, q));
    // Leibniz over the pairing in degree (1,1)
    auto a = g.form(chart, 1);
    Scalar paired = interior(y, a).scalar_part();
    Scalar led = derive_along(x, paired);
    Scalar parts = interior(lie_derivative(x, y), a).scalar_part() +
                   interior(y, lie_derivative(x, a)).scalar_part();
    CHECK(led == parts);
  }
  // symmetric tensors: flat metric under a linear stretch
  ChartPtr c2 = plain(2);
  auto gsym = SymmetricTwoTensor::zero(c2);
  gsym.set_component(0, 0, Scalar::one(c2));
  auto stretch = Multivector::zero(c2, 1);
  stretch.add_term({0}, Scalar::variable(c2, 0));
  auto lg = lie_derivative(stretch, gsym);
  CHECK(lg.component(0, 0) == Scalar::constant(c2, 2));
  CHECK(lg.component(1, 1).is_zero());
}

TEST_CASE("cochain sharp intertwines d with the bracket differential") {
  Gen g(208);
  ChartPtr chart = plain(4);
  // canonical symplectic bivector
  auto pi = Multivector::zero(chart, 2);
  pi.add_term({0, 1}, Scalar::one(chart));
  pi.add_term({2, 3}, Scalar::one(chart));
  for (int i = 0; i < 10; ++i) {
    auto k = g.form(chart, g.pick(1, 3));
    CHECK(schouten(pi, sharp_cochain(pi, k)) ==
          sharp_cochain(pi, exterior_derivative(k)));
  }
  // degree-zero cochains too
  Scalar f = g.scalar(chart);
  auto k0 = DifferentialForm::from_scalar(f);
  CHECK(schouten(pi, sharp_cochain(pi, k0)) ==
        sharp_cochain(pi, exterior_derivative(k0)));
}

TEST_CASE("polynomial maps transport tensors functorially") {
  ChartPtr chart = plain(3);
  Gen g(209);
  // swap of the first two coordinates
  std::vector<Scalar> swap_fwd = {Scalar::variable(chart, 1),
                                  Scalar::variable(chart, 0),
                                  Scalar::variable(chart, 2)};
  PolyMap swap = PolyMap::make(chart, chart, swap_fwd, swap_fwd);
  CHECK(swap.is_involution());
  CHECK(pushforward(basis_field(chart, 0), swap) == basis_field(chart, 1));
  CHECK(pullback(basis_form(chart, 0), swap) == basis_form(chart, 1));

  for (int i = 0; i < 8; ++i) {
    PolyMap m = g.sign_involution(chart);
    auto k = g.form(chart, g.pick(1, 2), 2, true);
    CHECK(pullback(exterior_derivative(k), m) ==
          exterior_derivative(pullback(k, m)));
    auto P = g.multivector(chart, g.pick(1, 2));
    auto Q = g.multivector(chart, g.pick(1, 2));
    CHECK(pushforward(schouten(P, Q), m) ==
          schouten(pushforward(P, m), pushforward(Q, m)));
    // involution: transporting twice is the identity
    CHECK(pushforward(pushforward(P, m), m) == P);
  }

  std::vector<Scalar> bad = {Scalar::variable(chart, 0) *
                                 Scalar::variable(chart, 0),
                             Scalar::variable(chart, 1),
                             Scalar::variable(chart, 2)};
  CHECK_THROWS_AS((void)PolyMap::make(chart, chart, bad, bad),
                  PreconditionFailed);
}

TEST_CASE("same-name transport between charts") {
  ChartPtr small = Chart::make("A", {{"x1", false}, {"x2", false}});
  ChartPtr big = plain(3);
  Gen g(210);
  auto q = g.multivector(small, 2);
  auto moved = transported(q, big);
  CHECK(moved.chart() == big);
  CHECK(transported(moved, small) == q);
  auto k = g.form(small, 1);
  CHECK(transported(transported(k, big), small) == k);
}

TEST_CASE("tensor evaluation at points") {
  Gen g(211);
  ChartPtr chart = plain(3);
  auto q = g.multivector(chart, 2, 3, true);
  auto p = g.point(chart);
  auto at = q.evaluated(p);
  for (const auto& [tuple, value] : at.components())
    CHECK(value == q.component(tuple).evaluated(p));
}
