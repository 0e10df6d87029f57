#include "solder/scalar.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace solder {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(int index, int exponent) {
  Monomial m;
  if (exponent != 0) m.factors_.push_back({index, exponent});
  return m;
}

Monomial Monomial::from_factors(std::vector<std::pair<int, int>> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (auto& [idx, exp] : factors) {
    if (exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == idx) {
      m.factors_.back().second += exp;
      if (m.factors_.back().second == 0) m.factors_.pop_back();
    } else {
      m.factors_.push_back({idx, exp});
    }
  }
  return m;
}

int Monomial::exponent_of(int index) const {
  for (const auto& [idx, exp] : factors_)
    if (idx == index) return exp;
  return 0;
}

Monomial Monomial::times(const Monomial& other) const {
  auto merged = factors_;
  merged.insert(merged.end(), other.factors_.begin(), other.factors_.end());
  return from_factors(std::move(merged));
}

Monomial Monomial::power(int k) const {
  Monomial m;
  if (k == 0) return m;
  m.factors_ = factors_;
  for (auto& [idx, exp] : m.factors_) exp *= k;
  return m;
}

bool Monomial::has_negative_exponent() const {
  for (const auto& [idx, exp] : factors_)
    if (exp < 0) return true;
  return false;
}

int Monomial::compare(const Monomial& other) const {
  if (factors_ < other.factors_) return -1;
  if (other.factors_ < factors_) return 1;
  return 0;
}

// -------------------------------------------------------------------- Poly

Poly Poly::constant(const Rational& c) {
  Poly p;
  p.add_term(Monomial(), c);
  return p;
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_empty());
}

std::optional<Rational> Poly::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.is_empty())
    return terms_.begin()->second;
  return std::nullopt;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::operator+(const Poly& other) const {
  Poly out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& other) const {
  Poly out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
  return out;
}

Poly Poly::operator*(const Poly& other) const {
  Poly out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_)
      out.add_term(ma.times(mb), ca * cb);
  return out;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const Rational& c) const {
  Poly out;
  if (c == 0) return out;
  for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
  return out;
}

Poly Poly::power(int k) const {
  Poly out = one();
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

Poly Poly::differentiate(int var) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    int exp = m.exponent_of(var);
    if (exp == 0) continue;
    auto factors = m.factors();
    for (auto& [idx, e] : factors)
      if (idx == var) e -= 1;
    out.add_term(Monomial::from_factors(std::move(factors)), c * exp);
  }
  return out;
}

namespace {
Rational rational_power(const Rational& base, int exp) {
  Rational out(1);
  Rational b = base;
  int e = exp;
  if (e < 0) {
    // callers guarantee base != 0 before requesting a negative power
    b = Rational(base.get_den(), base.get_num());
    b.canonicalize();
    e = -e;
  }
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}
}  // namespace

Rational Poly::evaluated(const std::vector<Rational>& point) const {
  Rational out(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [idx, exp] : m.factors())
      term *= rational_power(point.at(static_cast<size_t>(idx)), exp);
    out += term;
  }
  return out;
}

bool Poly::depends_on(int var) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent_of(var) != 0) return true;
  return false;
}

bool Poly::has_negative_exponent() const {
  for (const auto& [m, c] : terms_)
    if (m.has_negative_exponent()) return true;
  return false;
}

void Poly::validate_exponents(const Chart& chart) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [idx, exp] : m.factors())
      if (exp < 0 && !chart.var(idx).laurent)
        throw NegativePower("negative power of non-Laurent variable '" +
                            chart.var(idx).name + "'");
}

int Poly::compare(const Poly& other) const {
  auto a = terms_.begin(), b = other.terms_.begin();
  for (; a != terms_.end() && b != other.terms_.end(); ++a, ++b) {
    int mc = a->first.compare(b->first);
    if (mc != 0) return mc;
    int cc = cmp(a->second, b->second);
    if (cc != 0) return cc;
  }
  if (a != terms_.end()) return 1;
  if (b != other.terms_.end()) return -1;
  return 0;
}

bool Poly::operator==(const Poly& other) const { return compare(other) == 0; }

namespace {
std::string monomial_str(const Monomial& m, const Chart& chart) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, exp] : m.factors()) {
    if (!first) out << "*";
    first = false;
    out << chart.var(idx).name;
    if (exp != 1) out << "^" << exp;
  }
  return out.str();
}
}  // namespace

std::string Poly::str(const Chart& chart) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (m.is_empty()) {
      out << to_string(a);
    } else {
      if (a != 1) out << to_string(a) << "*";
      out << monomial_str(m, chart);
    }
  }
  return out.str();
}

// ------------------------------------------------------------------ Scalar

Scalar Scalar::constant(ChartPtr chart, const Rational& c) {
  return from_poly(std::move(chart), Poly::constant(c));
}

Scalar Scalar::variable(ChartPtr chart, int index) {
  if (index < 0 || index >= chart->dim())
    throw UnknownVariable("variable index " + std::to_string(index) +
                          " out of range on chart '" + chart->name() + "'");
  return from_poly(std::move(chart), Poly::variable(index));
}

Scalar Scalar::variable(ChartPtr chart, const std::string& name) {
  int idx = chart->index_of(name);
  return from_poly(std::move(chart), Poly::variable(idx));
}

Scalar Scalar::from_poly(ChartPtr chart, const Poly& p) {
  p.validate_exponents(*chart);
  TermMap terms;
  if (!p.is_zero()) terms.emplace(Poly(), p);
  return Scalar(std::move(chart), std::move(terms));
}

Scalar Scalar::exponential(const Scalar& q) {
  if (!q.is_polynomial())
    throw NonPolynomialExponent("exp argument must be a polynomial, got " +
                                q.str());
  Poly qp = q.terms_.empty() ? Poly() : q.terms_.begin()->second;
  TermMap terms;
  terms.emplace(qp, Poly::one());
  return Scalar(q.chart_, std::move(terms));
}

bool Scalar::operator==(const Scalar& other) const {
  return *chart_ == *other.chart_ && terms_ == other.terms_;
}

void Scalar::add_part(const Poly& q, const Poly& f) {
  if (f.is_zero()) return;
  auto it = terms_.find(q);
  if (it == terms_.end()) {
    terms_.emplace(q, f);
  } else {
    it->second = it->second + f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar Scalar::operator+(const Scalar& other) const {
  require_same_chart(chart_, other.chart_, "scalar addition");
  Scalar out = *this;
  for (const auto& [q, f] : other.terms_) out.add_part(q, f);
  return out;
}

Scalar Scalar::operator-(const Scalar& other) const {
  require_same_chart(chart_, other.chart_, "scalar subtraction");
  Scalar out = *this;
  for (const auto& [q, f] : other.terms_) out.add_part(q, -f);
  return out;
}

Scalar Scalar::operator*(const Scalar& other) const {
  require_same_chart(chart_, other.chart_, "scalar multiplication");
  Scalar out = zero(chart_);
  for (const auto& [qa, fa] : terms_)
    for (const auto& [qb, fb] : other.terms_)
      out.add_part(qa + qb, fa * fb);
  return out;
}

Scalar Scalar::operator-() const { return scaled(-1); }

Scalar& Scalar::operator+=(const Scalar& other) {
  *this = *this + other;
  return *this;
}

Scalar Scalar::scaled(const Rational& c) const {
  Scalar out = zero(chart_);
  if (c == 0) return out;
  for (const auto& [q, f] : terms_) out.terms_.emplace(q, f.scaled(c));
  return out;
}

Scalar Scalar::pow(int k) const {
  if (k < 0) {
    if (!is_unit())
      throw NegativePower("negative power of a non-unit scalar: " + str());
    return inverse().pow(-k);
  }
  Scalar out = one(chart_);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

Scalar Scalar::differentiate(int var) const {
  if (var < 0 || var >= chart_->dim())
    throw UnknownVariable("variable index " + std::to_string(var) +
                          " out of range on chart '" + chart_->name() + "'");
  Scalar out = zero(chart_);
  for (const auto& [q, f] : terms_) {
    // d(f exp(q)) = (f' + f q') exp(q)
    out.add_part(q, f.differentiate(var) + f * q.differentiate(var));
  }
  return out;
}

Scalar Scalar::differentiate(const std::string& var) const {
  return differentiate(chart_->index_of(var));
}

Scalar Scalar::substitute(const std::map<int, Scalar>& bindings,
                          const ChartPtr& target) const {
  // Variables untouched by the bindings are carried over by name, but only
  // when the scalar actually mentions them: a transport may drop unused
  // directions.
  std::vector<std::optional<Scalar>> bound(
      static_cast<size_t>(chart_->dim()));
  for (int i = 0; i < chart_->dim(); ++i) {
    auto it = bindings.find(i);
    if (it == bindings.end()) continue;
    require_same_chart(it->second.chart(), target,
                       "substitution value for '" + chart_->var(i).name + "'");
    if (!it->second.is_polynomial() && !it->second.is_laurent_monomial())
      throw PreconditionFailed("substitution value for '" +
                               chart_->var(i).name +
                               "' must be a polynomial or Laurent monomial, "
                               "got " +
                               it->second.str());
    bound[static_cast<size_t>(i)] = it->second;
  }
  auto binding_for = [&](int idx) -> const Scalar& {
    auto& slot = bound[static_cast<size_t>(idx)];
    if (!slot) slot = variable(target, chart_->var(idx).name);
    return *slot;
  };

  auto monomial_image = [&](const Monomial& m) {
    Scalar acc = one(target);
    for (const auto& [idx, exp] : m.factors()) {
      const Scalar& b = binding_for(idx);
      if (exp < 0) {
        if (b.is_zero())
          throw LaurentZeroSubstitution(
              "variable '" + chart_->var(idx).name +
              "' occurs with a negative power but is bound to zero");
        if (!b.is_unit())
          throw NegativePower("variable '" + chart_->var(idx).name +
                              "' occurs with a negative power but its "
                              "substitution value is not invertible: " +
                              b.str());
        acc = acc * b.inverse().pow(-exp);
      } else {
        acc = acc * b.pow(exp);
      }
    }
    return acc;
  };
  auto poly_image = [&](const Poly& p) {
    Scalar acc = zero(target);
    for (const auto& [m, c] : p.terms())
      acc += monomial_image(m).scaled(c);
    return acc;
  };

  Scalar out = zero(target);
  for (const auto& [q, f] : terms_) {
    Scalar q_img = poly_image(q);
    if (!q_img.is_polynomial())
      throw NonPolynomialExponent(
          "substitution turned an exp argument into a non-polynomial: " +
          q_img.str());
    out += poly_image(f) * exponential(q_img);
  }
  return out;
}

Scalar Scalar::evaluated(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != chart_->dim())
    throw PreconditionFailed("point has " + std::to_string(point.size()) +
                             " coordinates, chart '" + chart_->name() +
                             "' has " + std::to_string(chart_->dim()));
  for (int i = 0; i < chart_->dim(); ++i)
    if (chart_->var(i).laurent && point[static_cast<size_t>(i)] == 0)
      throw LaurentZeroSubstitution("Laurent variable '" +
                                    chart_->var(i).name +
                                    "' evaluated at zero");
  Scalar out = zero(chart_);
  for (const auto& [q, f] : terms_)
    out.add_part(Poly::constant(q.evaluated(point)),
                 Poly::constant(f.evaluated(point)));
  return out;
}

bool Scalar::is_polynomial() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& [q, f] = *terms_.begin();
  return q.is_zero() && !f.has_negative_exponent();
}

bool Scalar::is_laurent_monomial() const {
  if (terms_.size() != 1) return false;
  const auto& [q, f] = *terms_.begin();
  return q.is_zero() && f.single_term();
}

bool Scalar::is_unit() const {
  if (terms_.size() != 1) return false;
  const auto& [q, f] = *terms_.begin();
  if (!f.single_term()) return false;
  for (const auto& [idx, exp] : f.terms().begin()->first.factors())
    if (!chart_->var(idx).laurent) return false;
  return true;
}

Scalar Scalar::inverse() const {
  if (!is_unit())
    throw NotAUnit("scalar has no inverse in the ring: " + str());
  const auto& [q, f] = *terms_.begin();
  const auto& [m, c] = *f.terms().begin();
  Rational inv_c(c.get_den(), c.get_num());
  inv_c.canonicalize();
  TermMap terms;
  terms.emplace(-q, Poly::monomial(m.power(-1), inv_c));
  return Scalar(chart_, std::move(terms));
}

std::optional<Rational> Scalar::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [q, f] = *terms_.begin();
  if (!q.is_zero()) return std::nullopt;
  return f.as_constant();
}

bool Scalar::depends_on(int var) const {
  for (const auto& [q, f] : terms_)
    if (q.depends_on(var) || f.depends_on(var)) return true;
  return false;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [q, f] : terms_) {
    std::string body;
    bool negative = false;
    if (q.is_zero()) {
      body = f.str(*chart_);
      if (f.single_term() && body.size() && body[0] == '-') {
        negative = true;
        body = body.substr(1);
      }
    } else {
      std::string exps = "exp(" + q.str(*chart_) + ")";
      if (auto c = f.as_constant()) {
        Rational a = *c;
        if (a < 0) {
          negative = true;
          a = -a;
        }
        body = (a == 1) ? exps : to_string(a) + "*" + exps;
      } else if (f.single_term()) {
        std::string fs = f.str(*chart_);
        if (fs.size() && fs[0] == '-') {
          negative = true;
          fs = fs.substr(1);
        }
        body = fs + "*" + exps;
      } else {
        body = "(" + f.str(*chart_) + ")*" + exps;
      }
    }
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    out << body;
  }
  return out.str();
}

}  // namespace solder
