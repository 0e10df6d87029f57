#include "solder/tensor.hpp"

#include <algorithm>
#include <sstream>

namespace solder {

namespace detail {

int sort_with_sign(std::vector<int>& tuple) {
  int sign = 1;
  // insertion sort, counting swaps; tuples are short
  for (size_t i = 1; i < tuple.size(); ++i) {
    int v = tuple[i];
    size_t j = i;
    while (j > 0 && tuple[j - 1] > v) {
      tuple[j] = tuple[j - 1];
      --j;
      sign = -sign;
    }
    tuple[j] = v;
  }
  for (size_t i = 1; i < tuple.size(); ++i)
    if (tuple[i] == tuple[i - 1]) return 0;
  return sign;
}

std::string tuple_str(const Chart& chart, const std::vector<int>& tuple) {
  std::string out = "[";
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ",";
    out += chart.var(tuple[i]).name;
  }
  return out + "]";
}

}  // namespace detail

// ----------------------------------------------------------- Alternating

template <class Tag>
Alternating<Tag> Alternating<Tag>::zero(ChartPtr chart, int degree) {
  // Degrees above the chart dimension are legal: such a tensor is forced to
  // be zero, and brackets and wedges reach them on low-dimensional charts.
  if (degree < 0)
    throw DegreeMismatch("degree " + std::to_string(degree) +
                         " out of range on chart '" + chart->name() + "'");
  return Alternating(std::move(chart), degree);
}

template <class Tag>
Alternating<Tag> Alternating<Tag>::from_scalar(const Scalar& s) {
  Alternating out(s.chart(), 0);
  if (!s.is_zero()) out.components_.emplace(std::vector<int>{}, s);
  return out;
}

template <class Tag>
Alternating<Tag> Alternating<Tag>::coordinate(ChartPtr chart, int index) {
  Alternating out(chart, 1);
  out.set_component({index}, Scalar::one(chart));
  return out;
}

template <class Tag>
Scalar Alternating<Tag>::component(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != degree_)
    throw DegreeMismatch("component tuple of length " +
                         std::to_string(indices.size()) +
                         " on a degree " + std::to_string(degree_) + " tensor");
  std::vector<int> sorted = indices;
  int sign = detail::sort_with_sign(sorted);
  if (sign == 0) return Scalar::zero(chart_);
  auto it = components_.find(sorted);
  if (it == components_.end()) return Scalar::zero(chart_);
  return sign == 1 ? it->second : -it->second;
}

template <class Tag>
void Alternating<Tag>::set_component(const std::vector<int>& sorted_indices,
                                     const Scalar& value) {
  if (static_cast<int>(sorted_indices.size()) != degree_)
    throw DegreeMismatch("component tuple of length " +
                         std::to_string(sorted_indices.size()) +
                         " on a degree " + std::to_string(degree_) + " tensor");
  for (size_t i = 0; i < sorted_indices.size(); ++i) {
    int idx = sorted_indices[i];
    if (idx < 0 || idx >= chart_->dim())
      throw UnknownVariable("index " + std::to_string(idx) +
                            " out of range on chart '" + chart_->name() + "'");
    if (i > 0 && sorted_indices[i - 1] >= idx)
      throw PreconditionFailed("component tuple must be strictly increasing");
  }
  require_same_chart(chart_, value.chart(), "tensor component");
  if (value.is_zero())
    components_.erase(sorted_indices);
  else
    components_.insert_or_assign(sorted_indices, value);
}

template <class Tag>
void Alternating<Tag>::add_term(std::vector<int> indices, const Scalar& value) {
  if (static_cast<int>(indices.size()) != degree_)
    throw DegreeMismatch("term tuple of length " + std::to_string(indices.size()) +
                         " on a degree " + std::to_string(degree_) + " tensor");
  if (value.is_zero()) return;
  require_same_chart(chart_, value.chart(), "tensor term");
  int sign = detail::sort_with_sign(indices);
  if (sign == 0) return;
  auto it = components_.find(indices);
  Scalar add = sign == 1 ? value : -value;
  if (it == components_.end()) {
    components_.emplace(std::move(indices), add);
  } else {
    it->second = it->second + add;
    if (it->second.is_zero()) components_.erase(it);
  }
}

template <class Tag>
Alternating<Tag> Alternating<Tag>::operator+(const Alternating& other) const {
  require_same_chart(chart_, other.chart_, "tensor addition");
  if (degree_ != other.degree_)
    throw DegreeMismatch("adding degree " + std::to_string(degree_) +
                         " to degree " + std::to_string(other.degree_));
  Alternating out = *this;
  for (const auto& [idx, val] : other.components_) {
    auto it = out.components_.find(idx);
    if (it == out.components_.end()) {
      out.components_.emplace(idx, val);
    } else {
      it->second = it->second + val;
      if (it->second.is_zero()) out.components_.erase(it);
    }
  }
  return out;
}

template <class Tag>
Alternating<Tag> Alternating<Tag>::operator-(const Alternating& other) const {
  return *this + (-other);
}

template <class Tag>
Alternating<Tag> Alternating<Tag>::operator-() const {
  Alternating out = *this;
  for (auto& [idx, val] : out.components_) val = -val;
  return out;
}

template <class Tag>
Alternating<Tag> Alternating<Tag>::scaled(const Scalar& s) const {
  require_same_chart(chart_, s.chart(), "tensor scaling");
  Alternating out = zero(chart_, degree_);
  for (const auto& [idx, val] : components_) {
    Scalar v = val * s;
    if (!v.is_zero()) out.components_.emplace(idx, std::move(v));
  }
  return out;
}

template <class Tag>
Alternating<Tag> Alternating<Tag>::scaled(const Rational& c) const {
  return scaled(Scalar::constant(chart_, c));
}

template <class Tag>
bool Alternating<Tag>::operator==(const Alternating& other) const {
  return *chart_ == *other.chart_ && degree_ == other.degree_ &&
         components_ == other.components_;
}

template <class Tag>
std::optional<std::pair<std::vector<int>, Scalar>>
Alternating<Tag>::first_nonzero() const {
  if (components_.empty()) return std::nullopt;
  return *components_.begin();
}

template <class Tag>
Alternating<Tag> Alternating<Tag>::evaluated(
    const std::vector<Rational>& point) const {
  Alternating out = zero(chart_, degree_);
  for (const auto& [idx, val] : components_) {
    Scalar v = val.evaluated(point);
    if (!v.is_zero()) out.components_.emplace(idx, std::move(v));
  }
  return out;
}

template <class Tag>
Scalar Alternating<Tag>::scalar_part() const {
  if (degree_ != 0 || components_.empty()) return Scalar::zero(chart_);
  return components_.begin()->second;
}

template <class Tag>
std::string Alternating<Tag>::str() const {
  if (components_.empty()) return "0";
  if (degree_ == 0) return components_.begin()->second.str();
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, val] : components_) {
    if (!first) out << "; ";
    first = false;
    out << detail::tuple_str(*chart_, idx) << " = " << val.str();
  }
  return out.str();
}

template class Alternating<MultivectorTag>;
template class Alternating<FormTag>;

// ------------------------------------------------------------- operations

namespace {

template <class Tag>
Alternating<Tag> wedge_impl(const Alternating<Tag>& a, const Alternating<Tag>& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  auto out = Alternating<Tag>::zero(a.chart(), a.degree() + b.degree());
  for (const auto& [ia, va] : a.components())
    for (const auto& [ib, vb] : b.components()) {
      std::vector<int> merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      out.add_term(std::move(merged), va * vb);
    }
  return out;
}

// Contraction of `left` (degree p) into the first p slots of `right`:
// result_J = sum_I left_I right_{I,J}. Shared by both interior products.
template <class OutTag, class LeftTag, class RightTag>
Alternating<OutTag> contract_leading(const Alternating<LeftTag>& left,
                                     const Alternating<RightTag>& right) {
  require_same_chart(left.chart(), right.chart(), "interior product");
  if (left.degree() > right.degree())
    throw DegreeMismatch("cannot contract degree " +
                         std::to_string(left.degree()) + " into degree " +
                         std::to_string(right.degree()));
  auto out = Alternating<OutTag>::zero(left.chart(),
                                       right.degree() - left.degree());
  for (const auto& [I, a] : left.components()) {
    for (const auto& [K, b] : right.components()) {
      // J = K \ I, valid only when I is a subset of K
      std::vector<int> J;
      J.reserve(K.size() - I.size());
      size_t ii = 0;
      bool subset = true;
      for (int k : K) {
        if (ii < I.size() && I[ii] == k) {
          ++ii;
        } else {
          J.push_back(k);
        }
      }
      subset = (ii == I.size());
      if (!subset) continue;
      // sign of the permutation taking I++J to sorted K
      std::vector<int> perm = I;
      perm.insert(perm.end(), J.begin(), J.end());
      int sign = detail::sort_with_sign(perm);
      Scalar term = sign == 1 ? a * b : -(a * b);
      out.add_term(std::move(J), term);
    }
  }
  return out;
}

}  // namespace

Multivector wedge(const Multivector& a, const Multivector& b) {
  return wedge_impl(a, b);
}
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  return wedge_impl(a, b);
}

DifferentialForm exterior_derivative(const DifferentialForm& k) {
  auto out = DifferentialForm::zero(k.chart(), k.degree() + 1);
  if (k.degree() + 1 > k.chart()->dim()) return out;
  for (const auto& [I, a] : k.components()) {
    for (int v = 0; v < k.chart()->dim(); ++v) {
      Scalar da = a.differentiate(v);
      if (da.is_zero()) continue;
      std::vector<int> idx;
      idx.reserve(I.size() + 1);
      idx.push_back(v);
      idx.insert(idx.end(), I.begin(), I.end());
      out.add_term(std::move(idx), da);
    }
  }
  return out;
}

DifferentialForm interior(const Multivector& p, const DifferentialForm& k) {
  return contract_leading<FormTag>(p, k);
}

Multivector interior(const DifferentialForm& a, const Multivector& q) {
  return contract_leading<MultivectorTag>(a, q);
}

namespace {

// One side of the Schouten bracket in the odd-coordinate model: contract the
// rightmost matching slot of `p` against each variable and pair with the
// derivative of `q`, i.e. sum_l p(d</d xi_l) ^ d q/d z_l.
void schouten_half(const Multivector& p, const Multivector& q, int sign,
                   Multivector& out) {
  for (const auto& [I, a] : p.components()) {
    for (size_t j = 0; j < I.size(); ++j) {
      int l = I[j];
      // right derivative: removing slot j from the tail costs |I|-1-j swaps
      int rsign = ((I.size() - 1 - j) % 2 == 0) ? 1 : -1;
      std::vector<int> reduced;
      reduced.reserve(I.size() - 1);
      for (size_t t = 0; t < I.size(); ++t)
        if (t != j) reduced.push_back(I[t]);
      for (const auto& [J, b] : q.components()) {
        Scalar db = b.differentiate(l);
        if (db.is_zero()) continue;
        std::vector<int> merged = reduced;
        merged.insert(merged.end(), J.begin(), J.end());
        out.add_term(std::move(merged), (a * db).scaled(sign * rsign));
      }
    }
  }
}

}  // namespace

Multivector schouten(const Multivector& p, const Multivector& q) {
  require_same_chart(p.chart(), q.chart(), "Schouten bracket");
  int pd = p.degree(), qd = q.degree();
  if (pd == 0 && qd == 0) return Multivector::zero(p.chart(), 0);
  auto out = Multivector::zero(p.chart(), pd + qd - 1);
  schouten_half(p, q, 1, out);
  int swap_sign = ((pd - 1) * (qd - 1)) % 2 == 0 ? -1 : 1;
  schouten_half(q, p, swap_sign, out);
  return out;
}

Multivector lie_derivative(const Multivector& x, const Multivector& q) {
  if (x.degree() != 1)
    throw DegreeMismatch("Lie derivative needs a vector field, got degree " +
                         std::to_string(x.degree()));
  return schouten(x, q);
}

DifferentialForm lie_derivative(const Multivector& x, const DifferentialForm& k) {
  if (x.degree() != 1)
    throw DegreeMismatch("Lie derivative needs a vector field, got degree " +
                         std::to_string(x.degree()));
  return interior(x, exterior_derivative(k)) +
         exterior_derivative(interior(x, k));
}

Multivector sharp(const Multivector& p, const DifferentialForm& a) {
  return interior(a, p);
}

DifferentialForm flat(const DifferentialForm& omega, const Multivector& x) {
  return interior(x, omega);
}

Multivector sharp_cochain(const Multivector& pi, const DifferentialForm& k) {
  require_same_chart(pi.chart(), k.chart(), "sharp");
  if (pi.degree() != 2)
    throw DegreeMismatch("cochain sharp needs a bivector, got degree " +
                         std::to_string(pi.degree()));
  const ChartPtr& chart = k.chart();
  std::vector<Multivector> raised;
  raised.reserve(static_cast<size_t>(chart->dim()));
  for (int j = 0; j < chart->dim(); ++j)
    raised.push_back(sharp(pi, DifferentialForm::coordinate(chart, j)));
  auto out = Multivector::zero(chart, k.degree());
  int sign = k.degree() % 2 == 0 ? 1 : -1;
  for (const auto& [J, c] : k.components()) {
    auto term = Multivector::from_scalar(c.scaled(sign));
    for (int j : J) term = wedge(term, raised[static_cast<size_t>(j)]);
    out = out + term;
  }
  return out;
}

Scalar pairing(const Multivector& p, const DifferentialForm& a,
               const DifferentialForm& b) {
  return interior(b, interior(a, p)).scalar_part();
}

Scalar pairing(const DifferentialForm& omega, const Multivector& x,
               const Multivector& y) {
  return interior(y, interior(x, omega)).scalar_part();
}

Scalar derive_along(const Multivector& x, const Scalar& f) {
  if (x.degree() != 1)
    throw DegreeMismatch("directional derivative needs a vector field");
  require_same_chart(x.chart(), f.chart(), "directional derivative");
  Scalar out = Scalar::zero(f.chart());
  for (const auto& [idx, coeff] : x.components())
    out += coeff * f.differentiate(idx[0]);
  return out;
}

// ---------------------------------------------------- SymmetricTwoTensor

SymmetricTwoTensor SymmetricTwoTensor::zero(ChartPtr chart) {
  return SymmetricTwoTensor(std::move(chart));
}

Scalar SymmetricTwoTensor::component(int i, int j) const {
  auto key = std::minmax(i, j);
  auto it = components_.find({key.first, key.second});
  return it == components_.end() ? Scalar::zero(chart_) : it->second;
}

void SymmetricTwoTensor::set_component(int i, int j, const Scalar& value) {
  if (i < 0 || j < 0 || i >= chart_->dim() || j >= chart_->dim())
    throw UnknownVariable("index out of range on chart '" + chart_->name() + "'");
  require_same_chart(chart_, value.chart(), "tensor component");
  auto key = std::minmax(i, j);
  if (value.is_zero())
    components_.erase({key.first, key.second});
  else
    components_.insert_or_assign({key.first, key.second}, value);
}

SymmetricTwoTensor SymmetricTwoTensor::operator+(
    const SymmetricTwoTensor& other) const {
  require_same_chart(chart_, other.chart_, "tensor addition");
  SymmetricTwoTensor out = *this;
  for (const auto& [key, val] : other.components_) {
    auto it = out.components_.find(key);
    if (it == out.components_.end()) {
      out.components_.emplace(key, val);
    } else {
      it->second = it->second + val;
      if (it->second.is_zero()) out.components_.erase(it);
    }
  }
  return out;
}

SymmetricTwoTensor SymmetricTwoTensor::operator-(
    const SymmetricTwoTensor& other) const {
  return *this + other.scaled(Scalar::constant(other.chart_, -1));
}

SymmetricTwoTensor SymmetricTwoTensor::scaled(const Scalar& s) const {
  SymmetricTwoTensor out(chart_);
  for (const auto& [key, val] : components_) {
    Scalar v = val * s;
    if (!v.is_zero()) out.components_.emplace(key, std::move(v));
  }
  return out;
}

bool SymmetricTwoTensor::operator==(const SymmetricTwoTensor& other) const {
  return *chart_ == *other.chart_ && components_ == other.components_;
}

SymmetricTwoTensor SymmetricTwoTensor::evaluated(
    const std::vector<Rational>& point) const {
  SymmetricTwoTensor out(chart_);
  for (const auto& [key, val] : components_) {
    Scalar v = val.evaluated(point);
    if (!v.is_zero()) out.components_.emplace(key, std::move(v));
  }
  return out;
}

std::string SymmetricTwoTensor::str() const {
  if (components_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, val] : components_) {
    if (!first) out << "; ";
    first = false;
    out << "[" << chart_->var(key.first).name << ","
        << chart_->var(key.second).name << "] = " << val.str();
  }
  return out.str();
}

SymmetricTwoTensor lie_derivative(const Multivector& x,
                                  const SymmetricTwoTensor& g) {
  if (x.degree() != 1)
    throw DegreeMismatch("Lie derivative needs a vector field, got degree " +
                         std::to_string(x.degree()));
  require_same_chart(x.chart(), g.chart(), "Lie derivative");
  const ChartPtr& chart = g.chart();
  int n = chart->dim();
  auto out = SymmetricTwoTensor::zero(chart);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Scalar acc = Scalar::zero(chart);
      for (int l = 0; l < n; ++l) {
        Scalar xl = x.component({l});
        if (!xl.is_zero()) acc += xl * g.component(i, j).differentiate(l);
        acc += g.component(l, j) * x.component({l}).differentiate(i);
        acc += g.component(i, l) * x.component({l}).differentiate(j);
      }
      out.set_component(i, j, acc);
    }
  }
  return out;
}

// ----------------------------------------------------------------- PolyMap

PolyMap PolyMap::make(ChartPtr source, ChartPtr target,
                      std::vector<Scalar> forward, std::vector<Scalar> backward) {
  if (static_cast<int>(forward.size()) != target->dim())
    throw PreconditionFailed("forward map needs one component per target variable");
  if (static_cast<int>(backward.size()) != source->dim())
    throw PreconditionFailed("backward map needs one component per source variable");
  for (const auto& s : forward) {
    require_same_chart(s.chart(), source, "forward map component");
    if (!s.is_polynomial() && !s.is_laurent_monomial())
      throw PreconditionFailed("map component must be a polynomial or Laurent "
                               "monomial: " + s.str());
  }
  for (const auto& s : backward) {
    require_same_chart(s.chart(), target, "backward map component");
    if (!s.is_polynomial() && !s.is_laurent_monomial())
      throw PreconditionFailed("map component must be a polynomial or Laurent "
                               "monomial: " + s.str());
  }
  PolyMap map(std::move(source), std::move(target), std::move(forward),
              std::move(backward));
  // both composites must be the identity
  std::map<int, Scalar> fwd, bwd;
  for (int k = 0; k < map.target_->dim(); ++k) fwd.emplace(k, map.forward_[k]);
  for (int i = 0; i < map.source_->dim(); ++i) bwd.emplace(i, map.backward_[i]);
  for (int i = 0; i < map.source_->dim(); ++i) {
    Scalar round = map.backward_[i].substitute(fwd, map.source_);
    if (round != Scalar::variable(map.source_, i))
      throw PreconditionFailed("map inverse fails on source variable '" +
                               map.source_->var(i).name + "': " + round.str());
  }
  for (int k = 0; k < map.target_->dim(); ++k) {
    Scalar round = map.forward_[k].substitute(bwd, map.target_);
    if (round != Scalar::variable(map.target_, k))
      throw PreconditionFailed("map inverse fails on target variable '" +
                               map.target_->var(k).name + "': " + round.str());
  }
  return map;
}

const Scalar& PolyMap::forward_component(int target_var) const {
  return forward_.at(static_cast<size_t>(target_var));
}

const Scalar& PolyMap::backward_component(int source_var) const {
  return backward_.at(static_cast<size_t>(source_var));
}

Scalar PolyMap::push_scalar(const Scalar& on_source) const {
  require_same_chart(on_source.chart(), source_, "pushforward");
  std::map<int, Scalar> bindings;
  for (int i = 0; i < source_->dim(); ++i) bindings.emplace(i, backward_[i]);
  return on_source.substitute(bindings, target_);
}

Scalar PolyMap::pull_scalar(const Scalar& on_target) const {
  require_same_chart(on_target.chart(), target_, "pullback");
  std::map<int, Scalar> bindings;
  for (int k = 0; k < target_->dim(); ++k) bindings.emplace(k, forward_[k]);
  return on_target.substitute(bindings, source_);
}

bool PolyMap::is_involution() const {
  if (!(*source_ == *target_)) return false;
  std::map<int, Scalar> fwd;
  for (int k = 0; k < target_->dim(); ++k) fwd.emplace(k, forward_[k]);
  for (int k = 0; k < target_->dim(); ++k) {
    Scalar twice = forward_[k].substitute(fwd, source_);
    if (twice != Scalar::variable(source_, k)) return false;
  }
  return true;
}

std::string PolyMap::str() const {
  std::ostringstream out;
  for (int k = 0; k < target_->dim(); ++k) {
    if (k) out << ", ";
    out << target_->var(k).name << " -> " << forward_[k].str();
  }
  return out.str();
}

Multivector pushforward(const Multivector& q, const PolyMap& map) {
  require_same_chart(q.chart(), map.source(), "pushforward");
  const ChartPtr& src = map.source();
  const ChartPtr& dst = map.target();
  if (q.degree() == 0)
    return Multivector::from_scalar(map.push_scalar(q.scalar_part()));
  // image of each coordinate field, expressed on the target chart
  std::vector<Multivector> basis;
  basis.reserve(static_cast<size_t>(src->dim()));
  for (int i = 0; i < src->dim(); ++i) {
    auto v = Multivector::zero(dst, 1);
    for (int k = 0; k < dst->dim(); ++k) {
      Scalar jac = map.forward_component(k).differentiate(i);
      if (jac.is_zero()) continue;
      v.add_term({k}, map.push_scalar(jac));
    }
    basis.push_back(std::move(v));
  }
  auto out = Multivector::zero(dst, q.degree());
  for (const auto& [I, a] : q.components()) {
    auto term = Multivector::from_scalar(map.push_scalar(a));
    for (int i : I) term = wedge(term, basis[static_cast<size_t>(i)]);
    out = out + term;
  }
  return out;
}

namespace {
template <class Tag>
Alternating<Tag> transported_impl(const Alternating<Tag>& t,
                                  const ChartPtr& target) {
  auto out = Alternating<Tag>::zero(target, t.degree());
  for (const auto& [I, a] : t.components()) {
    std::vector<int> idx;
    idx.reserve(I.size());
    for (int i : I) idx.push_back(target->index_of(t.chart()->var(i).name));
    out.add_term(std::move(idx), a.on_chart(target));
  }
  return out;
}
}  // namespace

Multivector transported(const Multivector& q, const ChartPtr& target) {
  return transported_impl(q, target);
}

DifferentialForm transported(const DifferentialForm& k, const ChartPtr& target) {
  return transported_impl(k, target);
}

DifferentialForm pullback(const DifferentialForm& k, const PolyMap& map) {
  require_same_chart(k.chart(), map.target(), "pullback");
  const ChartPtr& src = map.source();
  if (k.degree() == 0)
    return DifferentialForm::from_scalar(map.pull_scalar(k.scalar_part()));
  std::vector<DifferentialForm> basis;
  basis.reserve(static_cast<size_t>(map.target()->dim()));
  for (int j = 0; j < map.target()->dim(); ++j)
    basis.push_back(exterior_derivative(
        DifferentialForm::from_scalar(map.forward_component(j))));
  auto out = DifferentialForm::zero(src, k.degree());
  for (const auto& [J, a] : k.components()) {
    auto term = DifferentialForm::from_scalar(map.pull_scalar(a));
    for (int j : J) term = wedge(term, basis[static_cast<size_t>(j)]);
    out = out + term;
  }
  return out;
}

}  // namespace solder
