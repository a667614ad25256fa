#include "chromatic/series.hpp"

#include "chromatic/errors.hpp"

namespace chromatic {

template <class Field>
TruncSeries<Field>::TruncSeries(RingPtr ring, int order) : ring_(std::move(ring)), order_(order) {
  if (order < 0) throw PreconditionError("negative truncation order");
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::monomial(RingPtr ring, int order, int e, const Poly& c) {
  TruncSeries s(std::move(ring), order);
  s.add_term(e, c);
  return s;
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::variable(RingPtr ring, int order) {
  auto one = Poly::constant(ring, 1LL);
  return monomial(std::move(ring), order, 1, one);
}

template <class Field>
GradedPoly<Field> TruncSeries<Field>::coefficient(int e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? Poly(ring_) : it->second;
}

template <class Field>
int TruncSeries<Field>::valuation() const {
  return coeffs_.empty() ? order_ + 1 : coeffs_.begin()->first;
}

template <class Field>
void TruncSeries<Field>::add_term(int e, const Poly& c) {
  if (e < 0) throw PreconditionError("negative exponent in power series");
  if (e > order_ || c.is_zero()) return;
  auto [it, fresh] = coeffs_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

template <class Field>
void TruncSeries<Field>::accumulate(const TruncSeries& o) {
  for (const auto& [e, c] : o.coeffs_) add_term(e, c);
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::operator+(const TruncSeries& o) const {
  TruncSeries r = *this;
  r += o;
  return r;
}

template <class Field>
TruncSeries<Field>& TruncSeries<Field>::operator+=(const TruncSeries& o) {
  order_ = std::min(order_, o.order_);
  while (!coeffs_.empty() && coeffs_.rbegin()->first > order_) coeffs_.erase(std::prev(coeffs_.end()));
  for (const auto& [e, c] : o.coeffs_) add_term(e, c);
  return *this;
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::operator-(const TruncSeries& o) const {
  TruncSeries r = *this;
  TruncSeries neg(o.ring_, o.order_);
  for (const auto& [e, c] : o.coeffs_) neg.coeffs_.emplace(e, -c);
  r += neg;
  return r;
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::operator*(const TruncSeries& o) const {
  // f known mod x^{N1+1} and g mod x^{N2+1} determine fg mod x^{min(N1+v(g), N2+v(f))+1}
  const long long exact = std::min<long long>(static_cast<long long>(order_) + o.valuation(),
                                              static_cast<long long>(o.order_) + valuation());
  TruncSeries r(ring_ ? ring_ : o.ring_, static_cast<int>(std::min<long long>(exact, 1 << 28)));
  for (const auto& [a, ca] : coeffs_) {
    if (a > r.order_) break;
    for (const auto& [b, cb] : o.coeffs_) {
      if (a + b > r.order_) break;
      r.add_term(a + b, ca * cb);
    }
  }
  return r;
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::scaled(const Poly& c) const {
  TruncSeries r(ring_, order_);
  for (const auto& [e, k] : coeffs_) r.add_term(e, k * c);
  return r;
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::truncated(int order) const {
  TruncSeries r(ring_, std::min(order, order_));
  for (const auto& [e, c] : coeffs_) {
    if (e > r.order_) break;
    r.coeffs_.emplace(e, c);
  }
  return r;
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::frobenius(std::uint64_t q) const {
  // f mod x^{N+1} determines f^q mod x^{q(N+1)}
  const auto known = (static_cast<std::uint64_t>(order_) + 1) * q - 1;
  TruncSeries r(ring_, static_cast<int>(std::min<std::uint64_t>(known, 1u << 28)));
  for (const auto& [e, c] : coeffs_) {
    const auto ex = static_cast<std::uint64_t>(e) * q;
    r.coeffs_.emplace(static_cast<int>(ex), c.frobenius(q));
  }
  return r;
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::substitute(const Poly& c, int k) const {
  if (k < 1) throw PreconditionError("substitution x -> c x^k needs k >= 1");
  const long long known = (static_cast<long long>(order_) + 1) * k - 1;
  TruncSeries r(ring_, static_cast<int>(std::min<long long>(known, 1 << 28)));
  Poly power = Poly::constant(ring_, 1LL);
  int last = 0;
  for (const auto& [e, coeff] : coeffs_) {
    if (static_cast<long long>(e) * k > r.order_) break;
    power = power * c.pow(static_cast<unsigned>(e - last));
    last = e;
    r.add_term(e * k, coeff * power);
  }
  return r;
}

template <class Field>
TruncSeries<Field> TruncSeries<Field>::compose(const TruncSeries& g) const {
  if (g.coeffs_.count(0)) throw PreconditionError("composition needs an inner series without constant term");
  TruncSeries r(ring_, std::min(order_, g.order_));
  if (auto it = coeffs_.find(0); it != coeffs_.end()) r.add_term(0, it->second);
  if (g.is_zero()) return r;
  PowerTable<Field> pw(g.truncated(r.order_));
  const int v = g.valuation();
  for (const auto& [e, c] : coeffs_) {
    if (e == 0) continue;
    if (static_cast<long long>(e) * v > r.order_) break;
    r += pw[e].scaled(c);
  }
  return r;
}

template <class Field>
bool TruncSeries<Field>::is_homogeneous(int shift) const {
  for (const auto& [e, c] : coeffs_) {
    if (!c.is_homogeneous()) return false;
    if (*c.degree() != shift + 2 * e) return false;
  }
  return true;
}

template <class Field>
std::string TruncSeries<Field>::to_string() const {
  std::string s;
  for (const auto& [e, c] : coeffs_) {
    if (!s.empty()) s += " + ";
    const std::string xe = e == 0 ? "" : (e == 1 ? "x" : "x^" + std::to_string(e));
    if (c.size() == 1 && c.is_constant() && c.to_string() == "1" && e > 0)
      s += xe;
    else
      s += "(" + c.to_string() + ")" + (xe.empty() ? "" : "*" + xe);
  }
  if (s.empty()) s = "0";
  return s + " + O(x^" + std::to_string(order_ + 1) + ")";
}

template <class Field>
std::string TruncSeries<Field>::to_tex() const {
  std::string s;
  for (const auto& [e, c] : coeffs_) {
    if (!s.empty()) s += " + ";
    const std::string xe = e == 0 ? "" : (e == 1 ? "x" : "x^{" + std::to_string(e) + "}");
    s += "\\left(" + c.to_tex() + "\\right)" + xe;
  }
  if (s.empty()) s = "0";
  return s + " + O(x^{" + std::to_string(order_ + 1) + "})";
}

template <class Field>
const TruncSeries<Field>& PowerTable<Field>::operator[](int k) {
  if (k < 1) throw PreconditionError("power table index must be positive");
  while (static_cast<int>(powers_.size()) < k) powers_.push_back(powers_.back() * powers_.front());
  return powers_[k - 1];
}

template class TruncSeries<Rationals>;
template class TruncSeries<PrimeField>;
template class PowerTable<Rationals>;
template class PowerTable<PrimeField>;

}  // namespace chromatic
