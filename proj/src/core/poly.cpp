#include "chromatic/poly.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "chromatic/errors.hpp"

namespace chromatic {

namespace {

template <class Field>
bool coeff_negative_display(const typename Field::value_type& c, std::uint32_t p) {
  if constexpr (Field::modular) {
    return c > p / 2;
  } else {
    (void)p;
    return sgn(c) < 0;
  }
}

template <class Field>
std::string coeff_abs_string(const typename Field::value_type& c, std::uint32_t p) {
  if constexpr (Field::modular) {
    return std::to_string(c > p / 2 ? p - c : c);
  } else {
    (void)p;
    return mpq_class(abs(c)).get_str();
  }
}

}  // namespace

template <class Field>
GradedPoly<Field> GradedPoly<Field>::constant(RingPtr ring, long long c) {
  const auto p = ring->prime();
  return constant(std::move(ring), Field::from_int(c, p));
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::constant(RingPtr ring, const Coeff& c) {
  GradedPoly r(std::move(ring));
  if (!Field::is_zero(c)) r.terms_.push_back(Term{Monomial{}, c});
  return r;
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::generator(RingPtr ring, std::string_view name, std::int32_t exponent) {
  Monomial m;
  m[ring->index_of(name)] = exponent;
  if (!ring->admissible(m))
    throw PreconditionError("exponent " + std::to_string(exponent) + " not allowed for " + std::string(name));
  const auto p = ring->prime();
  return monomial(std::move(ring), m, Field::from_int(1, p));
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::monomial(RingPtr ring, const Monomial& m, const Coeff& c) {
  GradedPoly r(std::move(ring));
  if (!Field::is_zero(c)) r.terms_.push_back(Term{m, c});
  return r;
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::from_terms(RingPtr ring, std::vector<Term> terms) {
  GradedPoly r(std::move(ring));
  r.assign_sorted(std::move(terms));
  return r;
}

template <class Field>
void GradedPoly<Field>::assign_sorted(std::vector<Term>&& raw) {
  const auto p = prime();
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  terms_.clear();
  terms_.reserve(raw.size());
  for (auto& t : raw) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff = Field::add(terms_.back().coeff, t.coeff, p);
    } else {
      if (!terms_.empty() && Field::is_zero(terms_.back().coeff)) terms_.pop_back();
      terms_.push_back(std::move(t));
    }
  }
  if (!terms_.empty() && Field::is_zero(terms_.back().coeff)) terms_.pop_back();
}

template <class Field>
void GradedPoly<Field>::check_ring(const GradedPoly& o) const {
  if (ring_ == o.ring_) return;
  if (!same_ring(ring_, o.ring_)) throw PreconditionError("polynomials live in different rings");
}

template <class Field>
bool GradedPoly<Field>::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = ring_->degree(terms_.front().mono);
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return ring_->degree(t.mono) == d; });
}

template <class Field>
std::optional<int> GradedPoly<Field>::degree() const {
  if (terms_.empty()) return std::nullopt;
  if (!is_homogeneous()) throw MathError("inhomogeneous element " + to_string());
  return ring_->degree(terms_.front().mono);
}

template <class Field>
bool GradedPoly<Field>::is_unit() const {
  return terms_.size() == 1 && ring_->is_unit(terms_.front().mono);
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::inverse_unit() const {
  if (!is_unit()) throw MathError("not a unit: " + to_string());
  const auto& t = terms_.front();
  return monomial(ring_, t.mono.scaled(-1), Field::inv(t.coeff, prime()));
}

template <class Field>
typename GradedPoly<Field>::Coeff GradedPoly<Field>::coefficient_of(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return Field::from_int(0, prime());
}

template <class Field>
std::int32_t GradedPoly<Field>::max_exponent(std::size_t g) const {
  std::int32_t best = 0;
  bool first = true;
  for (const auto& t : terms_) {
    if (first || t.mono[g] > best) best = t.mono[g];
    first = false;
  }
  return best;
}

template <class Field>
bool GradedPoly<Field>::involves(std::size_t g) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[g] != 0; });
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::operator-() const {
  GradedPoly r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = Field::neg(t.coeff, prime());
  return r;
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::operator+(const GradedPoly& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  check_ring(o);
  const auto p = prime();
  GradedPoly r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mono > b->mono)) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->mono > a->mono) {
      r.terms_.push_back(*b++);
    } else {
      auto c = Field::add(a->coeff, b->coeff, p);
      if (!Field::is_zero(c)) r.terms_.push_back(Term{a->mono, std::move(c)});
      ++a;
      ++b;
    }
  }
  return r;
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::operator-(const GradedPoly& o) const {
  return *this + (-o);
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::operator*(const GradedPoly& o) const {
  if (terms_.empty() || o.terms_.empty()) return GradedPoly(ring_ ? ring_ : o.ring_);
  check_ring(o);
  const auto p = prime();
  if (o.terms_.size() == 1) return times(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.times(terms_[0].mono, terms_[0].coeff);
  std::unordered_map<Monomial, Coeff, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  Monomial m;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      const int sign = ring_->multiply(a.mono, b.mono, m);
      if (sign == 0) continue;
      auto c = Field::mul(a.coeff, b.coeff, p);
      if (sign < 0) c = Field::neg(c, p);
      auto [it, fresh] = acc.try_emplace(m, c);
      if (!fresh) it->second = Field::add(it->second, c, p);
    }
  }
  std::vector<Term> raw;
  raw.reserve(acc.size());
  for (auto& [mono, c] : acc)
    if (!Field::is_zero(c)) raw.push_back(Term{mono, std::move(c)});
  GradedPoly r(ring_);
  std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
  r.terms_ = std::move(raw);
  return r;
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::scaled(const Coeff& c) const {
  if (Field::is_zero(c)) return GradedPoly(ring_);
  GradedPoly r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = Field::mul(t.coeff, c, prime());
  return r;
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::times(const Monomial& m, const Coeff& c) const {
  GradedPoly r(ring_);
  if (Field::is_zero(c)) return r;
  const auto p = prime();
  r.terms_.reserve(terms_.size());
  Monomial prod;
  for (const auto& t : terms_) {
    const int sign = ring_->multiply(t.mono, m, prod);
    if (sign == 0) continue;
    auto k = Field::mul(t.coeff, c, p);
    if (sign < 0) k = Field::neg(k, p);
    r.terms_.push_back(Term{prod, std::move(k)});
  }
  // shifting by a fixed monomial preserves lex order
  return r;
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::pow(unsigned e) const {
  GradedPoly result = constant(ring_, 1LL);
  GradedPoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::frobenius(std::uint64_t q) const {
  if constexpr (!Field::modular) {
    throw PreconditionError("Frobenius requires positive characteristic");
  } else {
    GradedPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{t.mono.scaled(static_cast<std::int32_t>(q)), t.coeff});
    // scaling every exponent by q > 0 preserves lex order.
    for (const auto& t : r.terms_)
      if (!ring_->admissible(t.mono)) throw MathError("Frobenius of an exterior class");
    return r;
  }
}

template <class Field>
GradedPoly<Field> GradedPoly<Field>::derivative(std::size_t g) const {
  const auto p = prime();
  std::vector<Term> raw;
  const bool exterior = ring_->generator(g).kind == GeneratorKind::exterior;
  for (const auto& t : terms_) {
    const auto e = t.mono[g];
    if (e == 0) continue;
    auto c = Field::mul(t.coeff, Field::from_int(e, p), p);
    if (Field::is_zero(c)) continue;
    Monomial m = t.mono;
    m[g] -= 1;
    if (exterior) {
      // left derivative: move g to the front past the earlier exterior factors
      int before = 0;
      for (std::size_t k = 0; k < g; ++k)
        if (ring_->generator(k).kind == GeneratorKind::exterior && t.mono[k]) ++before;
      if (before % 2) c = Field::neg(c, p);
    }
    raw.push_back(Term{m, std::move(c)});
  }
  return from_terms(ring_, std::move(raw));
}

template <class Field>
std::map<std::int32_t, GradedPoly<Field>> GradedPoly<Field>::collect(std::size_t g) const {
  std::map<std::int32_t, std::vector<Term>> parts;
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    const auto e = m[g];
    m[g] = 0;
    parts[e].push_back(Term{m, t.coeff});
  }
  std::map<std::int32_t, GradedPoly> out;
  for (auto& [e, ts] : parts) out.emplace(e, from_terms(ring_, std::move(ts)));
  return out;
}

template <class Field>
std::string GradedPoly<Field>::to_string() const {
  if (terms_.empty()) return "0";
  const auto p = prime();
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = coeff_negative_display<Field>(t.coeff, p);
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    const std::string c = coeff_abs_string<Field>(t.coeff, p);
    if (t.mono.is_one()) {
      s += c;
    } else {
      if (c != "1") s += c + "*";
      s += ring_->format(t.mono);
    }
  }
  return s;
}

template <class Field>
std::string GradedPoly<Field>::to_tex() const {
  if (terms_.empty()) return "0";
  const auto p = prime();
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = coeff_negative_display<Field>(t.coeff, p);
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string c = coeff_abs_string<Field>(t.coeff, p);
    if (auto slash = c.find('/'); slash != std::string::npos)
      c = "\\frac{" + c.substr(0, slash) + "}{" + c.substr(slash + 1) + "}";
    if (t.mono.is_one()) {
      s += c;
    } else {
      if (c != "1") s += c + " ";
      s += ring_->format_tex(t.mono);
    }
  }
  return s;
}

template <class To, class From>
GradedPoly<To> map_poly(const GradedPoly<From>& f, const RingPtr& target,
                        const std::vector<GradedPoly<To>>& images) {
  const auto& src = *f.ring();
  if (images.size() != src.size()) throw PreconditionError("map_poly: one image per generator required");
  const auto p_from = src.prime();
  const auto p_to = target->prime();
  std::map<std::pair<std::size_t, std::int32_t>, GradedPoly<To>> powers;
  auto power_of = [&](std::size_t g, std::int32_t e) -> const GradedPoly<To>& {
    auto key = std::make_pair(g, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    GradedPoly<To> v = e >= 0 ? images[g].pow(static_cast<unsigned>(e))
                              : images[g].inverse_unit().pow(static_cast<unsigned>(-e));
    return powers.emplace(key, std::move(v)).first->second;
  };
  GradedPoly<To> result(target);
  for (const auto& t : f.terms()) {
    auto c = To::from_rational(From::to_rational(t.coeff, p_from), p_to);
    if (To::is_zero(c)) continue;
    GradedPoly<To> term = GradedPoly<To>::constant(target, c);
    for (std::size_t g = 0; g < src.size() && !term.is_zero(); ++g)
      if (t.mono[g] != 0) term = term * power_of(g, t.mono[g]);
    result += term;
  }
  return result;
}

namespace {

struct PolyLexer {
  std::string_view s;
  std::size_t pos = 0;
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("cannot parse polynomial '" + std::string(s) + "': " + what);
  }
  std::string integer() {
    skip();
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && s[start] == '-')) fail("expected integer");
    return std::string(s.substr(start, pos - start));
  }
  std::string identifier() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (pos == start) fail("expected generator name");
    return std::string(s.substr(start, pos - start));
  }
};

}  // namespace

template <class Field>
GradedPoly<Field> parse_poly(const RingPtr& ring, std::string_view text) {
  PolyLexer lx{text};
  const auto p = ring->prime();
  GradedPoly<Field> result(ring);
  if (lx.at_end()) lx.fail("empty input");
  bool first = true;
  while (!lx.at_end()) {
    bool negative = false;
    if (lx.eat('+')) {
    } else if (lx.eat('-')) {
      negative = true;
    } else if (!first) {
      lx.fail("expected + or -");
    }
    first = false;
    mpq_class coeff = 1;
    Monomial m;
    bool more = true;
    while (more) {
      lx.skip();
      if (lx.pos < text.size() && std::isdigit(static_cast<unsigned char>(text[lx.pos]))) {
        std::string num = lx.integer();
        mpq_class c{mpz_class(num)};
        if (lx.eat('/')) c /= mpq_class(mpz_class(lx.integer()));
        coeff *= c;
      } else {
        std::string name = lx.identifier();
        std::int32_t e = 1;
        if (lx.eat('^')) e = std::stoi(lx.integer());
        m[ring->index_of(name)] += e;
      }
      more = lx.eat('*');
    }
    if (negative) coeff = -coeff;
    if (!ring->admissible(m)) lx.fail("inadmissible exponents");
    result += GradedPoly<Field>::monomial(ring, m, Field::from_rational(coeff, p));
  }
  return result;
}

template class GradedPoly<Rationals>;
template class GradedPoly<PrimeField>;
template GradedPoly<Rationals> map_poly(const GradedPoly<Rationals>&, const RingPtr&,
                                        const std::vector<GradedPoly<Rationals>>&);
template GradedPoly<PrimeField> map_poly(const GradedPoly<Rationals>&, const RingPtr&,
                                         const std::vector<GradedPoly<PrimeField>>&);
template GradedPoly<PrimeField> map_poly(const GradedPoly<PrimeField>&, const RingPtr&,
                                         const std::vector<GradedPoly<PrimeField>>&);
template GradedPoly<Rationals> parse_poly(const RingPtr&, std::string_view);
template GradedPoly<PrimeField> parse_poly(const RingPtr&, std::string_view);

}  // namespace chromatic
