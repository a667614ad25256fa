#include "chromatic/presentation.hpp"

#include <algorithm>
#include <numeric>

#include "chromatic/errors.hpp"

namespace chromatic {

namespace {

int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

bool divides(const Ring& ring, const Monomial& lead, const Monomial& m) {
  for (std::size_t g = 0; g < ring.size(); ++g) {
    if (ring.generator(g).invertible()) continue;
    if (m[g] < lead[g]) return false;
  }
  return true;
}

template <class Field>
Presentation<Field>::Presentation(RingPtr ring, std::vector<std::string> base, std::vector<std::string> ground)
    : ring_(std::move(ring)), base_(std::move(base)), ground_(std::move(ground)) {
  base_mask_.assign(ring_->size(), false);
  ground_mask_.assign(ring_->size(), false);
  for (const auto& b : base_) base_mask_[ring_->index_of(b)] = true;
  for (const auto& g : ground_) {
    const auto k = ring_->index_of(g);
    if (!ring_->generator(k).invertible())
      throw PreconditionError("ground generator " + g + " must be invertible");
    ground_mask_[k] = true;
    base_mask_[k] = true;
  }
}

template <class Field>
bool Presentation<Field>::is_base(std::size_t g) const {
  return base_mask_.at(g);
}

template <class Field>
bool Presentation<Field>::is_ground(std::size_t g) const {
  return ground_mask_.at(g);
}

template <class Field>
void Presentation<Field>::add_relation(const Poly& relation) {
  if (relation.is_zero()) throw PreconditionError("zero relation");
  Monomial best = ring_->non_invertible_part(relation.leading().mono);
  for (const auto& t : relation.terms()) best = std::max(best, ring_->non_invertible_part(t.mono));
  add_relation(relation, best);
}

template <class Field>
void Presentation<Field>::add_relation(const Poly& relation, const Monomial& lead) {
  if (!same_ring(relation.ring(), ring_)) throw PreconditionError("relation over a different ring");
  if (!relation.is_homogeneous()) throw MathError("inhomogeneous relation " + relation.to_string());
  for (std::size_t g = 0; g < ring_->size(); ++g) {
    if (lead[g] == 0) continue;
    if (ring_->generator(g).invertible()) throw PreconditionError("rule lead must avoid Laurent generators");
    if (ring_->generator(g).kind == GeneratorKind::exterior)
      throw PreconditionError("rule lead must avoid exterior generators");
  }
  if (lead.is_one()) throw MathError("relation " + relation.to_string() + " makes the ring trivial");
  const typename Poly::Term* hit = nullptr;
  std::vector<typename Poly::Term> rest;
  for (const auto& t : relation.terms()) {
    const Monomial part = ring_->non_invertible_part(t.mono);
    if (part == lead) {
      if (hit) throw MathError("lead " + ring_->format(lead) + " has a non-unit cofactor in " + relation.to_string());
      hit = &t;
      continue;
    }
    if (part > lead)
      throw MathError("term " + ring_->format(t.mono) + " lies above the chosen lead in " + relation.to_string());
    rest.push_back(t);
  }
  if (!hit) throw MathError("lead " + ring_->format(lead) + " does not occur in " + relation.to_string());
  // lead = -(cofactor)^{-1} * rest
  const Poly unit = Poly::monomial(ring_, hit->mono - lead, hit->coeff);
  Poly tail = -(Poly::from_terms(ring_, std::move(rest)) * unit.inverse_unit());
  relations_.push_back(relation);
  rules_.push_back(RewriteRule<Field>{lead, std::move(tail)});
}

template <class Field>
const RewriteRule<Field>* Presentation<Field>::match(const Monomial& m, RuleOrder order) const {
  if (order == RuleOrder::forward) {
    for (const auto& r : rules_)
      if (divides(*ring_, r.lead, m)) return &r;
  } else {
    for (auto it = rules_.rbegin(); it != rules_.rend(); ++it)
      if (divides(*ring_, it->lead, m)) return &*it;
  }
  return nullptr;
}

template <class Field>
bool Presentation<Field>::is_normal(const Monomial& m) const {
  return match(m, RuleOrder::forward) == nullptr;
}

template <class Field>
GradedPoly<Field> Presentation<Field>::normal_form(const Poly& e, const NormalFormOptions& opt) const {
  if (e.is_zero()) return Poly(ring_);
  if (!same_ring(e.ring(), ring_)) throw PreconditionError("normal_form: element over a different ring");
  if (rules_.empty()) return e;
  const auto p = prime();
  using Key = std::pair<Monomial, Monomial>;
  std::map<Key, typename Field::value_type> work;
  auto push = [&](const Monomial& m, const typename Field::value_type& c) {
    auto [it, fresh] = work.try_emplace(Key{ring_->non_invertible_part(m), m}, c);
    if (!fresh) {
      it->second = Field::add(it->second, c, p);
      if (Field::is_zero(it->second)) work.erase(it);
    }
  };
  for (const auto& t : e.terms()) push(t.mono, t.coeff);
  std::vector<typename Poly::Term> done;
  std::size_t steps = 0;
  while (!work.empty()) {
    if (++steps > opt.step_budget)
      throw BudgetExceeded("normal form exceeded " + std::to_string(opt.step_budget) + " steps");
    auto it = opt.order == RuleOrder::forward ? std::prev(work.end()) : work.begin();
    const Monomial m = it->first.second;
    const auto c = it->second;
    work.erase(it);
    const RewriteRule<Field>* rule = match(m, opt.order);
    if (!rule) {
      done.push_back({m, c});
      continue;
    }
    const Monomial cofactor = m - rule->lead;
    Monomial prod;
    for (const auto& t : rule->tail.terms()) {
      const int sign = ring_->multiply(cofactor, t.mono, prod);
      if (sign == 0) continue;
      auto k = Field::mul(c, t.coeff, p);
      if (sign < 0) k = Field::neg(k, p);
      push(prod, k);
    }
  }
  return Poly::from_terms(ring_, std::move(done));
}

template <class Field>
std::optional<std::int32_t> Presentation<Field>::exponent_bound(std::size_t g) const {
  std::optional<std::int32_t> best;
  for (const auto& r : rules_) {
    bool pure = true;
    for (std::size_t k = 0; k < ring_->size(); ++k)
      if (k != g && r.lead[k] != 0) pure = false;
    if (pure && r.lead[g] > 0 && (!best || r.lead[g] < *best)) best = r.lead[g];
  }
  return best;
}

template <class Field>
std::vector<Monomial> Presentation<Field>::module_basis() const {
  std::vector<std::size_t> free_gens;
  std::vector<std::int32_t> bounds;
  for (std::size_t g = 0; g < ring_->size(); ++g) {
    if (is_base(g)) continue;
    const auto& gen = ring_->generator(g);
    std::int32_t bound = 0;
    if (gen.kind == GeneratorKind::exterior) {
      bound = 2;
    } else if (auto b = exponent_bound(g)) {
      bound = *b;
    } else {
      throw MathError("module basis is unbounded in " + gen.name + ": missing relation");
    }
    free_gens.push_back(g);
    bounds.push_back(bound);
  }
  std::vector<Monomial> out;
  Monomial m;
  // odometer over the box, then filter by the remaining rules
  while (true) {
    if (is_normal(m)) out.push_back(m);
    std::size_t k = 0;
    for (; k < free_gens.size(); ++k) {
      if (++m[free_gens[k]] < bounds[k]) break;
      m[free_gens[k]] = 0;
    }
    if (k == free_gens.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class Field>
std::map<int, std::uint64_t> Presentation<Field>::hilbert_counts(int lo, int hi) const {
  if (lo > hi) throw PreconditionError("empty degree window");
  struct Slot {
    std::size_t g;
    int degree;
    std::int32_t bound;  // exclusive; 0 = unbounded
  };
  std::vector<Slot> bounded, unbounded;
  std::optional<std::size_t> laurent;
  for (std::size_t g = 0; g < ring_->size(); ++g) {
    if (is_ground(g)) continue;
    const auto& gen = ring_->generator(g);
    if (gen.kind == GeneratorKind::exterior) {
      bounded.push_back({g, gen.degree, 2});
    } else if (gen.kind == GeneratorKind::polynomial && exponent_bound(g)) {
      bounded.push_back({g, gen.degree, *exponent_bound(g)});
    } else if (gen.kind == GeneratorKind::laurent) {
      if (laurent) throw MathError("two Laurent generators over the counting base: count over a graded field");
      laurent = g;
    } else {
      unbounded.push_back({g, gen.degree, 0});
    }
  }
  for (const auto& s : unbounded)
    if (s.degree == 0) throw MathError("generator " + ring_->generator(s.g).name + " of degree 0: infinite counts");
  if (laurent) {
    if (ring_->generator(*laurent).degree == 0)
      throw MathError("Laurent generator of degree 0: infinite counts");
    if (!unbounded.empty())
      throw MathError("Laurent generator alongside a polynomial generator: count over a graded field");
  }
  const bool pos = std::any_of(unbounded.begin(), unbounded.end(), [](const Slot& s) { return s.degree > 0; });
  const bool neg = std::any_of(unbounded.begin(), unbounded.end(), [](const Slot& s) { return s.degree < 0; });
  if (pos && neg) throw MathError("polynomial generators of opposite-sign degree: infinite counts");

  std::map<int, std::uint64_t> counts;
  for (int d = lo; d <= hi; ++d) counts[d] = 0;

  std::vector<Slot> slots = bounded;
  slots.insert(slots.end(), unbounded.begin(), unbounded.end());
  Monomial m;
  // depth-first over the non-Laurent generators with degree pruning
  auto visit = [&](auto&& self, std::size_t k, int deg) -> void {
    if (k == slots.size()) {
      if (laurent) {
        const int dl = ring_->generator(*laurent).degree;
        // all c with lo <= deg + c*dl <= hi
        int cmin = 0, cmax = 0;
        if (dl > 0) {
          cmin = ceil_div(lo - deg, dl);
          cmax = floor_div(hi - deg, dl);
        } else {
          cmin = ceil_div(deg - hi, -dl);
          cmax = floor_div(deg - lo, -dl);
        }
        for (int c = cmin; c <= cmax; ++c) {
          m[*laurent] = c;
          if (is_normal(m)) ++counts[deg + c * dl];
        }
        m[*laurent] = 0;
      } else if (deg >= lo && deg <= hi && is_normal(m)) {
        ++counts[deg];
      }
      return;
    }
    const Slot& s = slots[k];
    for (std::int32_t e = 0;; ++e) {
      if (s.bound && e >= s.bound) break;
      const int d = deg + e * s.degree;
      // bounded generators come first, so past this point the degree only
      // moves further away from the window
      if (!s.bound && ((s.degree > 0 && d > hi) || (s.degree < 0 && d < lo))) break;
      m[s.g] = e;
      self(self, k + 1, d);
    }
    m[s.g] = 0;
  };
  visit(visit, 0, 0);
  return counts;
}

template class Presentation<Rationals>;
template class Presentation<PrimeField>;

}  // namespace chromatic
