#pragma once

// Quotients of a graded ring by relations oriented into rewrite rules.
//
// Rules are ordered by the non-invertible part of the monomial only: a term
// c * u * M (u a Laurent unit) is reducible when M is divisible by a rule's
// lead.  The lex order on non-invertible exponents is a well-order, so
// rewriting terminates whenever every tail sits strictly below its lead.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chromatic/poly.hpp"

namespace chromatic {

enum class RuleOrder {
  forward,  // largest term first, earliest matching rule
  reverse,  // smallest term first, latest matching rule
};

struct NormalFormOptions {
  std::size_t step_budget = 2'000'000;
  RuleOrder order = RuleOrder::forward;
};

template <class Field>
struct RewriteRule {
  Monomial lead;  // non-invertible generators only
  GradedPoly<Field> tail;
};

template <class Field>
class Presentation {
 public:
  using Poly = GradedPoly<Field>;

  Presentation() = default;
  /// `base` names the generators of the subalgebra the quotient is a module
  /// over; `ground` names the graded field used as counting base (a subset
  /// of Laurent generators).
  Presentation(RingPtr ring, std::vector<std::string> base = {}, std::vector<std::string> ground = {});

  const RingPtr& ring() const { return ring_; }
  std::uint32_t prime() const { return ring_->prime(); }
  const std::vector<Poly>& relations() const { return relations_; }
  const std::vector<RewriteRule<Field>>& rules() const { return rules_; }
  const std::vector<std::string>& base() const { return base_; }
  const std::vector<std::string>& ground() const { return ground_; }
  bool is_base(std::size_t g) const;
  bool is_ground(std::size_t g) const;

  /// Orients the relation by its largest non-invertible part, which must
  /// occur in exactly one term (so its cofactor is a unit).
  void add_relation(const Poly& relation);
  /// Adds a relation with an explicitly chosen lead (non-invertible part).
  void add_relation(const Poly& relation, const Monomial& lead);

  Poly normal_form(const Poly& e, const NormalFormOptions& opt = {}) const;
  bool is_normal(const Monomial& m) const;

  /// Normal-form monomials in the non-base generators.  Throws MathError if
  /// some non-base generator has no pure-power rule bounding it.
  std::vector<Monomial> module_basis() const;

  /// Normal-form monomials per internal degree in [lo, hi], counted over the
  /// ground generators.  Throws MathError when some degree would be infinite.
  std::map<int, std::uint64_t> hilbert_counts(int lo, int hi) const;

  Poly generator(std::string_view name, std::int32_t e = 1) const { return Poly::generator(ring_, name, e); }
  Poly parse(std::string_view text) const { return parse_poly<Field>(ring_, text); }

 private:
  const RewriteRule<Field>* match(const Monomial& m, RuleOrder order) const;
  /// Upper bound (exclusive) on the exponent of g in normal forms, if a
  /// pure-power rule exists.
  std::optional<std::int32_t> exponent_bound(std::size_t g) const;

  RingPtr ring_;
  std::vector<Poly> relations_;
  std::vector<RewriteRule<Field>> rules_;
  std::vector<std::string> base_;
  std::vector<std::string> ground_;
  std::vector<bool> base_mask_;
  std::vector<bool> ground_mask_;
};

using QPresentation = Presentation<Rationals>;
using FpPresentation = Presentation<PrimeField>;

/// Divisibility on the non-invertible generators.
bool divides(const Ring& ring, const Monomial& lead, const Monomial& m);

}  // namespace chromatic
