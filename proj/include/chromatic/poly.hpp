#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chromatic/coefficient.hpp"
#include "chromatic/ring.hpp"

namespace chromatic {

/// Exact sparse element of a graded (Laurent / exterior) polynomial ring.
///
/// Terms are kept sorted in decreasing monomial order with no zero
/// coefficients, so equality is structural.
template <class Field>
class GradedPoly {
 public:
  using Coeff = typename Field::value_type;
  struct Term {
    Monomial mono;
    Coeff coeff;
    bool operator==(const Term&) const = default;
  };

  GradedPoly() = default;
  explicit GradedPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static GradedPoly constant(RingPtr ring, long long c);
  static GradedPoly constant(RingPtr ring, const Coeff& c);
  static GradedPoly generator(RingPtr ring, std::string_view name, std::int32_t exponent = 1);
  static GradedPoly monomial(RingPtr ring, const Monomial& m, const Coeff& c);
  /// Builds from arbitrary (unsorted, possibly repeated) terms.
  static GradedPoly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  std::uint32_t prime() const { return ring_ ? ring_->prime() : 0; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term& leading() const { return terms_.front(); }

  bool is_homogeneous() const;
  /// Degree of a nonzero homogeneous element; nullopt for zero.
  std::optional<int> degree() const;

  /// Single term built from Laurent generators only.
  bool is_unit() const;
  GradedPoly inverse_unit() const;

  Coeff coefficient_of(const Monomial& m) const;
  /// Exponent of generator `g` maximized over the terms (0 for zero).
  std::int32_t max_exponent(std::size_t g) const;
  bool involves(std::size_t g) const;

  GradedPoly operator-() const;
  GradedPoly operator+(const GradedPoly& o) const;
  GradedPoly operator-(const GradedPoly& o) const;
  GradedPoly operator*(const GradedPoly& o) const;
  GradedPoly& operator+=(const GradedPoly& o) { return *this = *this + o; }
  GradedPoly& operator-=(const GradedPoly& o) { return *this = *this - o; }
  GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

  GradedPoly scaled(const Coeff& c) const;
  GradedPoly times(const Monomial& m, const Coeff& c) const;
  GradedPoly pow(unsigned e) const;
  /// x -> x^q on every monomial. Only meaningful in characteristic p with
  /// q a power of p, where it is the q-th power map.
  GradedPoly frobenius(std::uint64_t q) const;
  /// Formal partial derivative (exterior generators: left derivative).
  GradedPoly derivative(std::size_t g) const;
  /// Splits by exponent of generator g: returns exponent -> cofactor.
  std::map<std::int32_t, GradedPoly> collect(std::size_t g) const;

  bool operator==(const GradedPoly& o) const { return terms_ == o.terms_; }

  std::string to_string() const;
  std::string to_tex() const;

 private:
  void assign_sorted(std::vector<Term>&& raw);
  void check_ring(const GradedPoly& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

using QPoly = GradedPoly<Rationals>;
using FpPoly = GradedPoly<PrimeField>;

/// Ring homomorphism: generator i of the source maps to images[i] in the
/// target ring; coefficients are converted Q -> Q, Q -> F_p (p-local only)
/// or F_p -> F_p.  Negative exponents require unit images.
template <class To, class From>
GradedPoly<To> map_poly(const GradedPoly<From>& f, const RingPtr& target,
                        const std::vector<GradedPoly<To>>& images);

/// Parses "3*v1^2*t1 - v1^-1*w2 + 1/3" over the given ring.
template <class Field>
GradedPoly<Field> parse_poly(const RingPtr& ring, std::string_view text);

}  // namespace chromatic
