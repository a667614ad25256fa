#pragma once

// Graded generator sets and exponent-vector monomials.
//
// A Ring is the ambient free graded-commutative algebra in which every
// GradedPoly lives: polynomial generators (exponent >= 0), Laurent
// generators (any integer exponent) and exterior generators (exponent 0 or
// 1, anticommuting).  Generator position is also monomial-order priority:
// monomials compare lexicographically with generator 0 most significant.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chromatic {

inline constexpr std::size_t kMaxGenerators = 16;

enum class GeneratorKind { polynomial, laurent, exterior };

struct Generator {
  std::string name;
  /// Total degree. For Hochschild classes dg this is |g| + 1.
  int degree = 0;
  GeneratorKind kind = GeneratorKind::polynomial;
  /// Homological degree carried by the generator (1 for dg classes).
  int homological = 0;

  bool invertible() const { return kind == GeneratorKind::laurent; }
  int internal_degree() const { return degree - homological; }
  bool operator==(const Generator&) const = default;
};

struct Monomial {
  std::array<std::int32_t, kMaxGenerators> exp{};

  std::int32_t operator[](std::size_t i) const { return exp[i]; }
  std::int32_t& operator[](std::size_t i) { return exp[i]; }

  bool is_one() const {
    for (auto e : exp)
      if (e != 0) return false;
    return true;
  }
  /// Exponent-wise sum. Exterior signs are the Ring's business.
  Monomial operator+(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) r.exp[i] = exp[i] + o.exp[i];
    return r;
  }
  Monomial operator-(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) r.exp[i] = exp[i] - o.exp[i];
    return r;
  }
  Monomial scaled(std::int32_t k) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) r.exp[i] = exp[i] * k;
    return r;
  }
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m.exp) {
      h ^= static_cast<std::uint32_t>(e);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class Ring {
 public:
  /// prime == 0 means the rationals.
  Ring(std::uint32_t prime, std::vector<Generator> generators);

  std::uint32_t prime() const { return prime_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws PreconditionError for unknown names.
  std::size_t index_of(std::string_view name) const;

  int degree(const Monomial& m) const;
  int homological_degree(const Monomial& m) const;

  /// Exponent constraints: polynomial >= 0, exterior in {0, 1}.
  bool admissible(const Monomial& m) const;
  /// True if only Laurent generators occur (the monomial is a unit).
  bool is_unit(const Monomial& m) const;
  /// The monomial with all Laurent exponents cleared.
  Monomial non_invertible_part(const Monomial& m) const;

  /// Product of two monomials: returns 0 when an exterior generator repeats,
  /// otherwise the Koszul sign (+1 or -1) and the product in `out`.
  int multiply(const Monomial& a, const Monomial& b, Monomial& out) const;

  std::string format(const Monomial& m) const;
  std::string format_tex(const Monomial& m) const;

  bool operator==(const Ring& o) const { return prime_ == o.prime_ && gens_ == o.gens_; }

 private:
  std::uint32_t prime_;
  std::vector<Generator> gens_;
  bool has_exterior_ = false;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::uint32_t prime, std::vector<Generator> generators);

/// Same object or structurally equal.
bool same_ring(const RingPtr& a, const RingPtr& b);

/// TeX rendering of a generator name: "v1" -> "v_{1}", "dw2" -> "dw_{2}".
std::string tex_name(std::string_view name);

}  // namespace chromatic
