#pragma once

// p-typical formal group laws with polynomial coefficients.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chromatic/serialize.hpp"
#include "chromatic/series.hpp"

namespace chromatic {

enum class LogScheme { hazewinkel, araki };

std::string scheme_name(LogScheme s);
LogScheme parse_scheme(const std::string& s);

/// Degree 2(p^k - 1) of v_k and t_k.
int chromatic_degree(std::uint32_t p, int k);

/// log(x) = sum_k m_k x^{p^k} over Q[v_1..v_K].
struct LogSeries {
  std::uint32_t p = 3;
  int K = 0;
  LogScheme scheme = LogScheme::hazewinkel;
  RingPtr ring;
  std::vector<QPoly> m;  // m[0] = 1

  QSeries series(int order) const;
};

/// The ring Q[v_1..v_K] (or F_p[...]) with the chromatic grading.
RingPtr bp_ring(std::uint32_t prime_of_ring, std::uint32_t p, int K);

LogSeries bp_log(std::uint32_t p, int K, LogScheme scheme = LogScheme::hazewinkel);

/// Compositional inverse of a strict series.
QSeries series_reversion(const QSeries& f);

template <class Field>
class FGLaw {
 public:
  using Poly = GradedPoly<Field>;
  using Series = TruncSeries<Field>;
  using Key = std::pair<int, int>;

  FGLaw() = default;
  FGLaw(RingPtr ring, int order, std::map<Key, Poly> coeffs, std::string provenance, bool p_typical);

  const RingPtr& ring() const { return ring_; }
  int order() const { return order_; }
  const std::map<Key, Poly>& coefficients() const { return coeffs_; }
  /// a_{j,k} for j,k >= 1 (zero when absent).
  Poly coefficient(int j, int k) const;
  const std::string& provenance() const { return provenance_; }
  bool p_typical() const { return p_typical_; }

  /// F(a, b), truncated at the smaller order of a and b.  Throws when the
  /// law itself is truncated too low to determine that many terms.
  Series sum(const Series& a, const Series& b) const;

  bool operator==(const FGLaw& o) const { return order_ == o.order_ && coeffs_ == o.coeffs_; }

 private:
  RingPtr ring_;
  int order_ = 0;
  std::map<Key, Poly> coeffs_;
  std::string provenance_;
  bool p_typical_ = true;
};

using QLaw = FGLaw<Rationals>;
using FpLaw = FGLaw<PrimeField>;

struct IntegralityReport {
  bool integral = true;
  int max_degree = 0;          // largest internal degree inspected
  std::size_t coefficients = 0;
  std::vector<std::string> offenders;  // "a_{j,k}: term" with p in a denominator
};

/// exp(log(x) + log(y)) truncated at total x,y-degree `order`.
QLaw fgl_from_log(const LogSeries& log, int order);
IntegralityReport check_integrality(const QLaw& law, std::uint32_t p, int max_degree = -1);

/// The universal p-typical law over Q[v_1..v_K], K = floor(log_p order).
QLaw universal_law(std::uint32_t p, int order, LogScheme scheme = LogScheme::hazewinkel);

/// Maps coefficients along `images` (one image per generator of the law's
/// ring), checking that each image has the degree of its generator.
template <class To, class From>
FGLaw<To> pushforward(const FGLaw<From>& law, const RingPtr& target, const std::vector<GradedPoly<To>>& images,
                      const std::string& provenance);

/// Images for the law over K(i)_* (v_i kept, other v_k -> 0) mod p.
FpLaw honda_law(std::uint32_t p, int i, int order, LogScheme scheme = LogScheme::hazewinkel);

/// p-fold formal sum of x with itself.
template <class Field>
TruncSeries<Field> p_series(const FGLaw<Field>& law, std::uint32_t p, int order);

/// Left-to-right iterated formal sum.  Throws on constant terms.
template <class Field>
TruncSeries<Field> formal_sum(const FGLaw<Field>& law, const std::vector<TruncSeries<Field>>& terms);
/// Right-to-left iterated formal sum (for association checks).
template <class Field>
TruncSeries<Field> formal_sum_right(const FGLaw<Field>& law, const std::vector<TruncSeries<Field>>& terms);

/// x +_F t_1 x^p +_F ... +_F t_m x^{p^m}; the ring must contain t1..tm.
template <class Field>
TruncSeries<Field> strict_iso_series(const FGLaw<Field>& law, std::uint32_t p, int m, int order);

struct AxiomReport {
  bool unit = true;
  bool commutative = true;
  bool associative = true;
  bool homogeneous = true;
  bool ok() const { return unit && commutative && associative && homogeneous; }
};

/// Unit, commutativity and homogeneity on the coefficients; associativity
/// by comparing F(F(aX,bX),cX) with F(aX,F(bX,cX)) over degree-0 a, b, c.
template <class Field>
AxiomReport check_axioms(const FGLaw<Field>& law);

template <class Field>
Json law_to_json(const FGLaw<Field>& law);
template <class Field>
FGLaw<Field> law_from_json(const Json& j);

template <class Field>
Json series_to_json(const TruncSeries<Field>& s);

/// Content-addressed store: key string -> SHA-256 -> file.
class CoefficientCache {
 public:
  explicit CoefficientCache(std::filesystem::path dir);
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const;
  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& bytes) const;

 private:
  std::filesystem::path dir_;
};

std::string sha256_hex(const std::string& bytes);

/// universal_law through the cache (computed and stored on a miss).
QLaw cached_universal_law(std::uint32_t p, int order, LogScheme scheme, const CoefficientCache* cache,
                          bool* hit = nullptr);
std::string universal_law_key(std::uint32_t p, int order, LogScheme scheme);

}  // namespace chromatic
