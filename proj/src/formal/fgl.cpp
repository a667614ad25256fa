#include "chromatic/fgl.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "chromatic/errors.hpp"

namespace chromatic {

std::string scheme_name(LogScheme s) { return s == LogScheme::araki ? "araki" : "hazewinkel"; }

LogScheme parse_scheme(const std::string& s) {
  if (s == "hazewinkel") return LogScheme::hazewinkel;
  if (s == "araki") return LogScheme::araki;
  throw PreconditionError("unknown generator scheme '" + s + "' (hazewinkel|araki)");
}

int chromatic_degree(std::uint32_t p, int k) { return static_cast<int>(2 * (ipow(p, k) - 1)); }

RingPtr bp_ring(std::uint32_t prime_of_ring, std::uint32_t p, int K) {
  std::vector<Generator> gens;
  // v_K first: higher generators dominate the monomial order
  for (int k = K; k >= 1; --k) gens.push_back({"v" + std::to_string(k), chromatic_degree(p, k)});
  return make_ring(prime_of_ring, std::move(gens));
}

LogSeries bp_log(std::uint32_t p, int K, LogScheme scheme) {
  require_odd_prime(p);
  if (K < 1) throw PreconditionError("bp_log needs K >= 1");
  LogSeries log;
  log.p = p;
  log.K = K;
  log.scheme = scheme;
  log.ring = bp_ring(0, p, K);
  log.m.push_back(QPoly::constant(log.ring, 1LL));
  for (int k = 1; k <= K; ++k) {
    QPoly acc(log.ring);
    for (int j = 0; j < k; ++j) {
      const auto e = ipow(p, j);
      acc += log.m[j] * QPoly::generator(log.ring, "v" + std::to_string(k - j), static_cast<std::int32_t>(e));
    }
    mpq_class denom;
    if (scheme == LogScheme::hazewinkel) {
      denom = p;
    } else {
      // p - p^{p^k}
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(ipow(p, k)));
      denom = mpq_class(mpz_class(p) - pk);
    }
    log.m.push_back(acc.scaled(mpq_class(1) / denom));
  }
  return log;
}

QSeries LogSeries::series(int order) const {
  QSeries s(ring, order);
  for (int k = 0; k <= K; ++k) {
    const auto e = ipow(p, k);
    if (e > order) break;
    s.add_term(static_cast<int>(e), m[k]);
  }
  return s;
}

QSeries series_reversion(const QSeries& f) {
  const int N = f.order();
  if (f.coefficient(0).is_zero() == false || !(f.coefficient(1) == QPoly::constant(f.ring(), 1LL)))
    throw PreconditionError("reversion needs a strict series x + ...");
  PowerTable<Rationals> pw(f);
  std::vector<QPoly> e(N + 1, QPoly(f.ring()));
  if (N >= 1) e[1] = QPoly::constant(f.ring(), 1LL);
  for (int j = 2; j <= N; ++j) {
    QPoly acc(f.ring());
    for (int n = 1; n < j; ++n)
      if (!e[n].is_zero()) acc += e[n] * pw[n].coefficient(j);
    e[j] = -acc;
  }
  QSeries g(f.ring(), N);
  for (int j = 1; j <= N; ++j) g.add_term(j, e[j]);
  return g;
}

template <class Field>
FGLaw<Field>::FGLaw(RingPtr ring, int order, std::map<Key, Poly> coeffs, std::string provenance, bool p_typical)
    : ring_(std::move(ring)), order_(order), provenance_(std::move(provenance)), p_typical_(p_typical) {
  for (auto& [key, c] : coeffs) {
    if (key.first < 1 || key.second < 1) throw PreconditionError("law coefficients need j, k >= 1");
    if (key.first + key.second > order_ || c.is_zero()) continue;
    coeffs_.emplace(key, std::move(c));
  }
}

template <class Field>
GradedPoly<Field> FGLaw<Field>::coefficient(int j, int k) const {
  auto it = coeffs_.find({j, k});
  return it == coeffs_.end() ? Poly(ring_) : it->second;
}

template <class Field>
TruncSeries<Field> FGLaw<Field>::sum(const Series& a, const Series& b) const {
  const int N = std::min(a.order(), b.order());
  Series result = a.truncated(N) + b.truncated(N);
  if (a.coefficients().count(0) || b.coefficients().count(0))
    throw PreconditionError("formal sum of a series with constant term");
  const int va = a.valuation(), vb = b.valuation();
  if (va > N || vb > N) return result;
  const int vmin = std::min(va, vb), vmax = std::max(va, vb);
  if (vmax < N) {
    const int needed = 1 + (N - vmax) / vmin;
    if (needed > order_)
      throw PreconditionError("law truncated at total degree " + std::to_string(order_) + " but " +
                              std::to_string(needed) + " is needed");
  }
  PowerTable<Field> A(a.truncated(N - vb));
  PowerTable<Field> B(b.truncated(N - va));
  // group by j: A^j * (sum_k a_{jk} B^k)
  auto it = coeffs_.begin();
  while (it != coeffs_.end()) {
    const int j = it->first.first;
    if (static_cast<long long>(j) * va + vb > N) break;
    Series inner(ring_, N - j * va);
    for (; it != coeffs_.end() && it->first.first == j; ++it) {
      const int k = it->first.second;
      if (static_cast<long long>(j) * va + static_cast<long long>(k) * vb > N) continue;
      inner += B[k].truncated(N - j * va).scaled(it->second);
    }
    result.accumulate(A[j].truncated(N - vb) * inner);
  }
  return result.truncated(N);
}

QLaw fgl_from_log(const LogSeries& log, int order) {
  if (order < 1) throw PreconditionError("law order must be >= 1");
  const QSeries L = log.series(order);
  const QSeries E = series_reversion(L);
  const int N = order;
  // [L^a]_j for 1 <= a <= j <= N
  PowerTable<Rationals> pw(L);
  std::vector<std::vector<QPoly>> La(N + 1);
  for (int a = 1; a <= N; ++a) {
    La[a].assign(N + 1, QPoly(log.ring));
    for (const auto& [j, c] : pw[a].coefficients())
      if (j <= N) La[a][j] = c;
  }
  std::vector<QPoly> e(N + 1, QPoly(log.ring));
  for (const auto& [n, c] : E.coefficients()) e[n] = c;
  std::vector<std::vector<mpz_class>> binom(N + 1, std::vector<mpz_class>(N + 1, 0));
  for (int n = 0; n <= N; ++n) {
    binom[n][0] = 1;
    for (int r = 1; r <= n; ++r) binom[n][r] = binom[n - 1][r - 1] + (r <= n - 1 ? binom[n - 1][r] : mpz_class(0));
  }
  // inner(a, k) = sum_b e_{a+b} C(a+b, a) [L^b]_k
  std::map<QLaw::Key, QPoly> coeffs;
  for (int a = 1; a < N; ++a) {
    std::vector<QPoly> inner(N + 1, QPoly(log.ring));
    for (int k = 1; k + a <= N; ++k) {
      QPoly acc(log.ring);
      for (int b = 1; b <= k && a + b <= N; ++b) {
        if (e[a + b].is_zero() || La[b][k].is_zero()) continue;
        acc += (e[a + b] * La[b][k]).scaled(mpq_class(binom[a + b][a]));
      }
      inner[k] = std::move(acc);
    }
    for (int j = a; j < N; ++j) {
      if (La[a][j].is_zero()) continue;
      for (int k = 1; j + k <= N; ++k) {
        if (inner[k].is_zero()) continue;
        auto [it, fresh] = coeffs.try_emplace({j, k}, QPoly(log.ring));
        it->second += La[a][j] * inner[k];
      }
    }
  }
  return QLaw(log.ring, order, std::move(coeffs), "universal:" + scheme_name(log.scheme), true);
}

IntegralityReport check_integrality(const QLaw& law, std::uint32_t p, int max_degree) {
  IntegralityReport rep;
  for (const auto& [key, c] : law.coefficients()) {
    const int deg = 2 * (key.first + key.second - 1);
    if (max_degree >= 0 && deg > max_degree) continue;
    rep.max_degree = std::max(rep.max_degree, deg);
    ++rep.coefficients;
    for (const auto& t : c.terms()) {
      if (mpz_divisible_ui_p(t.coeff.get_den_mpz_t(), p)) {
        rep.integral = false;
        rep.offenders.push_back("a_{" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                "}: " + t.coeff.get_str() + "*" + law.ring()->format(t.mono));
      }
    }
  }
  return rep;
}

QLaw universal_law(std::uint32_t p, int order, LogScheme scheme) {
  require_odd_prime(p);
  int K = 1;
  while (ipow(p, K + 1) <= order) ++K;
  return fgl_from_log(bp_log(p, K, scheme), order);
}

template <class To, class From>
FGLaw<To> pushforward(const FGLaw<From>& law, const RingPtr& target, const std::vector<GradedPoly<To>>& images,
                      const std::string& provenance) {
  const Ring& src = *law.ring();
  if (images.size() != src.size()) throw PreconditionError("pushforward: one image per generator");
  for (std::size_t g = 0; g < src.size(); ++g) {
    const auto& img = images[g];
    if (img.is_zero()) continue;
    if (!img.is_homogeneous() || *img.degree() != src.generator(g).degree)
      throw MathError("pushforward: image of " + src.generator(g).name + " has the wrong degree");
  }
  std::map<typename FGLaw<To>::Key, GradedPoly<To>> coeffs;
  for (const auto& [key, c] : law.coefficients()) coeffs.emplace(key, map_poly<To, From>(c, target, images));
  return FGLaw<To>(target, law.order(), std::move(coeffs), provenance, law.p_typical());
}

FpLaw honda_law(std::uint32_t p, int i, int order, LogScheme scheme) {
  const QLaw u = universal_law(p, order, scheme);
  const std::string vi = "v" + std::to_string(i);
  auto target = make_ring(p, {{vi, chromatic_degree(p, i), GeneratorKind::laurent}});
  std::vector<FpPoly> images;
  for (const auto& g : u.ring()->generators())
    images.push_back(g.name == vi ? FpPoly::generator(target, vi) : FpPoly(target));
  return pushforward<PrimeField, Rationals>(u, target, images, "honda:K(" + std::to_string(i) + ")");
}

template <class Field>
TruncSeries<Field> p_series(const FGLaw<Field>& law, std::uint32_t p, int order) {
  const auto x = TruncSeries<Field>::variable(law.ring(), order);
  auto s = x;
  for (std::uint32_t k = 1; k < p; ++k) s = law.sum(s, x);
  return s;
}

template <class Field>
TruncSeries<Field> formal_sum(const FGLaw<Field>& law, const std::vector<TruncSeries<Field>>& terms) {
  if (terms.empty()) throw PreconditionError("formal sum of an empty list");
  for (const auto& t : terms)
    if (t.coefficients().count(0)) throw PreconditionError("formal sum of a series with constant term");
  auto s = terms.front();
  for (std::size_t k = 1; k < terms.size(); ++k) s = law.sum(s, terms[k]);
  return s;
}

template <class Field>
TruncSeries<Field> formal_sum_right(const FGLaw<Field>& law, const std::vector<TruncSeries<Field>>& terms) {
  if (terms.empty()) throw PreconditionError("formal sum of an empty list");
  for (const auto& t : terms)
    if (t.coefficients().count(0)) throw PreconditionError("formal sum of a series with constant term");
  auto s = terms.back();
  for (std::size_t k = terms.size() - 1; k-- > 0;) s = law.sum(terms[k], s);
  return s;
}

template <class Field>
TruncSeries<Field> strict_iso_series(const FGLaw<Field>& law, std::uint32_t p, int m, int order) {
  if (ipow(p, m) > order) throw PreconditionError("strict_iso_series: truncation below p^m");
  std::vector<TruncSeries<Field>> terms{TruncSeries<Field>::variable(law.ring(), order)};
  for (int j = 1; j <= m; ++j)
    terms.push_back(TruncSeries<Field>::monomial(law.ring(), order, static_cast<int>(ipow(p, j)),
                                                 GradedPoly<Field>::generator(law.ring(), "t" + std::to_string(j))));
  return formal_sum(law, terms);
}

template <class Field>
AxiomReport check_axioms(const FGLaw<Field>& law) {
  using Poly = GradedPoly<Field>;
  AxiomReport rep;
  for (const auto& [key, c] : law.coefficients()) {
    if (key.first < 1 || key.second < 1) rep.unit = false;
    if (!(law.coefficient(key.second, key.first) == c)) rep.commutative = false;
    if (!c.is_homogeneous() || *c.degree() != 2 * (key.first + key.second - 1)) rep.homogeneous = false;
  }
  // associativity over three degree-0 scalars
  auto gens = law.ring()->generators();
  for (const char* s : {"assoc_a", "assoc_b", "assoc_c"}) gens.push_back({s, 0});
  auto ext = make_ring(law.ring()->prime(), gens);
  std::vector<Poly> images;
  for (const auto& g : law.ring()->generators()) images.push_back(Poly::generator(ext, g.name));
  const auto L = pushforward<Field, Field>(law, ext, images, law.provenance());
  const int N = law.order();
  auto scalar = [&](const char* s) {
    return TruncSeries<Field>::monomial(ext, N, 1, Poly::generator(ext, s));
  };
  const auto a = scalar("assoc_a"), b = scalar("assoc_b"), c = scalar("assoc_c");
  rep.associative = L.sum(L.sum(a, b), c) == L.sum(a, L.sum(b, c));
  return rep;
}

template <class Field>
Json series_to_json(const TruncSeries<Field>& s) {
  Json out;
  out["order"] = s.order();
  Json cs = Json::array();
  for (const auto& [e, c] : s.coefficients()) {
    Json t;
    t["e"] = e;
    t["terms"] = poly_to_json(c);
    cs.push_back(std::move(t));
  }
  out["coefficients"] = std::move(cs);
  return out;
}

template <class Field>
Json law_to_json(const FGLaw<Field>& law) {
  Json out;
  out["schema"] = "chromatic.fgl/1";
  out["prime"] = law.ring()->prime();
  out["order"] = law.order();
  out["provenance"] = law.provenance();
  out["p_typical"] = law.p_typical();
  out["generators"] = ring_to_json(*law.ring());
  Json cs = Json::array();
  for (const auto& [key, c] : law.coefficients()) {
    Json t;
    t["j"] = key.first;
    t["k"] = key.second;
    t["terms"] = poly_to_json(c);
    cs.push_back(std::move(t));
  }
  out["coefficients"] = std::move(cs);
  return out;
}

template <class Field>
FGLaw<Field> law_from_json(const Json& j) {
  try {
    if (j.at("schema") != "chromatic.fgl/1") throw FormatError("unsupported law schema");
    auto ring = ring_from_json(j);
    if ((ring->prime() == 0) != !Field::modular) throw FormatError("law coefficient field mismatch");
    std::map<typename FGLaw<Field>::Key, GradedPoly<Field>> coeffs;
    for (const auto& t : j.at("coefficients"))
      coeffs.emplace(typename FGLaw<Field>::Key{t.at("j").get<int>(), t.at("k").get<int>()},
                     poly_from_json<Field>(ring, t.at("terms")));
    return FGLaw<Field>(ring, j.at("order").get<int>(), std::move(coeffs), j.at("provenance").get<std::string>(),
                        j.at("p_typical").get<bool>());
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("malformed law: ") + ex.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
  return os.str();
}

CoefficientCache::CoefficientCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path CoefficientCache::path_for(const std::string& key) const {
  return dir_ / (sha256_hex(key) + ".json");
}

std::optional<std::string> CoefficientCache::load(const std::string& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void CoefficientCache::store(const std::string& key, const std::string& bytes) const {
  const auto final_path = path_for(key);
  auto tmp = final_path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << bytes;
  }
  std::filesystem::rename(tmp, final_path);
}

std::string universal_law_key(std::uint32_t p, int order, LogScheme scheme) {
  return "universal-law|p=" + std::to_string(p) + "|order=" + std::to_string(order) +
         "|scheme=" + scheme_name(scheme) + "|format=1";
}

QLaw cached_universal_law(std::uint32_t p, int order, LogScheme scheme, const CoefficientCache* cache, bool* hit) {
  if (hit) *hit = false;
  if (!cache) return universal_law(p, order, scheme);
  const auto key = universal_law_key(p, order, scheme);
  if (auto bytes = cache->load(key)) {
    try {
      auto law = law_from_json<Rationals>(Json::parse(*bytes));
      if (hit) *hit = true;
      return law;
    } catch (const std::exception&) {
      // unreadable entry: fall through and overwrite it
    }
  }
  auto law = universal_law(p, order, scheme);
  cache->store(key, dump_canonical(law_to_json(law)));
  return law;
}

template class FGLaw<Rationals>;
template class FGLaw<PrimeField>;
template FGLaw<PrimeField> pushforward(const FGLaw<Rationals>&, const RingPtr&, const std::vector<FpPoly>&,
                                       const std::string&);
template FGLaw<Rationals> pushforward(const FGLaw<Rationals>&, const RingPtr&, const std::vector<QPoly>&,
                                      const std::string&);
template FGLaw<PrimeField> pushforward(const FGLaw<PrimeField>&, const RingPtr&, const std::vector<FpPoly>&,
                                       const std::string&);
template QSeries p_series(const QLaw&, std::uint32_t, int);
template FpSeries p_series(const FpLaw&, std::uint32_t, int);
template QSeries formal_sum(const QLaw&, const std::vector<QSeries>&);
template FpSeries formal_sum(const FpLaw&, const std::vector<FpSeries>&);
template QSeries formal_sum_right(const QLaw&, const std::vector<QSeries>&);
template FpSeries formal_sum_right(const FpLaw&, const std::vector<FpSeries>&);
template QSeries strict_iso_series(const QLaw&, std::uint32_t, int, int);
template FpSeries strict_iso_series(const FpLaw&, std::uint32_t, int, int);
template AxiomReport check_axioms(const QLaw&);
template AxiomReport check_axioms(const FpLaw&);
template Json law_to_json(const QLaw&);
template Json law_to_json(const FpLaw&);
template QLaw law_from_json(const Json&);
template FpLaw law_from_json(const Json&);
template Json series_to_json(const QSeries&);
template Json series_to_json(const FpSeries&);

}  // namespace chromatic
