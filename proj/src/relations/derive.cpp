#include "chromatic/derive.hpp"

#include <sstream>

#include "chromatic/errors.hpp"

namespace chromatic {

namespace {

std::string tname(int j) { return "t" + std::to_string(j); }
std::string wname(int k) { return "w" + std::to_string(k); }
std::string vname(int k) { return "v" + std::to_string(k); }

void require_range(std::uint32_t p, int i, int n, int m, const DerivationOptions& opt) {
  require_odd_prime(p);
  if (i < 1 || i > n) throw PreconditionError("need 1 <= i <= n");
  if (m < 0) throw PreconditionError("need m >= 0");
  if (!opt.allow_large && (n > 3 || m > 2))
    throw PreconditionError("(n, m) outside the shipped range n <= 3, m <= 2; raise the budget flag to proceed");
  if (static_cast<std::size_t>(m + (n - i) + 1) > kMaxGenerators ||
      static_cast<std::size_t>(i + n) > kMaxGenerators)
    throw PreconditionError("too many generators for this build");
}

std::size_t series_terms(const FpSeries& s) {
  std::size_t k = 0;
  for (const auto& [e, c] : s.coefficients()) k += c.size();
  return k;
}

void check_budget(const FpSeries& s, const DerivationOptions& opt, const char* what) {
  const auto k = series_terms(s);
  if (k > opt.max_terms)
    throw BudgetExceeded(std::string(what) + " holds " + std::to_string(k) + " terms, over the budget of " +
                         std::to_string(opt.max_terms));
}

/// The universal law reduced mod p along v_k -> images(k).
template <class ImageFn>
FpLaw reduced_law(std::uint32_t p, int order, const RingPtr& target, const DerivationOptions& opt, ImageFn image) {
  const QLaw u = cached_universal_law(p, std::max(order, 1), opt.scheme, opt.cache);
  std::vector<FpPoly> images;
  for (const auto& g : u.ring()->generators()) images.push_back(image(std::stoi(g.name.substr(1))));
  return pushforward<PrimeField, Rationals>(u, target, images, "right-unit:" + scheme_name(opt.scheme));
}

/// x +_G t_1 x^p +_G ... +_G t_m x^{p^m} at the given order.
FpSeries iso_series(const FpLaw& law, std::uint32_t p, int m, int order) {
  const auto& ring = law.ring();
  std::vector<FpSeries> terms{FpSeries::variable(ring, order)};
  for (int j = 1; j <= m; ++j) {
    const auto e = ipow(p, j);
    if (e > order) break;
    terms.push_back(FpSeries::monomial(ring, order, static_cast<int>(e), FpPoly::generator(ring, tname(j))));
  }
  return formal_sum(law, terms);
}

bool is_power_of(std::int64_t e, std::uint32_t p, int* k) {
  int j = 0;
  while (e % p == 0) {
    e /= p;
    ++j;
  }
  if (e != 1) return false;
  *k = j;
  return true;
}

}  // namespace

RingPtr stage_ring(std::uint32_t p, int i, int n, int m) {
  std::vector<Generator> gens;
  for (int j = m; j >= 1; --j) gens.push_back({tname(j), chromatic_degree(p, j)});
  for (int k = n; k > i; --k)
    gens.push_back({wname(k), chromatic_degree(p, k), k == n ? GeneratorKind::laurent : GeneratorKind::polynomial});
  gens.push_back({vname(i), chromatic_degree(p, i), GeneratorKind::laurent});
  return make_ring(p, std::move(gens));
}

FpPoly solve_for(const FpPoly& relation, const std::string& generator) {
  const auto& ring = relation.ring();
  const auto g = ring->index_of(generator);
  auto parts = relation.collect(g);
  for (const auto& [e, c] : parts)
    if (e != 0 && e != 1) throw MathError(generator + " does not occur linearly in " + relation.to_string());
  auto lin = parts.find(1);
  if (lin == parts.end()) throw MathError(generator + " does not occur in " + relation.to_string());
  if (!lin->second.is_unit())
    throw MathError("coefficient of " + generator + " is not a unit: " + lin->second.to_string());
  FpPoly rest = parts.count(0) ? parts.at(0) : FpPoly(ring);
  return -(rest * lin->second.inverse_unit());
}

DerivationState derive_presentation(std::uint32_t p, int i, int n, int m, const DerivationOptions& opt) {
  require_range(p, i, n, m, opt);
  DerivationState st;
  st.p = p;
  st.i = i;
  st.n = n;
  st.m = m;
  st.scheme = opt.scheme;
  const std::int64_t pi = ipow(p, i);
  const std::int64_t lo = ipow(p, i + m);
  const std::int64_t hi = ipow(p, i + m + 1) - 1;
  const std::int64_t N = opt.trunc ? opt.trunc : lo + p - 1;
  if (N < lo || N > hi)
    throw PreconditionError("truncation must lie in [p^{i+m}, p^{i+m+1}) = [" + std::to_string(lo) + ", " +
                            std::to_string(hi + 1) + ")");
  if (N > (1 << 24)) throw PreconditionError("truncation too large");
  st.trunc = static_cast<int>(N);

  // Lowest coefficients, with every w_k still unknown: forces w_k = 0 for
  // k < i and w_i = v_i.
  {
    std::vector<Generator> gens;
    for (int j = i - 1; j >= 1; --j) gens.push_back({tname(j), chromatic_degree(p, j)});
    for (int k = n; k >= 1; --k)
      gens.push_back({wname(k), chromatic_degree(p, k), k == n ? GeneratorKind::laurent : GeneratorKind::polynomial});
    gens.push_back({vname(i), chromatic_degree(p, i), GeneratorKind::laurent});
    auto ring = make_ring(p, std::move(gens));
    const int law_order = static_cast<int>(std::max<std::int64_t>(1, pi / p));
    const FpLaw law = reduced_law(p, law_order, ring, opt, [&](int k) {
      return k <= n ? FpPoly::generator(ring, wname(k)) : FpPoly(ring);
    });
    const FpSeries f = iso_series(law, p, i - 1, law_order);
    std::vector<FpSeries> summands;
    for (int k = 1; k <= i; ++k)
      summands.push_back(f.frobenius(ipow(p, k)).truncated(static_cast<int>(pi)).scaled(FpPoly::generator(ring, wname(k))));
    const FpSeries lhs = formal_sum(law, summands);
    const FpSeries rhs = f.substitute(FpPoly::generator(ring, vname(i)), static_cast<int>(pi)).truncated(static_cast<int>(pi));
    check_budget(lhs, opt, "left side");

    std::vector<FpPoly> subst;
    for (const auto& g : ring->generators()) subst.push_back(FpPoly::generator(ring, g.name));
    for (std::int64_t e = 1; e <= pi; ++e) {
      const FpPoly d = map_poly<PrimeField, PrimeField>(lhs.coefficient(static_cast<int>(e)) -
                                                            rhs.coefficient(static_cast<int>(e)),
                                                        ring, subst);
      int k = 0;
      if (!is_power_of(e, p, &k)) {
        if (!d.is_zero())
          throw MathError("inconsistent coefficient at x^" + std::to_string(e) + ": " + d.to_string() + " = 0");
        ++st.identities_checked;
        continue;
      }
      if (k == 0) {
        if (!d.is_zero()) throw MathError("linear coefficients disagree: " + d.to_string());
        ++st.identities_checked;
        continue;
      }
      if (d.is_zero()) throw MathError("coefficient of x^" + std::to_string(e) + " does not determine " + wname(k));
      const FpPoly value = solve_for(d, wname(k));
      const FpPoly expected = k < i ? FpPoly(ring) : FpPoly::generator(ring, vname(i));
      if (!(value == expected))
        throw MathError("unexpected conclusion " + wname(k) + " = " + value.to_string());
      st.identifications.push_back({wname(k), value.to_string(), e});
      subst[ring->index_of(wname(k))] = value;
    }
  }

  // Stages: t_r^{p^i} from the coefficient of x^{p^{i+r}}.
  auto ring = stage_ring(p, i, n, m);
  const FpPoly v = FpPoly::generator(ring, vname(i));
  const int law_order = static_cast<int>(N / pi);
  st.law = reduced_law(p, law_order, ring, opt, [&](int k) {
    if (k < i || k > n) return FpPoly(ring);
    if (k == i) return v;
    return FpPoly::generator(ring, wname(k));
  });
  st.f = iso_series(st.law, p, m, law_order);
  std::vector<FpSeries> summands;
  for (int k = i; k <= n && ipow(p, k) <= N; ++k) {
    const FpPoly coeff = k == i ? v : FpPoly::generator(ring, wname(k));
    summands.push_back(st.f.frobenius(ipow(p, k)).truncated(static_cast<int>(N)).scaled(coeff));
  }
  st.lhs = formal_sum(st.law, summands);
  st.rhs = st.f.substitute(v, static_cast<int>(pi)).truncated(static_cast<int>(N));
  check_budget(st.lhs, opt, "left side");
  check_budget(st.rhs, opt, "right side");

  std::vector<std::string> base;
  for (int k = n; k > i; --k) base.push_back(wname(k));
  base.push_back(vname(i));
  st.presentation = FpPresentation(ring, base, {vname(i)});

  for (std::int64_t e = 1; e <= N; ++e) {
    const FpPoly l = st.presentation.normal_form(st.lhs.coefficient(static_cast<int>(e)));
    const FpPoly r = st.presentation.normal_form(st.rhs.coefficient(static_cast<int>(e)));
    const FpPoly d = l - r;
    int k = 0;
    const bool solving = is_power_of(e, p, &k) && k > i && k - i <= m;
    if (!solving) {
      if (!d.is_zero())
        throw MathError("inconsistent coefficient at x^" + std::to_string(e) + ": " + d.to_string() + " = 0");
      ++st.identities_checked;
      continue;
    }
    const int stage = k - i;
    if (d.is_zero()) throw MathError("coefficient of x^" + std::to_string(e) + " carries no relation");
    Monomial lead;
    lead[ring->index_of(tname(stage))] = static_cast<std::int32_t>(pi);
    st.presentation.add_relation(d, lead);
    st.stages.push_back({stage, e, l, r, d, lead, st.presentation.rules().back().tail});
  }
  if (static_cast<int>(st.stages.size()) != m) throw MathError("derivation produced too few stages");
  return st;
}

FpPresentation stage_presentation(const DerivationState& st, int r) {
  if (r < 0 || r > st.m) throw PreconditionError("stage out of range");
  // later t_j are not yet adjoined; treat them as inert base variables
  auto base = st.presentation.base();
  for (int j = r + 1; j <= st.m; ++j) base.push_back(tname(j));
  FpPresentation P(st.presentation.ring(), base, st.presentation.ground());
  for (int k = 0; k < r; ++k) P.add_relation(st.stages[k].relation, st.stages[k].lead);
  return P;
}

FpPresentation sigma_n_presentation(std::uint32_t p, int n, int m) {
  require_odd_prime(p);
  if (n < 1 || m < 0) throw PreconditionError("need n >= 1, m >= 0");
  auto ring = stage_ring(p, n, n, m);
  FpPresentation P(ring, {vname(n)}, {vname(n)});
  const auto v = FpPoly::generator(ring, vname(n));
  const auto pn = static_cast<std::int32_t>(ipow(p, n));
  for (int r = 1; r <= m; ++r) {
    const auto t = FpPoly::generator(ring, tname(r));
    Monomial lead;
    lead[ring->index_of(tname(r))] = pn;
    P.add_relation(v * t.pow(static_cast<unsigned>(pn)) - v.pow(static_cast<unsigned>(ipow(p, r))) * t, lead);
  }
  return P;
}

PresentationComparison compare_presentations(const FpPresentation& a, const FpPresentation& b) {
  PresentationComparison out;
  if (!same_ring(a.ring(), b.ring())) {
    out.equal = false;
    out.mismatches.push_back("presentations live over different rings");
    return out;
  }
  for (const auto& rel : a.relations()) {
    auto r = b.normal_form(rel);
    if (!r.is_zero()) {
      out.equal = false;
      out.mismatches.push_back(rel.to_string() + " reduces to " + r.to_string());
    }
  }
  for (const auto& rel : b.relations()) {
    auto r = a.normal_form(rel);
    if (!r.is_zero()) {
      out.equal = false;
      out.mismatches.push_back(rel.to_string() + " reduces to " + r.to_string());
    }
  }
  return out;
}

CrossTermAudit cross_term_audit(const DerivationState& st, int r) {
  if (r < 0 || r > st.m) throw PreconditionError("stage out of range");
  CrossTermAudit a;
  a.stage = r;
  const auto& ring = st.presentation.ring();
  const auto pr = ipow(st.p, r);
  a.exponent = ipow(st.p, st.i + r);
  const FpPoly vpow = FpPoly::generator(ring, st.v_name(), static_cast<std::int32_t>(pr));
  const FpPoly t = r == 0 ? FpPoly::constant(ring, 1LL) : FpPoly::generator(ring, tname(r));
  a.linear = t * vpow;
  a.cross = (st.f.coefficient(static_cast<int>(pr)) - t) * vpow;
  for (const auto& term : a.cross.terms())
    for (int j = std::max(r, 1); j <= st.m; ++j)
      if (term.mono[ring->index_of(tname(j))] != 0) a.involves_later = true;

  // left side: split off w_k * (coefficient of x^{p^{i+r}/p^k} in f)^{p^k}
  FpPoly linear_left(ring);
  for (int k = st.i; k <= st.n; ++k) {
    const auto q = ipow(st.p, k);
    if (a.exponent % q != 0) continue;
    const FpPoly coeff = k == st.i ? FpPoly::generator(ring, st.v_name()) : FpPoly::generator(ring, wname(k));
    linear_left += coeff * st.f.coefficient(static_cast<int>(a.exponent / q)).frobenius(q);
  }
  a.lhs_cross = st.lhs.coefficient(static_cast<int>(a.exponent)) - linear_left;

  if (a.involves_later) {
    a.passed = false;
    a.note = "a formal-sum cross term reaches x^{p^{i+r}} through t_j with j >= r";
  } else if (r <= 1 && !a.cross.is_zero()) {
    a.passed = false;
    a.note = "cross term at the first p-power exponent";
  } else if (!a.cross.is_zero()) {
    a.note = "cross terms from repeated summands of earlier t_j only; they are reduced by earlier stages";
  } else {
    a.note = "only the linear term contributes";
  }
  return a;
}

Json derivation_to_json(const DerivationState& st) {
  Json out;
  out["schema"] = "chromatic.derivation/1";
  out["p"] = st.p;
  out["i"] = st.i;
  out["n"] = st.n;
  out["m"] = st.m;
  out["trunc"] = st.trunc;
  out["scheme"] = scheme_name(st.scheme);
  Json ids = Json::array();
  for (const auto& id : st.identifications) {
    Json e;
    e["generator"] = id.generator;
    e["value"] = id.value;
    e["exponent"] = id.exponent;
    ids.push_back(std::move(e));
  }
  out["identifications"] = std::move(ids);
  Json rels = Json::array();
  const auto& ring = *st.presentation.ring();
  for (const auto& s : st.stages) {
    Json e;
    e["stage"] = s.stage;
    e["exponent"] = s.exponent;
    e["lhs"] = s.lhs.to_string();
    e["rhs"] = s.rhs.to_string();
    e["rule"] = ring.format(s.lead) + " -> " + s.tail.to_string();
    rels.push_back(std::move(e));
  }
  out["relations"] = std::move(rels);
  out["identities_checked"] = st.identities_checked;
  out["presentation"] = presentation_to_json(st.presentation);
  return out;
}

std::string derivation_to_tex(const DerivationState& st) {
  std::ostringstream os;
  os << "% p = " << st.p << ", i = " << st.i << ", n = " << st.n << ", m = " << st.m << ", compared through x^{"
     << st.trunc << "}\n";
  os << "\\begin{tabular}{ll}\n";
  os << "coefficient & identity \\\\\n\\hline\n";
  for (const auto& id : st.identifications)
    os << "$x^{" << id.exponent << "}$ & $" << tex_name(id.generator) << " = "
       << (id.value == "0" ? "0" : tex_name(id.value)) << "$ \\\\\n";
  for (const auto& s : st.stages)
    os << "$x^{" << s.exponent << "}$ & $" << s.lhs.to_tex() << " = " << s.rhs.to_tex() << "$ \\\\\n";
  os << "\\end{tabular}\n";
  return os.str();
}

}  // namespace chromatic
