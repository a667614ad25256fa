#include "chromatic/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>

#include "chromatic/books.hpp"
#include "chromatic/derive.hpp"
#include "chromatic/errors.hpp"
#include "chromatic/hochschild.hpp"

namespace chromatic {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool is_odd_prime(std::uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint32_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

std::optional<CoefficientCache> open_cache(const RunConfig& cfg) {
  if (cfg.cache_dir.empty()) return std::nullopt;
  return CoefficientCache(cfg.cache_dir);
}

std::string pow_name(const std::string& g, std::int64_t e) { return e == 1 ? g : g + "^" + std::to_string(e); }

int vdeg(std::uint32_t p, int k) { return static_cast<int>(2 * (ipow(p, k) - 1)); }

/// Name of the single generator in a rule lead.
std::string lead_generator(const Ring& ring, const Monomial& lead) {
  for (std::size_t g = 0; g < ring.size(); ++g)
    if (lead[g] != 0) return ring.generator(g).name;
  throw MathError("empty rule lead");
}

std::vector<EtaleReport> certify_all(const FpPresentation& P) {
  std::vector<EtaleReport> out;
  for (std::size_t k = 0; k < P.rules().size(); ++k)
    out.push_back(etale_certificate(P, k, lead_generator(*P.ring(), P.rules()[k].lead)));
  return out;
}

QPresentation rational_en(std::uint32_t p, int n) {
  std::vector<Generator> gens;
  for (int k = 1; k <= n; ++k)
    gens.push_back({"v" + std::to_string(k), vdeg(p, k), k == n ? GeneratorKind::laurent : GeneratorKind::polynomial});
  return QPresentation(make_ring(0, gens), {}, {"v" + std::to_string(n)});
}

std::vector<std::string> names_of(const QPresentation& P) {
  std::vector<std::string> out;
  for (const auto& g : P.ring()->generators()) out.push_back(g.name);
  return out;
}

/// The bar-complex table of Q[x]/(x^2), |x| = 2, s <= 4, as first recorded.
const char* kDualNumbersBar = R"({
  "schema": "chromatic.hh/1",
  "method": "bar",
  "s_max": 4,
  "window": [0, 10],
  "ranks": [
    {"s": 0, "t": 0, "rank": 1},
    {"s": 0, "t": 2, "rank": 1},
    {"s": 1, "t": 2, "rank": 1},
    {"s": 2, "t": 6, "rank": 1},
    {"s": 3, "t": 6, "rank": 1},
    {"s": 4, "t": 10, "rank": 1}
  ]
})";

/// Largest s_max <= want whose top chain group in degree 0 stays in budget
/// for an algebra concentrated in degree 0.
int affordable_smax(std::size_t dim, int want, std::size_t budget) {
  int s = 0;
  while (s < want) {
    std::size_t cols = dim;
    for (int k = 0; k < s + 2; ++k) cols *= (dim - 1);
    if (cols > budget) break;
    ++s;
  }
  return s;
}

}  // namespace

Emit parse_emit(const std::string& s) {
  if (s == "json") return Emit::json;
  if (s == "tex") return Emit::tex;
  if (s == "csv") return Emit::csv;
  throw PreconditionError("unknown emit format '" + s + "' (json, tex, csv)");
}

std::string emit_name(Emit e) {
  switch (e) {
    case Emit::json: return "json";
    case Emit::tex: return "tex";
    case Emit::csv: return "csv";
  }
  return "json";
}

void validate(const RunConfig& cfg, bool needs_indices) {
  if (!is_odd_prime(cfg.p)) throw PreconditionError("p must be an odd prime, got " + std::to_string(cfg.p));
  if (cfg.p > 1000) throw PreconditionError("p too large");
  if (needs_indices) {
    if (cfg.i < 1 || cfg.i > cfg.n) throw PreconditionError("need 1 <= i <= n");
    if (cfg.m < 0) throw PreconditionError("m must be >= 0");
  }
  if (cfg.trunc < 0) throw PreconditionError("truncation must be >= 0");
  if (cfg.s_max < 0 || cfg.s_max > 8) throw PreconditionError("s_max must lie in 0..8");
  if (cfg.window && cfg.window->first > cfg.window->second) throw PreconditionError("window bounds out of order");
}

Json config_to_json(const RunConfig& cfg) {
  Json out;
  out["p"] = cfg.p;
  out["i"] = cfg.i;
  out["n"] = cfg.n;
  out["m"] = cfg.m;
  out["trunc"] = cfg.trunc;
  out["scheme"] = scheme_name(cfg.scheme);
  out["s_max"] = cfg.s_max;
  out["window"] = cfg.window ? Json::array({cfg.window->first, cfg.window->second}) : Json(nullptr);
  out["emit"] = emit_name(cfg.emit);
  // the cache location does not influence results, so it stays out of the echo
  out["max_columns"] = cfg.max_columns;
  return out;
}

std::pair<int, int> parse_window(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw PreconditionError("window must look like a..b");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (lo > hi) throw PreconditionError("window bounds out of order");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw PreconditionError("window must look like a..b, got '" + text + "'");
  }
}

RunResult run_derive(const RunConfig& cfg) {
  validate(cfg, true);
  RunResult r;
  r.command = "derive";
  r.config = config_to_json(cfg);
  const auto cache = open_cache(cfg);
  DerivationOptions opt;
  opt.scheme = cfg.scheme;
  opt.trunc = cfg.trunc;
  opt.allow_large = cfg.allow_large;
  opt.cache = cache ? &*cache : nullptr;

  auto t0 = Clock::now();
  const auto st = derive_presentation(cfg.p, cfg.i, cfg.n, cfg.m, opt);
  r.timings["derive_seconds"] = since(t0);
  t0 = Clock::now();
  std::vector<EtaleReport> reports;
  for (int s = 1; s <= st.m; ++s) reports.push_back(kahler_check(st, s));
  r.timings["kahler_seconds"] = since(t0);

  // w_{i+1} solved from the first stage, when it occurs there linearly
  std::optional<std::pair<std::string, FpPoly>> solved;
  if (st.m >= 1 && st.i < st.n) {
    const std::string w = "w" + std::to_string(st.i + 1);
    try {
      solved.emplace(w, solve_for(st.stages[0].relation, w));
    } catch (const MathError&) {
    }
  }

  bool etale = true;
  for (const auto& rep : reports) etale = etale && rep.etale;
  r.ok = etale;
  r.verdicts["stages"] = st.m;
  r.verdicts["etale"] = etale;

  if (cfg.emit == Emit::tex) {
    std::ostringstream os;
    os << derivation_to_tex(st);
    if (solved) os << "% " << solved->first << " = " << solved->second.to_string() << "\n";
    for (const auto& rep : reports) {
      os << "% stage " << rep.stage << ": " << rep.verdict << ", " << rep.solved_for << " coefficient "
         << rep.solving_coefficient.to_string();
      if (rep.inverse) os << ", " << *rep.inverse;
      os << "\n";
    }
    r.artifacts.push_back({"derivation.tex", os.str()});
  } else if (cfg.emit == Emit::json) {
    Json doc = derivation_to_json(st);
    if (solved) doc["solved"] = Json{{solved->first, solved->second.to_string()}};
    Json et = Json::array();
    for (const auto& rep : reports) et.push_back(etale_report_to_json(rep));
    doc["etale"] = std::move(et);
    r.artifacts.push_back({"derivation.json", dump_canonical(doc)});
  } else {
    throw PreconditionError("derive emits json or tex");
  }
  return r;
}

RunResult run_hh(const RunConfig& cfg, const HHRequest& req) {
  validate(cfg, false);
  RunResult r;
  r.command = "hh";
  r.config = config_to_json(cfg);
  r.config["method"] = req.method;
  if (req.smooth_given) r.config["smooth"] = req.smooth;
  if (!req.specialize.empty()) r.config["specialize"] = req.specialize;

  const Json& doc = req.algebra.contains("presentation") ? req.algebra.at("presentation") : req.algebra;
  auto any = presentation_from_json(doc);
  const auto t0 = Clock::now();
  BigradedTable table;
  std::visit(
      [&](auto& P0) {
        using P_t = std::decay_t<decltype(P0)>;
        using Field = std::conditional_t<std::is_same_v<P_t, QPresentation>, Rationals, PrimeField>;
        Presentation<Field> P = P0;
        if (!req.specialize.empty()) {
          auto sp = specialize(P, req.specialize, true);
          r.verdicts["specialization"] = sp.validity;
          P = sp.algebra;
        }
        const auto& ring = *P.ring();
        int top = 0;
        for (const auto& g : ring.generators()) top = std::max(top, std::abs(g.degree));
        const std::pair<int, int> def{0, std::max(2 * top, 0)};
        if (req.method == "hkr") {
          std::vector<std::string> smooth = req.smooth;
          if (!req.smooth_given)
            for (std::size_t g = 0; g < ring.size(); ++g)
              if (P.is_base(g) && !P.is_ground(g)) smooth.push_back(ring.generator(g).name);
          std::vector<EtaleReport> certs;
          if constexpr (std::is_same_v<Field, PrimeField>) certs = certify_all(P);
          const auto ans = hh_hkr(P, smooth, certs);
          const auto w = cfg.window.value_or(def);
          table = ans.table(cfg.s_max, w.first, w.second);
          std::vector<std::string> ext;
          for (const auto& e : ans.exterior) ext.push_back(e.name);
          r.verdicts["exterior"] = ext;
        } else if (req.method == "koszul") {
          const auto w = cfg.window.value_or(def);
          table = hh_koszul(koszul_generators(P), cfg.s_max, w.first, w.second);
        } else if (req.method == "bar") {
          const FiniteAlgebra<Field> A(P);
          const auto w = cfg.window.value_or(bar_window(A, cfg.s_max));
          BarOptions bo;
          bo.max_columns = cfg.max_columns;
          table = hh_bar(A, cfg.s_max, w.first, w.second, bo);
          r.verdicts["dimension"] = A.dim();
        } else {
          throw PreconditionError("unknown method '" + req.method + "' (hkr, koszul, bar)");
        }
      },
      any);
  r.timings["hh_seconds"] = since(t0);
  r.verdicts["method"] = req.method;
  r.verdicts["nonzero_entries"] = table.ranks.size();
  switch (cfg.emit) {
    case Emit::json: r.artifacts.push_back({"hh.json", dump_canonical(table_to_json(table))}); break;
    case Emit::csv: r.artifacts.push_back({"hh.csv", table_to_csv(table)}); break;
    case Emit::tex: r.artifacts.push_back({"hh.tex", table_to_tex(table)}); break;
  }
  return r;
}

RunResult run_check_conjecture(const RunConfig& cfg, int i) {
  validate(cfg, false);
  if (cfg.n < 1 || cfg.n > 4) throw PreconditionError("n must lie in 1..4");
  if (i > cfg.n) throw PreconditionError("need i <= n");
  RunResult r;
  r.command = "check conjecture";
  r.config = config_to_json(cfg);
  r.config["level"] = i < 0 ? Json("all") : Json(i);
  const auto t0 = Clock::now();
  Json all = Json::array();
  bool ok = true;
  for (int k = (i < 0 ? 0 : i); k <= (i < 0 ? cfg.n : i); ++k) {
    const auto v = conjecture_check(cfg.p, cfg.n, k);
    ok = ok && v.consistent;
    all.push_back(conjecture_to_json(v));
  }
  r.timings["check_seconds"] = since(t0);
  r.ok = ok;
  r.verdicts["verdict"] = ok ? "consistent" : "inconsistent";
  if (cfg.emit == Emit::tex) {
    r.artifacts.push_back({"cube.tex", cube_table_tex(cfg.p, cfg.n)});
  } else {
    Json doc;
    doc["schema"] = "chromatic.conjecture/1";
    doc["checks"] = std::move(all);
    r.artifacts.push_back({"conjecture.json", dump_canonical(doc)});
  }
  return r;
}

RunResult run_check_splitting(const RunConfig& cfg) {
  validate(cfg, false);
  RunResult r;
  r.command = "check e2-splitting";
  r.config = config_to_json(cfg);
  const auto t0 = Clock::now();
  const auto c = e2_splitting_check(cfg.p);
  r.timings["check_seconds"] = since(t0);
  r.ok = c.passed;
  r.verdicts["verdict"] = c.passed ? "consistent" : "inconsistent";
  if (cfg.emit == Emit::tex) {
    r.artifacts.push_back({"cube.tex", cube_table_tex(cfg.p, 2)});
  } else {
    Json doc = splitting_to_json(c);
    doc["schema"] = "chromatic.splitting/1";
    r.artifacts.push_back({"splitting.json", dump_canonical(doc)});
  }
  return r;
}

RunResult run_check_collapse(const RunConfig& cfg, const Json& page) {
  RunResult r;
  r.command = "check collapse";
  E2Page pg;
  if (page.is_null()) {
    validate(cfg, false);
    if (cfg.i < 0 || cfg.i > cfg.n) throw PreconditionError("need 0 <= i <= n");
    pg = ki_thh_page(cfg.p, cfg.n, cfg.i);
    r.config = config_to_json(cfg);
  } else {
    pg = page_from_json(page);
    r.config = Json{{"page", page_to_json(pg)}};
  }
  const auto t0 = Clock::now();
  const auto cert = bokstedt_collapse_check(pg);
  r.timings["check_seconds"] = since(t0);
  // a page that does not collapse is a finding, not a failed run
  r.verdicts["verdict"] = cert.collapses ? "collapses" : "possible differentials";
  Json doc = collapse_to_json(cert);
  doc["schema"] = "chromatic.collapse/1";
  r.artifacts.push_back({"collapse.json", dump_canonical(doc)});
  return r;
}

std::vector<std::string> fixture_names() {
  return {"stage-relation", "right-unit", "sigma-n",  "etale-tower", "hkr-shape",   "ppower-sums",
          "bar-oracle",     "rational-thh", "collapse", "splitting", "conjecture", "integrality"};
}

std::vector<FixtureResult> run_fixtures(const RunConfig& cfg, const std::optional<std::set<std::string>>& only) {
  validate(cfg, false);
  const std::uint32_t p = cfg.p;
  const auto cache = open_cache(cfg);
  DerivationOptions dopt;
  dopt.cache = cache ? &*cache : nullptr;
  const std::string P = std::to_string(p);

  using Check = std::function<std::string()>;  // throws or returns a failure message; "" passes
  std::map<std::string, Check> checks;

  checks["stage-relation"] = [&]() -> std::string {
    const auto st = derive_presentation(p, 1, 2, 1, dopt);
    bool w1 = false;
    for (const auto& id : st.identifications)
      if (id.generator == "w1" && id.value == "v1") w1 = true;
    if (!w1) return "w1 = v1 not concluded";
    const auto& s = st.stages.at(0);
    const auto& P0 = st.presentation;
    if (!(s.lhs == P0.parse("t1^" + P + "*v1 + w2")) || !(s.rhs == P0.parse("t1*v1^" + P)))
      return "stage 1 reads " + s.lhs.to_string() + " = " + s.rhs.to_string();
    return "";
  };
  checks["right-unit"] = [&]() -> std::string {
    const auto st = derive_presentation(p, 1, 2, 1, dopt);
    const auto w2 = solve_for(st.stages.at(0).relation, "w2");
    if (!(w2 == st.presentation.parse("t1*v1^" + P + " - t1^" + P + "*v1"))) return "w2 = " + w2.to_string();
    const auto rep = kahler_check(st, 1);
    const std::string want = "dw2 = " + pow_name("v1", p) + "*dt1";
    if (rep.inverse != want) return "differential identity reads " + rep.inverse.value_or("(none)");
    return "";
  };
  checks["sigma-n"] = [&]() -> std::string {
    for (auto [n, m] : {std::pair{1, 2}, std::pair{1, 1}, std::pair{2, 1}}) {
      const auto st = derive_presentation(p, n, n, m, dopt);
      const auto cmp = compare_presentations(st.presentation, sigma_n_presentation(p, n, m));
      if (!cmp.equal) return "n=" + std::to_string(n) + ", m=" + std::to_string(m) + ": " + cmp.mismatches.front();
    }
    return "";
  };
  checks["etale-tower"] = [&]() -> std::string {
    for (int n = 1; n <= 3; ++n)
      for (int i = 1; i <= n; ++i)
        for (int m = 1; m <= 2; ++m) {
          const auto st = derive_presentation(p, i, n, m, dopt);
          for (int s = 1; s <= m; ++s) {
            const auto rep = kahler_check(st, s);
            if (!rep.etale)
              return "(i,n,m)=(" + std::to_string(i) + "," + std::to_string(n) + "," + std::to_string(m) +
                     ") stage " + std::to_string(s) + ": " + rep.unit_certificate;
          }
          if (st.presentation.module_basis().size() != static_cast<std::size_t>(ipow(p, i * m)))
            return "basis size mismatch";
        }
    return "";
  };
  checks["hkr-shape"] = [&]() -> std::string {
    auto ext = [&](int i, int n, int m) {
      const auto st = derive_presentation(p, i, n, m, dopt);
      std::vector<EtaleReport> certs;
      for (int s = 1; s <= m; ++s) certs.push_back(kahler_check(st, s));
      std::vector<std::string> smooth;
      for (int k = i + 1; k <= n; ++k) smooth.push_back("w" + std::to_string(k));
      std::vector<std::string> out;
      for (const auto& e : hh_hkr(st.presentation, smooth, certs).exterior)
        out.push_back(e.name + "@" + std::to_string(e.internal_degree));
      return out;
    };
    if (ext(1, 2, 2) != std::vector<std::string>{"dw2@" + std::to_string(vdeg(p, 2))}) return "K(1)_*E(2) shape";
    if (ext(1, 3, 1) != std::vector<std::string>{"dw2@" + std::to_string(vdeg(p, 2)), "dw3@" + std::to_string(vdeg(p, 3))})
      return "K(1)_*E(3) shape";
    if (!ext(2, 2, 1).empty()) return "K(2)_*E(2) should have no exterior part";
    const auto st = derive_presentation(p, 2, 2, 1, dopt);
    const auto ans = hh_hkr(st.presentation, {}, {kahler_check(st, 1)});
    for (const auto& [key, r] : ans.table(3, 0, 2 * vdeg(p, 2)).ranks)
      if (key.first > 0) return "K(2)_*E(2) has classes in positive homological degree";
    try {
      hh_hkr(st.presentation, {}, {});
      return "missing certificate was accepted";
    } catch (const MathError&) {
    }
    return "";
  };
  checks["ppower-sums"] = [&]() -> std::string {
    const auto sw = ppower_sweep(p, 8, 2, 4);
    if (!sw.counterexamples.empty()) return sw.counterexamples.front();
    return "";
  };
  checks["bar-oracle"] = [&]() -> std::string {
    // F_p[t]/(t^p - t) and F_p[t]/(t^p - t + 1) from stage presentations
    for (auto [n, values] : {std::pair{1, std::map<std::string, long long>{{"v1", 1}}},
                             std::pair{2, std::map<std::string, long long>{{"v1", 1}, {"w2", 1}}}}) {
      const auto st = derive_presentation(p, 1, n, 1, dopt);
      const auto sp = specialize(st.presentation, values);
      const FiniteAlgebra<PrimeField> A(sp.algebra);
      const int smax = affordable_smax(A.dim(), 4, cfg.max_columns);
      BarOptions bo;
      bo.max_columns = cfg.max_columns;
      const auto bar = hh_bar(A, smax, 0, 0, bo);
      const auto hkr = hh_hkr(sp.algebra, {}, certify_all(sp.algebra)).table(smax, 0, 0);
      if (bar.rank(0, 0) != p) return "HH_0 has rank " + std::to_string(bar.rank(0, 0));
      if (!compare_methods(bar, hkr).empty()) return "bar and hkr disagree for n=" + std::to_string(n);
    }
    QPresentation dual(make_ring(0, {{"x", 2}}));
    dual.add_relation(dual.generator("x", 2));
    const FiniteAlgebra<Rationals> A(dual);
    const auto bar = hh_bar(A, 4, 0, 10);
    const auto frozen = table_from_json(Json::parse(kDualNumbersBar));
    if (!compare_methods(bar, frozen).empty()) return "Q[x]/(x^2) differs from the recorded table";
    return "";
  };
  checks["rational-thh"] = [&]() -> std::string {
    for (int n = 1; n <= 3; ++n) {
      const auto E = rational_en(p, n);
      const int width = 3 * vdeg(p, n);
      const auto hkr = hh_hkr(E, names_of(E)).table(n, 0, width);
      const auto kos = hh_koszul(koszul_generators(E), n, 0, width);
      if (!compare_methods(hkr, kos).empty()) return "n=" + std::to_string(n) + ": koszul and hkr disagree";
      if (hkr.rank(1, vdeg(p, 1)) == 0) return "dv1 missing";
    }
    return "";
  };
  checks["collapse"] = [&]() -> std::string {
    for (int n = 1; n <= 3; ++n)
      for (int i = 0; i <= n; ++i)
        if (!bokstedt_collapse_check(ki_thh_page(p, n, i)).collapses)
          return "K(" + std::to_string(i) + ")_*THH(E(" + std::to_string(n) + ")) not certified";
    return "";
  };
  checks["splitting"] = [&]() -> std::string { return e2_splitting_check(p).passed ? "" : "splitting check failed"; };
  checks["conjecture"] = [&]() -> std::string {
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i <= n; ++i)
        if (!conjecture_check(p, n, i).consistent)
          return "n=" + std::to_string(n) + ", i=" + std::to_string(i) + " inconsistent";
    const auto v = conjecture_check(p, 1, 0);
    if (v.conjectured.degrees != std::vector<std::int64_t>{0, 2 * static_cast<std::int64_t>(p) - 1})
      return "n = 1 anchor degrees differ";
    return "";
  };
  checks["integrality"] = [&]() -> std::string {
    const int order = static_cast<int>(ipow(p, 2));
    const auto law = cached_universal_law(p, order, LogScheme::hazewinkel, cache ? &*cache : nullptr);
    const auto rep = check_integrality(law, p, 2 * (order - 1));
    if (!rep.integral) return rep.offenders.empty() ? "denominator found" : rep.offenders.front();
    return "";
  };

  std::vector<FixtureResult> out;
  for (const auto& name : fixture_names()) {
    if (only && !only->count(name)) continue;
    FixtureResult fr;
    fr.name = name;
    const auto t0 = Clock::now();
    try {
      const auto msg = checks.at(name)();
      fr.passed = msg.empty();
      fr.detail = fr.passed ? "ok" : msg;
    } catch (const std::exception& e) {
      fr.passed = false;
      fr.detail = std::string("error: ") + e.what();
    }
    fr.seconds = since(t0);
    out.push_back(std::move(fr));
  }
  return out;
}

RunResult run_reproduce(const RunConfig& cfg, const std::optional<std::set<std::string>>& only) {
  if (only)
    for (const auto& name : *only) {
      const auto all = fixture_names();
      if (std::find(all.begin(), all.end(), name) == all.end())
        throw PreconditionError("unknown fixture '" + name + "'");
    }
  RunResult r;
  r.command = "reproduce";
  r.config = config_to_json(cfg);
  if (only) r.config["only"] = std::vector<std::string>(only->begin(), only->end());
  const auto results = run_fixtures(cfg, only);
  Json doc;
  doc["schema"] = kReportSchema;
  doc["p"] = cfg.p;
  Json rows = Json::array();
  bool ok = true;
  for (const auto& f : results) {
    rows.push_back(Json{{"name", f.name}, {"passed", f.passed}, {"detail", f.detail}});
    r.verdicts[f.name] = f.passed ? "pass" : "fail";
    r.timings[f.name] = f.seconds;
    ok = ok && f.passed;
  }
  doc["fixtures"] = std::move(rows);
  doc["passed"] = ok;
  r.ok = ok;
  r.artifacts.push_back({"report.json", dump_canonical(doc)});
  return r;
}

Json make_manifest(const RunResult& r) {
  Json m;
  m["schema"] = kManifestSchema;
  m["tool"] = "chromatic";
  m["version"] = kToolVersion;
  m["command"] = r.command;
  m["config"] = r.config;
  Json outs = Json::array();
  for (const auto& a : r.artifacts)
    outs.push_back(Json{{"name", a.name}, {"sha256", sha256_hex(a.content)}, {"bytes", a.content.size()}});
  m["outputs"] = std::move(outs);
  m["verdicts"] = r.verdicts;
  m["ok"] = r.ok;
  return m;
}

void write_run(const std::string& dir, const RunResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& bytes) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + (fs::path(dir) / name).string());
    f << bytes;
  };
  for (const auto& a : r.artifacts) put(a.name, a.content);
  put("manifest.json", dump_canonical(make_manifest(r)));
  Json t;
  t["command"] = r.command;
  t["seconds"] = r.timings;
  put("timings.json", dump_canonical(t));
}

}  // namespace chromatic
