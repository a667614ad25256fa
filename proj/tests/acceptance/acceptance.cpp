// Acceptance driver: one PASS/FAIL line per criterion, each with its own
// wall-clock limit.  Exit status is the number of failures.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "chromatic/books.hpp"
#include "chromatic/errors.hpp"
#include "chromatic/hochschild.hpp"
#include "chromatic/pipeline.hpp"

using namespace chromatic;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string artifact(const RunResult& r, const std::string& name) {
  for (const auto& a : r.artifacts)
    if (a.name == name) return a.content;
  throw std::runtime_error("missing artifact " + name);
}

std::vector<EtaleReport> certify(const FpPresentation& P) {
  std::vector<EtaleReport> out;
  for (std::size_t k = 0; k < P.rules().size(); ++k)
    for (std::size_t g = 0; g < P.ring()->size(); ++g)
      if (P.rules()[k].lead[g] != 0) out.push_back(etale_certificate(P, k, P.ring()->generator(g).name));
  return out;
}

int vdeg(std::uint32_t p, int k) { return 2 * (static_cast<int>(ipow(p, k)) - 1); }

// Each check returns "" on success or a reason.
std::string relation_derivation() {
  RunConfig cfg;
  cfg.emit = Emit::tex;
  const auto tex = artifact(run_derive(cfg), "derivation.tex");
  if (tex.find("t_{1}^{3} v_{1} + w_{2} = t_{1} v_{1}^{3}") == std::string::npos) return "relation missing:\n" + tex;
  const auto st = derive_presentation(3, 1, 2, 1);
  if (st.stages.size() != 1) return "expected exactly one stage relation";
  if (!(st.stages[0].relation == st.presentation.parse("t1^3*v1 + w2 - t1*v1^3"))) return "relation differs";
  bool w1 = false;
  for (const auto& id : st.identifications) w1 = w1 || (id.generator == "w1" && id.value == "v1");
  return w1 ? "" : "w1 = v1 not concluded";
}

std::string right_unit_identity() {
  const auto st = derive_presentation(3, 1, 2, 1);
  const auto w2 = solve_for(st.stages.at(0).relation, "w2");
  if (!(w2 == st.presentation.parse("v1^3*t1 - v1*t1^3"))) return "w2 = " + w2.to_string();
  const auto rep = kahler_check(st, 1);
  if (rep.inverse != std::optional<std::string>("dw2 = v1^3*dt1")) return "kahler_check: " + rep.inverse.value_or("-");
  return "";
}

std::string sigma_n_match() {
  for (auto [p, n, m] : {std::tuple{3u, 1, 2}, std::tuple{5u, 1, 1}, std::tuple{3u, 2, 1}}) {
    const auto cmp = compare_presentations(derive_presentation(p, n, n, m).presentation, sigma_n_presentation(p, n, m));
    if (!cmp.equal) return "(p,n,m)=(" + std::to_string(p) + "," + std::to_string(n) + "," + std::to_string(m) + ")";
  }
  return "";
}

std::string etale_stages() {
  for (std::uint32_t p : {3u, 5u})
    for (int n = 1; n <= 3; ++n)
      for (int i = 1; i <= n; ++i)
        for (int m = 1; m <= 2; ++m) {
          const auto st = derive_presentation(p, i, n, m);
          const std::string tag = "(p,i,n,m)=(" + std::to_string(p) + "," + std::to_string(i) + "," +
                                  std::to_string(n) + "," + std::to_string(m) + ")";
          for (int r = 1; r <= m; ++r) {
            const auto rep = kahler_check(st, r);
            if (!rep.etale) return tag + " stage " + std::to_string(r) + " not etale";
            const auto& c = rep.solving_coefficient;
            if (c.size() != 1) return tag + ": solving coefficient " + c.to_string();
            const auto& mono = c.leading().mono;
            const auto vi = st.presentation.ring()->index_of(st.v_name());
            for (std::size_t g = 0; g < st.presentation.ring()->size(); ++g)
              if (g != vi && mono[g] != 0) return tag + ": solving coefficient " + c.to_string();
          }
          if (st.presentation.module_basis().size() != static_cast<std::size_t>(ipow(p, i * m)))
            return tag + ": basis size";
        }
  return "";
}

std::string ppower_sums() {
  for (std::uint32_t p : {3u, 5u}) {
    const auto sw = ppower_sweep(p, 8, 2, 4);
    if (sw.checked == 0) return "nothing checked";
    if (!sw.counterexamples.empty()) return sw.counterexamples.front();
  }
  return "";
}

std::string hochschild_cross_validation(const fs::path& fixtures) {
  const auto cubic = specialize(derive_presentation(3, 1, 1, 1).presentation, {{"v1", 1}}).algebra;
  const FiniteAlgebra<PrimeField> A(cubic);
  const auto bar = hh_bar(A, 4, 0, 0);
  if (bar.ranks != std::map<std::pair<int, int>, std::uint64_t>{{{0, 0}, 3}}) return "F_3[t]/(t^3-t) table differs";
  if (!compare_methods(bar, hh_hkr(cubic, {}, certify(cubic)).table(4, 0, 0)).empty()) return "bar vs hkr (cubic)";

  const auto two = specialize(derive_presentation(3, 1, 2, 2).presentation, {{"v1", 1}, {"w2", 1}}).algebra;
  const auto bar2 = hh_bar(FiniteAlgebra<PrimeField>(two), 2, 0, 0);
  if (!compare_methods(bar2, hh_hkr(two, {}, certify(two)).table(2, 0, 0)).empty()) return "bar vs hkr (two stages)";

  QPresentation dual(make_ring(0, {{"x", 2}}));
  dual.add_relation(dual.generator("x", 2));
  const auto recorded = table_from_json(Json::parse(slurp(fixtures / "dual_numbers_bar.json")));
  for (int run = 0; run < 2; ++run)
    if (!compare_methods(hh_bar(FiniteAlgebra<Rationals>(dual), 4, 0, 10), recorded).empty())
      return "Q[x]/(x^2) differs from the recorded fixture";
  return "";
}

std::string rational_shape() {
  const std::uint32_t p = 3;
  for (int n = 1; n <= 3; ++n) {
    std::vector<Generator> gens;
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) {
      gens.push_back({"v" + std::to_string(k), vdeg(p, k), k == n ? GeneratorKind::laurent : GeneratorKind::polynomial});
      names.push_back(gens.back().name);
    }
    const QPresentation E(make_ring(0, gens), {}, {names.back()});
    const auto ans = hh_hkr(E, names);
    for (std::size_t k = 0; k < ans.exterior.size(); ++k)
      if (ans.exterior[k].internal_degree != vdeg(p, static_cast<int>(k) + 1)) return "exterior degree";
    const int width = 3 * vdeg(p, n);
    if (!compare_methods(ans.table(n, 0, width), hh_koszul(koszul_generators(E), n, 0, width)).empty())
      return "n=" + std::to_string(n);
  }
  return "";
}

std::string collapse_low_columns() {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int n = 1; n <= 3; ++n)
      for (int i = 0; i <= n; ++i)
        if (!bokstedt_collapse_check(ki_thh_page(p, n, i)).collapses)
          return "K(" + std::to_string(i) + ")_*THH(E(" + std::to_string(n) + ")) at p=" + std::to_string(p);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    E2Page page;
    for (int g = 0, k = 1 + static_cast<int>(rng() % 6); g < k; ++g)
      page.generators.push_back({"x" + std::to_string(g), static_cast<int>(rng() % 2), static_cast<int>(rng() % 64)});
    if (rng() % 2) page.base_polynomial.push_back(2 * (1 + static_cast<int>(rng() % 20)));
    if (rng() % 2) page.base_laurent.push_back(2 * (1 + static_cast<int>(rng() % 20)));
    if (!bokstedt_collapse_check(page).collapses) return "random page " + page_to_json(page).dump();
  }
  return "";
}

std::string splitting() {
  for (std::uint32_t p : {3u, 5u}) {
    const auto c = e2_splitting_check(p);
    const std::int64_t P = p;
    const std::vector<std::int64_t> want{0, 2 * P - 1, 2 * P * P - 1, 2 * P * P + 2 * P - 2};
    if (!c.passed) return "p=" + std::to_string(p);
    if (c.k0_degrees != want || !c.levels.at(0).comparison.exact) return "K(0) multiset at p=" + std::to_string(p);
    if (!c.levels.at(1).comparison.consistent) return "K(1) at p=" + std::to_string(p);
  }
  return "";
}

std::string conjecture() {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i <= n; ++i)
        if (!conjecture_check(p, n, i).consistent)
          return "p=" + std::to_string(p) + " n=" + std::to_string(n) + " i=" + std::to_string(i);
    const std::int64_t P = p;
    if (conjecture_check(p, 1, 0).conjectured.degrees != std::vector<std::int64_t>{0, 2 * P - 1})
      return "n = 1 anchor at p=" + std::to_string(p);
  }
  return "";
}

std::string integrality() {
  const auto law = universal_law(3, 9);
  const auto rep = check_integrality(law, 3, 2 * (9 - 1));
  if (rep.coefficients == 0 || rep.max_degree < 16) return "too little inspected";
  return rep.integral ? "" : rep.offenders.front();
}

std::string determinism() {
  RunConfig cfg;
  const auto base = fs::temp_directory_path() / "chromatic-acceptance";
  fs::remove_all(base);
  write_run((base / "a").string(), run_reproduce(cfg, std::nullopt));
  write_run((base / "b").string(), run_reproduce(cfg, std::nullopt));
  const auto a = slurp(base / "a" / "manifest.json"), b = slurp(base / "b" / "manifest.json");
  fs::remove_all(base);
  if (a.empty()) return "no manifest written";
  if (a != b) return "manifests differ";
  if (!Json::parse(a).at("ok").get<bool>()) return "fixture suite failed";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path fixtures = argc > 1 ? fs::path(argv[1]) : fs::path(CHROMATIC_FIXTURE_DIR);
  struct Criterion {
    int id;
    const char* what;
    double limit;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "relation derivation", 5, relation_derivation},
      {2, "right-unit identity and dw2", 5, right_unit_identity},
      {3, "Sigma(n) match", 60, sigma_n_match},
      {4, "etale stages and basis sizes", 10, etale_stages},
      {5, "p-power sums", 5, ppower_sums},
      {6, "Hochschild cross-validation", 120, [&] { return hochschild_cross_validation(fixtures); }},
      {7, "rational THH shape", 30, rational_shape},
      {8, "Bokstedt collapse", 1, collapse_low_columns},
      {9, "THH(E(2)) splitting", 1, splitting},
      {10, "cube conjecture consistency", 1, conjecture},
      {11, "law integrality", 60, integrality},
      {12, "determinism", 120, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.run();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && secs > c.limit) why = "took " + std::to_string(secs) + " s";
    std::cout << (why.empty() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.what << std::fixed
              << std::setprecision(3) << " (" << secs << " s / " << std::setprecision(0) << c.limit << " s)";
    if (!why.empty()) std::cout << " - " << why;
    std::cout << "\n";
    failures += !why.empty();
  }
  return failures;
}
