// chromatic: derive presentations, compute Hochschild tables, run the
// degree checks and the fixture suite.
//
// Exit codes: 0 pass, 1 computation or verdict failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chromatic/errors.hpp"
#include "chromatic/pipeline.hpp"

using namespace chromatic;

namespace {

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void report_error(const char* kind, const std::string& msg) {
  Json e;
  e["error"] = kind;
  e["message"] = msg;
  std::cerr << e.dump() << "\n";
}

int finish(const RunResult& r, const std::string& out_dir) {
  if (!out_dir.empty()) {
    write_run(out_dir, r);
    std::cout << dump_canonical(make_manifest(r));
  } else {
    for (const auto& a : r.artifacts) std::cout << a.content;
  }
  return r.ok ? 0 : 1;
}

std::map<std::string, long long> parse_values(const std::string& text) {
  std::map<std::string, long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw PreconditionError("specialization must look like v1=1,w2=1");
    try {
      out[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw PreconditionError("bad value in '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for Morava K-homology of Johnson-Wilson theories and their THH"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig cfg;
  std::string scheme = "hazewinkel", emit = "json", window, cache, out_dir;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime")->capture_default_str();
    sub->add_option("--cache", cache, "coefficient cache directory (default: $CHROMATIC_CACHE_DIR)");
    sub->add_option("--out", out_dir, "write artifacts, manifest.json and timings.json here");
    sub->add_option("--emit", emit, "json | tex | csv")->capture_default_str();
  };

  auto* derive = app.add_subcommand("derive", "presentation of K(i)_*E(n) through stage m");
  common(derive);
  derive->add_option("--i", cfg.i)->capture_default_str();
  derive->add_option("--n", cfg.n)->capture_default_str();
  derive->add_option("--m", cfg.m)->capture_default_str();
  derive->add_option("--trunc", cfg.trunc, "highest x-exponent compared (0: automatic)");
  derive->add_option("--scheme", scheme, "hazewinkel | araki")->capture_default_str();
  derive->add_flag("--allow-large", cfg.allow_large, "lift the n <= 3, m <= 2 guard");

  std::string algebra, method = "hkr", smooth, spec_values;
  auto* hh = app.add_subcommand("hh", "Hochschild homology table");
  common(hh);
  hh->add_option("--algebra", algebra, "presentation or derivation JSON")->required();
  hh->add_option("--method", method, "hkr | koszul | bar")->capture_default_str();
  hh->add_option("--smax", cfg.s_max)->capture_default_str();
  hh->add_option("--window", window, "internal degrees a..b");
  hh->add_option("--smooth", smooth, "comma-separated smooth generators (hkr)");
  hh->add_option("--specialize", spec_values, "e.g. v1=1,w2=1 (collapses the grading)");
  hh->add_option("--max-columns", cfg.max_columns, "bar complex slice budget")->capture_default_str();

  auto* check = app.add_subcommand("check", "degree bookkeeping checks");
  check->require_subcommand(1);
  int level = -1;
  auto* conj = check->add_subcommand("conjecture", "cube decomposition against K(i)_*THH(E(n))");
  common(conj);
  conj->add_option("--n", cfg.n)->capture_default_str();
  conj->add_option("--i", level, "single level (default: all)");
  auto* split_cmd = check->add_subcommand("e2-splitting", "THH(E(2)) splitting at K(0), K(1), K(2)");
  common(split_cmd);
  std::string page;
  int page_i = 0;
  auto* collapse = check->add_subcommand("collapse", "Bokstedt spectral sequence collapse for degree reasons");
  common(collapse);
  collapse->add_option("--page", page, "E2 page JSON");
  collapse->add_option("--n", cfg.n)->capture_default_str();
  collapse->add_option("--i", page_i)->capture_default_str();

  std::string only;
  auto* repro = app.add_subcommand("reproduce", "run the bundled fixture suite");
  common(repro);
  repro->add_option("--only", only, "comma-separated fixture names");
  bool list = false;
  repro->add_flag("--list", list, "print fixture names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cache.empty())
      if (const char* env = std::getenv("CHROMATIC_CACHE_DIR")) cache = env;
    cfg.cache_dir = cache;
    cfg.emit = parse_emit(emit);
    cfg.scheme = parse_scheme(scheme);
    if (!window.empty()) cfg.window = parse_window(window);

    if (*derive) return finish(run_derive(cfg), out_dir);
    if (*hh) {
      HHRequest req;
      req.algebra = read_json(algebra);
      req.method = method;
      if (hh->count("--smooth")) {
        req.smooth = split(smooth);
        req.smooth_given = true;
      }
      if (!spec_values.empty()) req.specialize = parse_values(spec_values);
      return finish(run_hh(cfg, req), out_dir);
    }
    if (*conj) return finish(run_check_conjecture(cfg, level), out_dir);
    if (*split_cmd) return finish(run_check_splitting(cfg), out_dir);
    if (*collapse) {
      cfg.i = page_i;
      return finish(run_check_collapse(cfg, page.empty() ? Json(nullptr) : read_json(page)), out_dir);
    }
    if (*repro) {
      if (list) {
        for (const auto& n : fixture_names()) std::cout << n << "\n";
        return 0;
      }
      std::optional<std::set<std::string>> filter;
      if (repro->count("--only")) {
        const auto names = split(only);
        filter = std::set<std::string>(names.begin(), names.end());
      }
      const auto r = run_reproduce(cfg, filter);
      write_run(out_dir.empty() ? "chromatic-reproduce" : out_dir, r);
      const auto report = Json::parse(r.artifacts.front().content);
      for (const auto& f : report.at("fixtures"))
        std::cout << (f.at("passed").get<bool>() ? "PASS " : "FAIL ") << f.at("name").get<std::string>() << "  "
                  << f.at("detail").get<std::string>() << "\n";
      return r.ok ? 0 : 1;
    }
  } catch (const PreconditionError& e) {
    report_error("usage", e.what());
    return 2;
  } catch (const FormatError& e) {
    report_error("format", e.what());
    return 2;
  } catch (const BudgetExceeded& e) {
    report_error("budget", e.what());
    return 1;
  } catch (const MathError& e) {
    report_error("math", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 1;
  }
  return 2;
}
