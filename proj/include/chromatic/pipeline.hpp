#pragma once

// Subcommand pipelines shared by the command-line tool, the tests and the
// Python module.  Every run yields named artifacts plus a manifest; the
// manifest holds content hashes and verdicts but no clock readings, so
// identical configurations give identical bytes.  Wall times go to a
// separate timings document.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chromatic/fgl.hpp"
#include "chromatic/serialize.hpp"

namespace chromatic {

inline constexpr const char* kManifestSchema = "chromatic.manifest/1";
inline constexpr const char* kReportSchema = "chromatic.reproduce/1";
inline constexpr const char* kToolVersion = "0.3.0";

enum class Emit { json, tex, csv };
Emit parse_emit(const std::string& s);
std::string emit_name(Emit e);

struct RunConfig {
  std::uint32_t p = 3;
  int i = 1, n = 2, m = 1;
  int trunc = 0;
  LogScheme scheme = LogScheme::hazewinkel;
  int s_max = 4;
  std::optional<std::pair<int, int>> window;
  Emit emit = Emit::json;
  std::string cache_dir;
  bool allow_large = false;
  std::size_t max_columns = 10'000;
};

/// Throws PreconditionError on an invalid configuration.
void validate(const RunConfig& cfg, bool needs_indices);
Json config_to_json(const RunConfig& cfg);
std::pair<int, int> parse_window(const std::string& text);  // "a..b"

struct Artifact {
  std::string name;
  std::string content;
};

struct RunResult {
  std::string command;
  Json config;
  std::vector<Artifact> artifacts;
  Json verdicts = Json::object();
  Json timings = Json::object();
  bool ok = true;
};

RunResult run_derive(const RunConfig& cfg);

struct HHRequest {
  Json algebra;  // presentation or derivation document
  std::string method = "hkr";
  std::vector<std::string> smooth;  // empty: base generators outside the ground
  bool smooth_given = false;
  std::map<std::string, long long> specialize;
};
RunResult run_hh(const RunConfig& cfg, const HHRequest& req);

/// i < 0 checks every 0 <= i <= n.
RunResult run_check_conjecture(const RunConfig& cfg, int i);
RunResult run_check_splitting(const RunConfig& cfg);
RunResult run_check_collapse(const RunConfig& cfg, const Json& page);

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

std::vector<std::string> fixture_names();
/// Runs the bundled fixtures at prime p; `only` restricts by name (an empty
/// set selects nothing).  Failures are recorded, never thrown.
std::vector<FixtureResult> run_fixtures(const RunConfig& cfg, const std::optional<std::set<std::string>>& only);
RunResult run_reproduce(const RunConfig& cfg, const std::optional<std::set<std::string>>& only);

Json make_manifest(const RunResult& r);
/// Writes artifacts, manifest.json and timings.json into dir.
void write_run(const std::string& dir, const RunResult& r);

}  // namespace chromatic
