#pragma once

// Run configuration, orchestration and report/CSV emission behind the
// `chaoskit` command-line tool.
//
// Config files are INI (sections of key = value lines). Every key has a
// default, so an empty [run] section plus a [system] section is a valid run.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chaoskit/parallel.hpp"
#include "chaoskit/rational.hpp"
#include "chaoskit/setfam.hpp"

namespace chaoskit::cli {

enum class Analysis { kClassifySet, kSpacing, kSturmian, kIntervalDevaney, kShadow, kPChaos };
const char* analysis_name(Analysis a);  // subcommand spelling, e.g. "interval-devaney"
Analysis parse_analysis(const std::string& text);

enum class SystemKind { kSet, kSturmian, kPL, kSampled, kDiscrete };
const char* system_kind_name(SystemKind k);
SystemKind parse_system_kind(const std::string& text);

struct SystemSpec {
  SystemKind kind = SystemKind::kSet;
  // set: generator expression and window (P for the spacing analysis)
  std::string set_expr = "all";
  std::string members;
  std::int64_t horizon = 256;
  // sturmian
  std::string alpha = "golden";
  std::string ulp;
  std::size_t prefix = 10000;
  // pl / sampled: builtin name, or a literal "domain=a,b|x:y|x:y..."
  std::string map = "tent";
  Rational sample_mesh{1, 1000};
  // discrete: f(i) for i = 0..n-1
  std::vector<std::size_t> table{0, 1};

  bool operator==(const SystemSpec&) const = default;
};

struct SubshiftSettings {
  std::size_t max_len = 3;          // language depth for transitivity reports
  std::int64_t gap_horizon = 32;    // n in gap_set(u, v, n)
  std::int64_t k_max = 64;          // dense-periodic witness search bound
  std::size_t factor_len = 10;      // sturmian complexity table
  std::size_t occurrence_len = 8;   // sturmian occurrence gaps
  std::size_t periodicity_len = 6;
  std::size_t periodicity_k = 8;

  bool operator==(const SubshiftSettings&) const = default;
};

struct IntervalSettings {
  Rational delta{1, 2};
  std::int64_t horizon = 64;
  std::size_t grid = 8;
  Rational eps{1, 32};
  std::size_t n_max = 12;
  bool strict = false;
  setfam::FamilyParams family;  // initialised from the Devaney defaults

  IntervalSettings();
  bool operator==(const IntervalSettings&) const;
};

struct ShadowSettings {
  double eps = 0.05;
  std::vector<double> deltas{1e-4};
  std::size_t trials = 20;
  std::int64_t horizon = 100;
  Rational mesh{1, 10000};
  std::string generator = "full";
  std::vector<std::string> targets{"full"};
  std::string objective = "max_cardinality";
  std::string off_a = "restart";
  double target_lo = 0;  // adversarial off-A region
  double target_hi = 0;
  bool hub_kicks = true;
  std::string replay;  // witness point file to re-run instead of probing

  bool operator==(const ShadowSettings&) const = default;
};

struct PChaosSettings {
  double chain_delta = 0.01;
  double chain_mesh = 1e-3;
  std::size_t chain_steps = 64;
  Rational density_eps{1, 32};
  std::size_t n_max = 12;

  bool operator==(const PChaosSettings&) const = default;
};

struct RunConfig {
  std::vector<Analysis> analyses;
  std::uint64_t seed = 42;
  SystemSpec system;
  setfam::FamilyParams family;
  SubshiftSettings subshift;
  IntervalSettings interval;
  ShadowSettings shadow;
  PChaosSettings pchaos;

  bool operator==(const RunConfig&) const;
};

// ParseError on malformed input, unknown sections or unknown keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// Every key, in a fixed order; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& c);

// ParameterError when the analysis list is empty, a builtin is unknown, an
// analysis does not fit the system kind, or a horizon leaves the budget.
void validate(const RunConfig& c);

struct RunResult {
  std::string report;                          // human-readable
  std::map<std::string, std::string> files;    // CSV and point files by name
};

RunResult run(const RunConfig& c, Exec exec = Exec::kParallel);

// Writes report.txt and every file of `r` into `dir` (created if missing).
void write_outputs(const RunResult& r, const std::string& dir);

// Exit status for an exception escaping run(): 3 for budget exhaustion,
// 2 for every other library error.
int exit_code_for(const std::exception& e);

}  // namespace chaoskit::cli
