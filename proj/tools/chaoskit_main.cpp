#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "chaoskit/cli.hpp"
#include "chaoskit/error.hpp"

namespace ck = chaoskit::cli;

int main(int argc, char** argv) {
  CLI::App app{"chaoskit: family classification, subshifts, PL interval maps and shadowing probes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool dump = false;
  app.add_option("--config", config_path, "INI run configuration");
  app.add_option("--out", out_dir, "directory for report.txt and CSV files");
  app.add_option("--seed", seed, "overrides [run] seed");
  app.add_flag("--dump-config", dump, "print the effective configuration and exit");

  const char* subs[][2] = {
      {"classify-set", "classify a window set against the families"},
      {"spacing", "spacing-shift battery for P = the configured set"},
      {"sturmian", "Sturmian factor, occurrence and periodicity battery"},
      {"interval-devaney", "hitting sets and family Devaney verdicts of a PL map"},
      {"shadow", "(F,G)-shadowing probe or witness replay"},
      {"p-chaos", "periodic density, shadowing pairs and chain graph"},
      {"report-all", "run the [run] analyses list"},
  };
  for (auto& s : subs) app.add_subcommand(s[0], s[1])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ck::RunConfig cfg = config_path.empty() ? ck::RunConfig{} : ck::load_config(config_path);
    if (seed) cfg.seed = *seed;
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub != "report-all") cfg.analyses = {ck::parse_analysis(sub)};
    if (dump) {
      std::cout << ck::dump_config(cfg);
      return 0;
    }
    const auto result = ck::run(cfg);
    std::cout << result.report;
    if (!out_dir.empty()) ck::write_outputs(result, out_dir);
    return 0;
  } catch (const chaoskit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ck::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
