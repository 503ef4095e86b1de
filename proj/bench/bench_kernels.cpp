// Serial reference vs OpenMP path for each parallel kernel. Prints one line
// per kernel with the best-of-N wall time of both paths and checks that they
// agree.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <CLI11.hpp>
#include "chaoskit/interval.hpp"
#include "chaoskit/shadowing.hpp"
#include "chaoskit/subshift.hpp"

using namespace chaoskit;

namespace {

double best_of(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

template <class Result>
void compare(const char* name, int reps, const std::function<Result(Exec)>& kernel,
             const std::function<bool(const Result&, const Result&)>& same) {
  Result serial, parallel;
  const double ts = best_of(reps, [&] { serial = kernel(Exec::kSerial); });
  const double tp = best_of(reps, [&] { parallel = kernel(Exec::kParallel); });
  std::printf("%-24s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, ts, tp, ts / tp,
              same(serial, parallel) ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chaoskit kernel benchmark"};
  int reps = 3;
  app.add_option("--reps", reps, "repetitions per path (best time is reported)")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());

  const auto tent = interval::PLMap::builtin("tent");
  const auto s_map = interval::PLMap::builtin("S");

  compare<shadowing::ChainGraph>(
      "chain_graph", reps, [&](Exec e) { return shadowing::chain_graph(s_map, 0.01, 1e-3, e); },
      [](const auto& a, const auto& b) { return a.out == b.out; });

  const auto graph = shadowing::chain_graph(s_map, 0.01, 1e-3);
  compare<std::optional<std::size_t>>(
      "chain_mixing_exponent", reps, [&](Exec e) { return shadowing::chain_mixing_exponent(graph, 64, e); },
      [](const auto& a, const auto& b) { return a == b; });

  shadowing::IntervalSystem ex(interval::PLMap::builtin("example211"));
  shadowing::ProbeParams pp;
  const auto orbit = shadowing::probe_trial_orbit(ex, pp, 0, 1);
  compare<shadowing::TraceReport>(
      "best_tracer", reps,
      [&](Exec e) { return shadowing::best_tracer(ex, orbit, pp.eps, pp.mesh, pp.objective, pp.g_params, e); },
      [](const auto& a, const auto& b) { return a.tracer == b.tracer && a.trace_set == b.trace_set; });

  interval::DevaneyParams dp;
  dp.u_grid = interval::default_grid(tent, 16);
  compare<interval::DevaneyReport>(
      "devaney_report", reps, [&](Exec e) { return interval::devaney_report(tent, dp, e); },
      [](const auto& a, const auto& b) {
        if (a.transitivity.size() != b.transitivity.size()) return false;
        for (std::size_t i = 0; i < a.transitivity.size(); ++i)
          if (a.transitivity[i].set != b.transitivity[i].set) return false;
        return a.dense_periodic == b.dense_periodic;
      });

  const auto p = setfam::generate_window_set("complement(powers(2))", 256);
  setfam::FamilyParams fp;
  compare<subshift::TransitivityReport>(
      "fs_transitivity_report", reps,
      [&](Exec e) { return subshift::fs_transitivity_report(subshift::SubshiftOracle::spacing(p), 5, 64, fp, e); },
      [](const auto& a, const auto& b) {
        if (a.pairs.size() != b.pairs.size()) return false;
        for (std::size_t i = 0; i < a.pairs.size(); ++i)
          if (a.pairs[i].gaps != b.pairs[i].gaps) return false;
        return true;
      });
  return 0;
}
