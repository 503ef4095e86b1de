#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "chaoskit/error.hpp"
#include "chaoskit/shadowing.hpp"

namespace chaoskit::shadowing {

const char* verdict_name(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::kPass: return "pass";
    case ProbeVerdict::kFalsified: return "falsified";
    case ProbeVerdict::kUndetermined: return "undetermined";
  }
  return "?";
}

ProbeReport fg_shadowing_probe(const System& sys, const ProbeParams& params, Exec exec) {
  if (params.delta_ladder.empty()) throw ParameterError("delta ladder is empty");
  for (std::size_t d = 0; d < params.delta_ladder.size(); ++d) {
    if (!(params.delta_ladder[d] > 0)) throw ParameterError("delta must be positive");
    if (d > 0 && !(params.delta_ladder[d] < params.delta_ladder[d - 1]))
      throw ParameterError("delta ladder must be strictly descending");
  }
  if (!(params.eps > 0)) throw ParameterError("eps must be positive");
  if (params.trials == 0) throw ParameterError("trials must be positive");
  if (params.targets.empty()) throw ParameterError("no target family given");

  const std::size_t levels = params.delta_ladder.size();
  ProbeReport report;
  report.trials.resize(levels * params.trials);
  // Trials run one after another; each tracer scan is parallel internally.
  for (std::size_t d = 0; d < levels; ++d) {
    for (std::size_t t = 0; t < params.trials; ++t) {
      bool kicked = false;
      std::uint64_t seed = 0;
      auto orbit = probe_trial_orbit(sys, params, d, t, &kicked, &seed);
      TrialResult r = evaluate_orbit(sys, params, std::move(orbit), exec);
      r.trial = t;
      r.seed = seed;
      r.hub_kick = kicked;
      report.trials[d * params.trials + t] = std::move(r);
    }
  }

  report.pass_at_delta.assign(levels, true);
  std::vector<bool> fails_everywhere(params.trials, true);
  for (std::size_t d = 0; d < levels; ++d)
    for (std::size_t t = 0; t < params.trials; ++t) {
      const bool ok = report.trials[d * params.trials + t].pass;
      if (!ok) report.pass_at_delta[d] = false;
      if (ok) fails_everywhere[t] = false;
    }
  bool falsified = false;
  for (bool f : fails_everywhere) falsified = falsified || f;

  if (report.pass_at_delta.back())
    report.verdict = ProbeVerdict::kPass;
  else if (falsified)
    report.verdict = ProbeVerdict::kFalsified;
  else
    report.verdict = ProbeVerdict::kUndetermined;

  for (std::size_t t = 0; t < params.trials; ++t) {
    const auto& r = report.trials[(levels - 1) * params.trials + t];
    if (!r.pass) {
      report.witness = r;
      break;
    }
  }
  return report;
}

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string tags_of(const TraceReport& r) {
  std::string out;
  for (Target t : {Target::kFull, Target::kSyndetic, Target::kThick, Target::kThicklySyndetic,
                   Target::kPiecewiseSyndetic, Target::kCofinite, Target::kPositiveLowerDensity}) {
    if (!meets(r.trace_set, r.verdict, t)) continue;
    if (!out.empty()) out += ';';
    out += target_name(t);
  }
  return out.empty() ? "none" : out;
}

}  // namespace

std::string probe_csv(const ProbeReport& report) {
  std::ostringstream os;
  os << "delta,trial,valid_count,best_tracer,trace_cardinality,max_gap,tags,verdict\n";
  for (const auto& r : report.trials) {
    os << fmt17(r.delta) << ',' << r.trial << ',' << r.orbit.valid_set.size() << ','
       << fmt17(r.tracer.tracer_value) << ',' << r.tracer.trace_set.size() << ','
       << r.tracer.verdict.max_gap << ',' << tags_of(r.tracer) << ',' << (r.pass ? "pass" : "fail")
       << '\n';
  }
  return os.str();
}

std::string format_points(const std::vector<double>& points) {
  std::string out;
  for (double x : points) {
    out += fmt17(x);
    out += '\n';
  }
  return out;
}

std::vector<double> parse_points(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    char* end = nullptr;
    const double x = std::strtod(line.c_str(), &end);
    while (end && (*end == ' ' || *end == '\t')) ++end;
    if (end == line.c_str() || (end && *end != '\0'))
      throw ParseError("line " + std::to_string(lineno) + ": not a number: " + line);
    out.push_back(x);
  }
  if (out.empty()) throw ParseError("no points");
  return out;
}

bool replay_witness(const System& sys, const ProbeParams& params, const TrialResult& witness,
                    Exec exec) {
  PseudoOrbit orbit = witness.orbit;
  orbit.valid_set = recompute_valid_set(sys, orbit.points, orbit.delta);
  return !evaluate_orbit(sys, params, std::move(orbit), exec).pass;
}

}  // namespace chaoskit::shadowing
