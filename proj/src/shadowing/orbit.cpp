#include <algorithm>
#include <cmath>

#include "chaoskit/error.hpp"
#include "chaoskit/shadowing.hpp"

namespace chaoskit::shadowing {

setfam::WindowSet recompute_valid_set(const System& sys, const std::vector<double>& points,
                                      double delta) {
  if (points.empty()) throw ParameterError("pseudo-orbit has no points");
  const auto n = static_cast<std::int64_t>(points.size()) - 1;
  setfam::WindowSet valid(std::max<std::int64_t>(n, 1));
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (sys.distance(sys.apply(points[k]), points[k + 1]) < delta + kSlack) valid.insert(i);
  }
  return valid;
}

PseudoOrbit make_pseudo_orbit(const System& sys, double x0, double delta, const setfam::WindowSet& a,
                              const OrbitOptions& options, std::uint64_t seed,
                              const std::vector<double>& prefix) {
  if (!(delta > 0)) throw ParameterError("delta must be positive");
  const std::int64_t n = a.horizon();
  if (n < 1) throw ParameterError("orbit horizon must be at least 1");
  std::mt19937_64 rng(seed);
  PseudoOrbit orbit;
  orbit.delta = delta;
  orbit.a_set = a;
  orbit.points.reserve(static_cast<std::size_t>(n) + 1);
  orbit.points.push_back(prefix.empty() ? x0 : prefix.front());
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (k + 1 < prefix.size()) {
      orbit.points.push_back(prefix[k + 1]);
      continue;
    }
    const double fx = sys.apply(orbit.points[k]);
    double next;
    if (a.contains(i)) {
      next = options.perturbation == Perturbation::kZero ? fx : sys.perturb(fx, delta, rng);
    } else {
      switch (options.off_a) {
        case OffAScheme::kRestart: next = sys.sample(rng); break;
        case OffAScheme::kBounded: next = sys.perturb(fx, 10 * delta, rng); break;
        case OffAScheme::kAdversarial:
          next = sys.sample_in(options.target_lo, options.target_hi, rng);
          break;
        default: next = fx;
      }
    }
    orbit.points.push_back(next);
  }
  orbit.valid_set = recompute_valid_set(sys, orbit.points, delta);
  return orbit;
}

setfam::WindowSet trace_indices(const System& sys, const std::vector<double>& tracer_points,
                                const std::vector<double>& orbit, double eps) {
  if (tracer_points.size() != orbit.size())
    throw HorizonMismatchError("tracer and orbit lengths differ");
  setfam::WindowSet b(static_cast<std::int64_t>(orbit.size()));
  for (std::size_t i = 0; i < orbit.size(); ++i)
    if (sys.distance(tracer_points[i], orbit[i]) < eps + kSlack) b.insert(static_cast<std::int64_t>(i));
  return b;
}

TraceReport trace_set(const System& sys, const Rational& y, const PseudoOrbit& orbit, double eps,
                      const setfam::FamilyParams& params) {
  params.validate();
  TraceReport r;
  r.tracer = y;
  r.tracer_value = to_double(y);
  r.eps = eps;
  r.trace_set = trace_indices(sys, sys.tracer_orbit(y, orbit.points.size() - 1), orbit.points, eps);
  r.verdict = setfam::classify(r.trace_set, params);
  return r;
}

std::vector<Rational> tracer_candidates(const System& sys, const PseudoOrbit& orbit,
                                        const Rational& mesh) {
  std::vector<Rational> c = sys.grid(mesh);
  c.push_back(from_double(orbit.points.front()));
  if (auto p = sys.pullback(orbit.points)) c.push_back(*p);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

namespace {

// Larger is better.
bool better(const TraceReport& a, const TraceReport& b, Objective objective) {
  switch (objective) {
    case Objective::kMaxCardinality: return a.trace_set.size() > b.trace_set.size();
    case Objective::kMinMaxGap: {
      // The trailing gap counts here, otherwise {0} would beat every full window.
      auto gap = [](const TraceReport& r) {
        return r.trace_set.empty() ? INT64_MAX : setfam::max_gap(r.trace_set, setfam::TailPolicy::kStrict);
      };
      const auto ga = gap(a), gb = gap(b);
      if (ga != gb) return ga < gb;
      return a.trace_set.size() > b.trace_set.size();
    }
    case Objective::kMaxLowerDensity: return a.verdict.lower_density > b.verdict.lower_density;
  }
  return false;
}

struct Scan {
  std::vector<TraceReport> reports;
  std::vector<std::uint8_t> hit;
};

Scan scan_candidates(const System& sys, const PseudoOrbit& orbit, double eps,
                     const std::vector<Rational>& cands, const setfam::FamilyParams& params,
                     const std::vector<Target>* targets, Exec exec) {
  Scan s;
  s.reports.resize(cands.size());
  s.hit.assign(cands.size(), 0);
  for_each_index(cands.size(), exec, [&](std::size_t i) {
    s.reports[i] = trace_set(sys, cands[i], orbit, eps, params);
    if (targets) {
      bool ok = true;
      for (Target t : *targets) ok = ok && meets(s.reports[i].trace_set, s.reports[i].verdict, t);
      s.hit[i] = ok ? 1 : 0;
    }
  });
  return s;
}

std::size_t pick_best(const Scan& s, Objective objective) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.reports.size(); ++i)
    if (better(s.reports[i], s.reports[best], objective)) best = i;
  return best;
}

}  // namespace

TraceReport best_tracer(const System& sys, const PseudoOrbit& orbit, double eps, const Rational& mesh,
                        Objective objective, const setfam::FamilyParams& params, Exec exec) {
  params.validate();
  const auto cands = tracer_candidates(sys, orbit, mesh);
  Scan s = scan_candidates(sys, orbit, eps, cands, params, nullptr, exec);
  return s.reports[pick_best(s, objective)];
}

const char* target_name(Target t) {
  switch (t) {
    case Target::kFull: return "full";
    case Target::kSyndetic: return "syndetic";
    case Target::kThick: return "thick";
    case Target::kThicklySyndetic: return "thickly_syndetic";
    case Target::kPiecewiseSyndetic: return "piecewise_syndetic";
    case Target::kCofinite: return "cofinite";
    case Target::kPositiveLowerDensity: return "positive_lower_density";
  }
  return "?";
}

Target parse_target(const std::string& text) {
  for (Target t : {Target::kFull, Target::kSyndetic, Target::kThick, Target::kThicklySyndetic,
                   Target::kPiecewiseSyndetic, Target::kCofinite, Target::kPositiveLowerDensity})
    if (text == target_name(t)) return t;
  if (text == "ts") return Target::kThicklySyndetic;
  if (text == "ps") return Target::kPiecewiseSyndetic;
  throw ParseError("unknown target family: " + text);
}

bool meets(const setfam::WindowSet& b, const setfam::FamilyVerdict& v, Target t) {
  switch (t) {
    case Target::kFull: return b.size() == b.horizon();
    case Target::kSyndetic: return v.syndetic;
    case Target::kThick: return v.thick;
    case Target::kThicklySyndetic: return v.thickly_syndetic;
    case Target::kPiecewiseSyndetic: return v.piecewise_syndetic;
    case Target::kCofinite: return v.cofinite;
    case Target::kPositiveLowerDensity: return v.lower_density.count > 0;
  }
  return false;
}

const char* generator_name(AGenerator g) {
  switch (g) {
    case AGenerator::kFull: return "full";
    case AGenerator::kDensityOne: return "density_one";
    case AGenerator::kEvens: return "evens";
    case AGenerator::kRandom: return "random";
  }
  return "?";
}

AGenerator parse_generator(const std::string& text) {
  for (AGenerator g : {AGenerator::kFull, AGenerator::kDensityOne, AGenerator::kEvens, AGenerator::kRandom})
    if (text == generator_name(g)) return g;
  throw ParseError("unknown A generator: " + text);
}

setfam::WindowSet generate_a(AGenerator g, std::int64_t horizon, std::mt19937_64& rng) {
  if (horizon < 1) throw ParameterError("horizon must be at least 1");
  setfam::WindowSet a(horizon);
  switch (g) {
    case AGenerator::kFull: return setfam::WindowSet::full(horizon);
    case AGenerator::kDensityOne:
      a = setfam::WindowSet::full(horizon);
      for (std::int64_t k = 0; k * k < horizon; ++k) a.erase(k * k);
      return a;
    case AGenerator::kEvens:
      for (std::int64_t i = 0; i < horizon; i += 2) a.insert(i);
      return a;
    case AGenerator::kRandom:
      for (std::int64_t i = 0; i < horizon; ++i)
        if (rng() >> 63) a.insert(i);
      return a;
  }
  return a;
}

PseudoOrbit probe_trial_orbit(const System& sys, const ProbeParams& params, std::size_t delta_index,
                              std::size_t trial, bool* hub_kick, std::uint64_t* trial_seed) {
  if (delta_index >= params.delta_ladder.size()) throw ParameterError("delta index out of range");
  const double delta = params.delta_ladder[delta_index];
  const std::uint64_t seed =
      splitmix64(splitmix64(params.seed) ^ splitmix64((delta_index << 32) + trial + 1));
  std::mt19937_64 rng(seed);
  const auto a = generate_a(params.f_gen, params.horizon, rng);
  const double x0 = sys.sample(rng);
  const std::uint64_t orbit_seed = rng();
  std::vector<double> prefix;
  bool kicked = false;
  if (params.hub_kicks && trial % 2 == 1)
    if (auto p = sys.hub_kick_prefix(delta, trial / 2)) {
      prefix = std::move(*p);
      kicked = true;
    }
  if (hub_kick) *hub_kick = kicked;
  if (trial_seed) *trial_seed = seed;
  return make_pseudo_orbit(sys, x0, delta, a, params.orbit, orbit_seed, prefix);
}

TrialResult evaluate_orbit(const System& sys, const ProbeParams& params, PseudoOrbit orbit, Exec exec) {
  params.g_params.validate();
  TrialResult r;
  r.delta = orbit.delta;
  const auto cands = tracer_candidates(sys, orbit, params.mesh);
  Scan s = scan_candidates(sys, orbit, params.eps, cands, params.g_params, &params.targets, exec);
  auto first = std::find(s.hit.begin(), s.hit.end(), 1);
  if (first != s.hit.end()) {
    r.pass = true;
    r.tracer = s.reports[static_cast<std::size_t>(first - s.hit.begin())];
  } else {
    r.tracer = s.reports[pick_best(s, params.objective)];
  }
  r.orbit = std::move(orbit);
  return r;
}

}  // namespace chaoskit::shadowing
