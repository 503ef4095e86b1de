#pragma once

// δ-pseudo-orbits on index sets A, ε-trace sets B, tracer search, (F,G)
// shadowing probes, δ-chain graphs and P-chaos reports.
//
// Pseudo-orbits live in binary64. Tracer orbits are iterated exactly (PL maps
// in rational arithmetic) and rounded only for the distance test, because
// expanding maps such as the tent map collapse in floating point. Every
// strict metric comparison d < r is evaluated as d < r + kSlack.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chaoskit/interval.hpp"
#include "chaoskit/parallel.hpp"
#include "chaoskit/rational.hpp"
#include "chaoskit/setfam.hpp"

namespace chaoskit::shadowing {

inline constexpr double kSlack = 0x1p-40;

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double uniform01(std::mt19937_64& rng);
// Seed mixer used to derive independent per-trial streams.
std::uint64_t splitmix64(std::uint64_t x);

// A compact metric system the shadowing tools can drive.
class System {
 public:
  virtual ~System() = default;

  virtual std::string name() const = 0;
  virtual double diameter() const = 0;
  virtual double apply(double x) const = 0;
  virtual double distance(double a, double b) const = 0;

  // A point y with distance(fx, y) < radius, drawn from rng.
  virtual double perturb(double fx, double radius, std::mt19937_64& rng) const = 0;
  // Uniform point of the space.
  virtual double sample(std::mt19937_64& rng) const = 0;
  // Uniform point of [lo, hi] intersected with the space.
  virtual double sample_in(double lo, double hi, std::mt19937_64& rng) const = 0;

  // Tracer candidates at the given mesh, ascending.
  virtual std::vector<Rational> grid(const Rational& mesh) const = 0;
  // y, f(y), ..., f^n(y), computed exactly and rounded.
  virtual std::vector<double> tracer_orbit(const Rational& y, std::size_t n) const = 0;

  // Candidate obtained by pulling the last point back along the branches
  // visited by `points`. Absent when the system has no branch structure.
  virtual std::optional<Rational> pullback(const std::vector<double>& points) const;

  // Exact prefix x_0 .. x_k for a hub-kick trial: a preimage chain ending on
  // an isolated fixed point, a dwell there, then a kick of δ/2 to the side
  // opposite the arrival. Absent when the system has no isolated fixed point.
  virtual std::optional<std::vector<double>> hub_kick_prefix(double delta, std::size_t which) const;
};

class IntervalSystem : public System {
 public:
  explicit IntervalSystem(interval::PLMap f);

  const interval::PLMap& map() const { return f_; }
  std::string name() const override { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double diameter() const override { return hi_ - lo_; }
  double apply(double x) const override;
  double distance(double a, double b) const override;
  double perturb(double fx, double radius, std::mt19937_64& rng) const override;
  double sample(std::mt19937_64& rng) const override;
  double sample_in(double lo, double hi, std::mt19937_64& rng) const override;
  std::vector<Rational> grid(const Rational& mesh) const override;
  std::vector<double> tracer_orbit(const Rational& y, std::size_t n) const override;
  std::optional<Rational> pullback(const std::vector<double>& points) const override;
  std::optional<std::vector<double>> hub_kick_prefix(double delta, std::size_t which) const override;

  // Isolated fixed points, ascending.
  const std::vector<Rational>& hubs() const { return hubs_; }

 private:
  std::size_t piece_of(double x) const;

  interval::PLMap f_;
  std::string name_;
  double lo_;
  double hi_;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> slopes_;
  // Integer slope/intercept per piece when every piece has them; enables
  // an int64 orbit path for tracers with small denominators.
  bool integral_ = false;
  std::vector<std::int64_t> int_slope_;
  std::vector<std::int64_t> int_icept_;
  std::vector<Rational> hubs_;
};

// Finite space {0, ..., n-1} with the discrete metric and a self-map given
// as a table.
class DiscreteSystem : public System {
 public:
  explicit DiscreteSystem(std::vector<std::size_t> table);
  static DiscreteSystem identity(std::size_t n);

  std::string name() const override { return "discrete(" + std::to_string(table_.size()) + ")"; }
  double diameter() const override { return table_.size() > 1 ? 1.0 : 0.0; }
  double apply(double x) const override;
  double distance(double a, double b) const override { return a == b ? 0.0 : 1.0; }
  double perturb(double fx, double radius, std::mt19937_64& rng) const override;
  double sample(std::mt19937_64& rng) const override;
  double sample_in(double lo, double hi, std::mt19937_64& rng) const override;
  std::vector<Rational> grid(const Rational& mesh) const override;
  std::vector<double> tracer_orbit(const Rational& y, std::size_t n) const override;

 private:
  std::vector<std::size_t> table_;
};

enum class Perturbation { kZero, kUniform };
enum class OffAScheme { kRestart, kBounded, kAdversarial };

struct OrbitOptions {
  Perturbation perturbation = Perturbation::kUniform;
  OffAScheme off_a = OffAScheme::kRestart;
  double target_lo = 0;  // adversarial target region
  double target_hi = 0;
};

struct PseudoOrbit {
  std::vector<double> points;  // x_0 .. x_N
  double delta = 0;
  setfam::WindowSet a_set;      // requested A, horizon N
  setfam::WindowSet valid_set;  // {i < N : d(f(x_i), x_{i+1}) < δ}
};

setfam::WindowSet recompute_valid_set(const System& sys, const std::vector<double>& points,
                                      double delta);

// N = a.horizon(). Points of `prefix` (if any) are used verbatim for the
// first indices; the rest follow A and the options.
PseudoOrbit make_pseudo_orbit(const System& sys, double x0, double delta, const setfam::WindowSet& a,
                              const OrbitOptions& options, std::uint64_t seed,
                              const std::vector<double>& prefix = {});

struct TraceReport {
  Rational tracer;
  double tracer_value = 0;
  double eps = 0;
  setfam::WindowSet trace_set;  // horizon N + 1
  setfam::FamilyVerdict verdict;
};

setfam::WindowSet trace_indices(const System& sys, const std::vector<double>& tracer_points,
                                const std::vector<double>& orbit, double eps);
TraceReport trace_set(const System& sys, const Rational& y, const PseudoOrbit& orbit, double eps,
                      const setfam::FamilyParams& params = {});

enum class Objective { kMaxCardinality, kMinMaxGap, kMaxLowerDensity };

// Candidates: the grid at `mesh`, x_0 itself and the pull-back point.
std::vector<Rational> tracer_candidates(const System& sys, const PseudoOrbit& orbit,
                                        const Rational& mesh);

TraceReport best_tracer(const System& sys, const PseudoOrbit& orbit, double eps, const Rational& mesh,
                        Objective objective, const setfam::FamilyParams& params = {},
                        Exec exec = Exec::kParallel);

enum class Target {
  kFull,
  kSyndetic,
  kThick,
  kThicklySyndetic,
  kPiecewiseSyndetic,
  kCofinite,
  kPositiveLowerDensity
};
const char* target_name(Target t);
Target parse_target(const std::string& text);
bool meets(const setfam::WindowSet& b, const setfam::FamilyVerdict& v, Target t);

enum class AGenerator { kFull, kDensityOne, kEvens, kRandom };
const char* generator_name(AGenerator g);
AGenerator parse_generator(const std::string& text);
// density one: complement of the squares; random: Bernoulli(1/2).
setfam::WindowSet generate_a(AGenerator g, std::int64_t horizon, std::mt19937_64& rng);

struct ProbeParams {
  AGenerator f_gen = AGenerator::kFull;
  std::vector<Target> targets{Target::kFull};
  setfam::FamilyParams g_params;
  double eps = 0.05;
  std::vector<double> delta_ladder{1e-4};  // strictly descending
  std::size_t trials = 20;
  std::uint64_t seed = 42;
  std::int64_t horizon = 100;
  Rational mesh{1, 10000};
  Objective objective = Objective::kMaxCardinality;
  OrbitOptions orbit;
  bool hub_kicks = true;  // odd trials use hub-kick prefixes when available
};

struct TrialResult {
  double delta = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool hub_kick = false;
  PseudoOrbit orbit;
  TraceReport tracer;  // first candidate meeting the targets, else best by objective
  bool pass = false;
};

enum class ProbeVerdict { kPass, kFalsified, kUndetermined };
const char* verdict_name(ProbeVerdict v);

struct ProbeReport {
  ProbeVerdict verdict = ProbeVerdict::kUndetermined;
  std::vector<TrialResult> trials;  // ladder order, then trial order
  std::vector<bool> pass_at_delta;  // per ladder entry
  std::optional<TrialResult> witness;  // first failure at the smallest δ
};

// Builds the pseudo-orbit of one trial exactly as the probe does.
PseudoOrbit probe_trial_orbit(const System& sys, const ProbeParams& params, std::size_t delta_index,
                              std::size_t trial, bool* hub_kick = nullptr,
                              std::uint64_t* trial_seed = nullptr);

// Tracer search for one orbit against the probe's targets.
TrialResult evaluate_orbit(const System& sys, const ProbeParams& params, PseudoOrbit orbit,
                           Exec exec = Exec::kParallel);

ProbeReport fg_shadowing_probe(const System& sys, const ProbeParams& params,
                               Exec exec = Exec::kParallel);

// CSV: delta,trial,valid_count,best_tracer,trace_cardinality,max_gap,tags,verdict
std::string probe_csv(const ProbeReport& report);
// Plain point list, one %.17g value per line; parse_points inverts it exactly.
std::string format_points(const std::vector<double>& points);
std::vector<double> parse_points(const std::string& text);

// Re-runs the tracer search on a stored witness; true iff it fails again.
bool replay_witness(const System& sys, const ProbeParams& params, const TrialResult& witness,
                    Exec exec = Exec::kParallel);

struct ChainGraph {
  std::vector<double> grid;
  double delta = 0;
  double mesh = 0;
  // Successors of node i are the contiguous range [first, last]; empty when
  // first > last.
  std::vector<std::pair<std::size_t, std::size_t>> out;

  std::size_t size() const { return grid.size(); }
};

// MeshError unless δ > mesh.
ChainGraph chain_graph(const interval::PLMap& f, double delta, double mesh,
                       Exec exec = Exec::kParallel);

// Component id per node (Tarjan), ids in discovery order of roots.
std::vector<std::size_t> strongly_connected_components(const ChainGraph& g, std::size_t* count = nullptr);
bool chain_transitive_check(const ChainGraph& g);
// gcd of cycle lengths of a strongly connected graph; 0 if not strongly
// connected.
std::size_t chain_period(const ChainGraph& g);
// Least k <= n with every entry of the k-th boolean power set (and of the
// (k+1)-th), or absent.
std::optional<std::size_t> chain_mixing_exponent(const ChainGraph& g, std::size_t n,
                                                 Exec exec = Exec::kParallel);
bool chain_mixing_check(const ChainGraph& g, std::size_t n, Exec exec = Exec::kParallel);
std::vector<std::size_t> chain_recurrent_nodes(const ChainGraph& g);

struct PChaosParams {
  ProbeParams probe;
  std::vector<std::pair<AGenerator, std::vector<Target>>> pairs{
      {AGenerator::kFull, {Target::kFull}},
      {AGenerator::kRandom, {Target::kPiecewiseSyndetic}},
  };
  Rational density_eps{1, 32};
  std::size_t n_max = 12;
  double chain_delta = 0.01;
  double chain_mesh = 1e-3;
  std::size_t chain_steps = 64;
  interval::DevaneyParams devaney;
};

struct PairOutcome {
  AGenerator f_gen;
  std::vector<Target> targets;
  ProbeReport probe;
};

struct PChaosReport {
  std::string system;
  bool dense_periodic = false;
  std::vector<PairOutcome> pairs;
  bool shadowing = false;  // (full, full) probe passed
  bool p_chaotic = false;  // dense periodic points and shadowing
  bool chain_transitive = false;
  bool chain_mixing = false;
  std::optional<bool> fcf_devaney;  // PL systems only
  std::vector<std::string> notes;
};

PChaosReport p_chaos_report(const System& sys, const PChaosParams& params,
                            Exec exec = Exec::kParallel);

}  // namespace chaoskit::shadowing
