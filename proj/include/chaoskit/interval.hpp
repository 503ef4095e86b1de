#pragma once

// Exact piecewise-linear self-maps of a closed rational interval: evaluation,
// interval images, composition and powers, periodic points, and the hitting
// sets N_f(U, δ) and N_f(U, V).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chaoskit/parallel.hpp"
#include "chaoskit/rational.hpp"
#include "chaoskit/setfam.hpp"

namespace chaoskit::interval {

// Closed interval [lo, hi]; lo == hi is a point.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h);

  Rational diameter() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool degenerate() const { return lo == hi; }
  bool operator==(const Interval&) const = default;
};

// Closed-interval intersection test. With `strict`, contact at a single
// boundary point does not count.
bool intersects(const Interval& a, const Interval& b, bool strict = false);

std::string to_string(const Interval& j);

// Finite union of disjoint closed intervals kept in ascending order;
// overlapping or touching insertions are merged.
class IntervalSet {
 public:
  void add(const Interval& j);
  const std::vector<Interval>& components() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const;
  bool intersects(const Interval& j, bool strict = false) const;

 private:
  std::vector<Interval> parts_;
};

class PLMap {
 public:
  // Breakpoints xs strictly increasing (at least two); ys[i] = f(xs[i]); the
  // graph is the linear interpolation. ParameterError unless every value lies
  // in [xs.front(), xs.back()].
  PLMap(std::vector<Rational> xs, std::vector<Rational> ys);

  // "S", "example211", "tent", "identity".
  static PLMap builtin(const std::string& name);
  static std::vector<std::string> builtin_names();
  // "domain=a,b" then one "x:y" line per breakpoint.
  static PLMap parse(const std::string& text);
  std::string format() const;

  const Rational& lo() const { return xs_.front(); }
  const Rational& hi() const { return xs_.back(); }
  Interval domain() const { return {xs_.front(), xs_.back()}; }
  const std::vector<Rational>& breakpoints() const { return xs_; }
  const std::vector<Rational>& values() const { return ys_; }
  std::size_t pieces() const { return xs_.size() - 1; }
  Rational slope(std::size_t piece) const;
  // Index of a piece containing x (the left one at an interior breakpoint).
  std::size_t piece_of(const Rational& x) const;

  bool operator==(const PLMap&) const = default;

 private:
  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

// Exact value. DomainError outside the domain.
Rational pl_eval(const PLMap& f, const Rational& x);
Rational pl_iterate(const PLMap& f, Rational x, std::size_t n);

// Exact [min, max] of f over J. DomainError unless J lies in the domain.
Interval pl_image(const PLMap& f, const Interval& j);

// f ∘ g with collinear breakpoints removed. DomainError unless g maps into
// f's domain; BudgetExceededError past the breakpoint budget.
PLMap pl_compose(const PLMap& f, const PLMap& g);
// f^n for 1 <= n <= power budget.
PLMap pl_power(const PLMap& f, std::size_t n);

struct PeriodicPoint {
  Rational point;
  std::size_t prime_period = 0;
};

struct PeriodicPointSet {
  std::vector<PeriodicPoint> points;  // ascending, isolated solutions
  std::vector<Interval> segments;     // pieces of f^n lying on the diagonal
};

// Solutions of f^n(x) = x inside `window`.
PeriodicPointSet periodic_points(const PLMap& f, std::size_t n, const Interval& window);
PeriodicPointSet periodic_points(const PLMap& f, std::size_t n);

struct DensityReport {
  Rational covered_fraction;
  std::size_t cells = 0;
  std::size_t covered = 0;
  std::size_t periods_scanned = 0;  // stops early once every cell is covered
  std::vector<Interval> gaps;       // uncovered cells, adjacent ones merged
};

// Splits the domain into cells [a + jε, a + (j+1)ε) (the last one closed) and
// marks a cell covered when it contains a point of period <= n_max.
DensityReport periodic_density_report(const PLMap& f, const Rational& eps, std::size_t n_max);

struct HittingSet {
  enum class Kind { kSensitivity, kTransitivity, kLeo };
  Kind kind = Kind::kSensitivity;
  setfam::WindowSet set;  // indices in [1, N], horizon N + 1
  bool approximate = false;
};

// {n in [1, N] : diam f^n(U) > δ}.
HittingSet sensitivity_hitting_set(const PLMap& f, const Interval& u, const Rational& delta,
                                   std::int64_t n);
// {n in [1, N] : f^n(U) ∩ V ≠ ∅}.
HittingSet transitivity_hitting_set(const PLMap& f, const Interval& u, const Interval& v,
                                    std::int64_t n, bool strict = false);
// f^0(U), ..., f^N(U).
std::vector<Interval> image_orbit(const PLMap& f, const Interval& u, std::int64_t n);

// Least n* <= N with f^n(U) equal to the domain for every n in [n*, N].
std::optional<std::int64_t> leo_check(const PLMap& f, const Interval& u, std::int64_t n);

// CSV rows "n,member" for n = 1..N.
std::string hitting_set_csv(const HittingSet& h);

// Point-function fallback for maps without an exact form. Images of [a, b]
// are sampled on a uniform grid plus the endpoints; with Lipschitz constant
// L and grid step h the true image contains the sampled one and lies within
// L·h/2 of it on each side.
class SampledMap {
 public:
  SampledMap(std::function<double(double)> f, double lo, double hi, double mesh, double lipschitz);
  static SampledMap from_pl(const PLMap& f, double mesh);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mesh() const { return mesh_; }
  double eval(double x) const;

  struct Image {
    double lo;
    double hi;
    double error;  // one-sided bound
  };
  Image image(double a, double b) const;

 private:
  std::function<double(double)> f_;
  double lo_;
  double hi_;
  double mesh_;
  double lipschitz_;
};

// Sampled counterparts; results are flagged approximate.
HittingSet sensitivity_hitting_set(const SampledMap& f, double u_lo, double u_hi, double delta,
                                   std::int64_t n);
HittingSet transitivity_hitting_set(const SampledMap& f, double u_lo, double u_hi, double v_lo,
                                    double v_hi, std::int64_t n);

struct DevaneyParams {
  std::vector<Interval> u_grid;  // empty: default_grid(f, 8)
  std::vector<Interval> v_grid;  // empty: same as u_grid
  Rational delta{1, 2};
  std::int64_t horizon = 64;
  setfam::FamilyParams family;   // ground defaults to ℕ (index 0 is never observed)
  Rational eps{1, 32};
  std::size_t n_max = 12;
  bool strict = false;

  DevaneyParams();
};

// k intervals, one centred in each of k equal cells, half a cell wide.
std::vector<Interval> default_grid(const PLMap& f, std::size_t k);

enum class FamilyTag { kSyndetic, kThick, kThicklySyndetic, kCofinite };
const char* family_name(FamilyTag tag);  // "Fs", "Ft", "Fts", "Fcf"
bool has_tag(const setfam::FamilyVerdict& v, FamilyTag tag);

struct FamilyDevaney {
  FamilyTag tag;
  bool transitive = false;  // every N_f(U, V) carries the tag
  bool sensitive = false;   // every N_f(U, δ) carries the tag
  bool devaney = false;     // transitive ∧ sensitive ∧ dense periodic points
  bool anomaly = false;     // transitive ∧ dense periodic points but not sensitive
};

struct DevaneyReport {
  std::vector<Interval> u_grid;
  std::vector<Interval> v_grid;
  std::vector<HittingSet> sensitivity;              // per U
  std::vector<setfam::FamilyVerdict> sensitivity_verdicts;
  std::vector<HittingSet> transitivity;             // row-major (U, V)
  std::vector<setfam::FamilyVerdict> transitivity_verdicts;
  DensityReport density;
  bool dense_periodic = false;
  std::vector<FamilyDevaney> families;  // Fs, Ft, Fts, Fcf
  bool theorem_consistent = true;       // no anomaly flagged
  std::size_t fixed_point_count = 0;

  const FamilyDevaney& family(FamilyTag tag) const;
};

DevaneyReport devaney_report(const PLMap& f, const DevaneyParams& params,
                             Exec exec = Exec::kParallel);

}  // namespace chaoskit::interval
