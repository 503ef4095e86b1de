#include <algorithm>
#include <cmath>

#include "chaoskit/budget.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/interval.hpp"

namespace chaoskit::interval {
namespace {

void check_horizon(std::int64_t n) {
  if (n < 1) throw ParameterError("hitting set horizon must be >= 1");
  if (static_cast<std::size_t>(n) > budget().max_iterations)
    throw BudgetExceededError("hitting set horizon " + std::to_string(n) + " exceeds budget " +
                              std::to_string(budget().max_iterations));
}

}  // namespace

std::vector<Interval> image_orbit(const PLMap& f, const Interval& u, std::int64_t n) {
  check_horizon(n);
  std::vector<Interval> out{u};
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 1; k <= n; ++k) out.push_back(pl_image(f, out.back()));
  return out;
}

HittingSet sensitivity_hitting_set(const PLMap& f, const Interval& u, const Rational& delta,
                                   std::int64_t n) {
  if (u.degenerate()) throw ParameterError("sensitivity: U must be non-degenerate");
  if (delta <= 0) throw ParameterError("sensitivity: delta must be positive");
  auto orbit = image_orbit(f, u, n);
  HittingSet h{HittingSet::Kind::kSensitivity, setfam::WindowSet(n + 1), false};
  for (std::int64_t k = 1; k <= n; ++k)
    if (orbit[static_cast<std::size_t>(k)].diameter() > delta) h.set.insert(k);
  return h;
}

HittingSet transitivity_hitting_set(const PLMap& f, const Interval& u, const Interval& v,
                                    std::int64_t n, bool strict) {
  if (u.degenerate() || v.degenerate())
    throw ParameterError("transitivity: U and V must be non-degenerate");
  if (!f.domain().contains(v)) throw DomainError("V outside the domain");
  auto orbit = image_orbit(f, u, n);
  HittingSet h{HittingSet::Kind::kTransitivity, setfam::WindowSet(n + 1), false};
  for (std::int64_t k = 1; k <= n; ++k)
    if (intersects(orbit[static_cast<std::size_t>(k)], v, strict)) h.set.insert(k);
  return h;
}

std::optional<std::int64_t> leo_check(const PLMap& f, const Interval& u, std::int64_t n) {
  auto orbit = image_orbit(f, u, n);
  const Interval whole = f.domain();
  std::optional<std::int64_t> first;
  for (std::int64_t k = n; k >= 1; --k) {
    if (!(orbit[static_cast<std::size_t>(k)] == whole)) break;
    first = k;
  }
  return first;
}

std::string hitting_set_csv(const HittingSet& h) {
  std::string out = "n,member\n";
  for (std::int64_t k = 1; k < h.set.horizon(); ++k)
    out += std::to_string(k) + (h.set.contains(k) ? ",1\n" : ",0\n");
  return out;
}

SampledMap::SampledMap(std::function<double(double)> f, double lo, double hi, double mesh,
                       double lipschitz)
    : f_(std::move(f)), lo_(lo), hi_(hi), mesh_(mesh), lipschitz_(lipschitz) {
  if (!(lo < hi)) throw ParameterError("sampled map: empty domain");
  if (!(mesh > 0)) throw ParameterError("sampled map: mesh must be positive");
  if (!(lipschitz >= 0)) throw ParameterError("sampled map: Lipschitz bound must be non-negative");
}

SampledMap SampledMap::from_pl(const PLMap& f, double mesh) {
  double lip = 0;
  for (std::size_t i = 0; i < f.pieces(); ++i) lip = std::max(lip, std::fabs(to_double(f.slope(i))));
  return SampledMap([f](double x) { return to_double(pl_eval(f, from_double(x))); }, to_double(f.lo()),
                    to_double(f.hi()), mesh, lip);
}

double SampledMap::eval(double x) const {
  if (x < lo_ || x > hi_) throw DomainError("sampled map: point outside the domain");
  return f_(x);
}

SampledMap::Image SampledMap::image(double a, double b) const {
  a = std::clamp(a, lo_, hi_);
  b = std::clamp(b, lo_, hi_);
  if (b < a) std::swap(a, b);
  double ya = f_(a), yb = f_(b);
  Image im{std::min(ya, yb), std::max(ya, yb), lipschitz_ * mesh_ / 2};
  const auto first = static_cast<std::int64_t>(std::ceil((a - lo_) / mesh_));
  for (std::int64_t k = first;; ++k) {
    double x = lo_ + static_cast<double>(k) * mesh_;
    if (x >= b) break;
    if (x <= a) continue;
    double y = f_(x);
    im.lo = std::min(im.lo, y);
    im.hi = std::max(im.hi, y);
  }
  return im;
}

HittingSet sensitivity_hitting_set(const SampledMap& f, double u_lo, double u_hi, double delta,
                                   std::int64_t n) {
  check_horizon(n);
  HittingSet h{HittingSet::Kind::kSensitivity, setfam::WindowSet(n + 1), true};
  double a = u_lo, b = u_hi;
  for (std::int64_t k = 1; k <= n; ++k) {
    auto im = f.image(a, b);
    a = im.lo;
    b = im.hi;
    if (b - a > delta) h.set.insert(k);
  }
  return h;
}

HittingSet transitivity_hitting_set(const SampledMap& f, double u_lo, double u_hi, double v_lo,
                                    double v_hi, std::int64_t n) {
  check_horizon(n);
  HittingSet h{HittingSet::Kind::kTransitivity, setfam::WindowSet(n + 1), true};
  double a = u_lo, b = u_hi;
  for (std::int64_t k = 1; k <= n; ++k) {
    auto im = f.image(a, b);
    a = im.lo;
    b = im.hi;
    if (std::max(a, v_lo) <= std::min(b, v_hi)) h.set.insert(k);
  }
  return h;
}

}  // namespace chaoskit::interval
