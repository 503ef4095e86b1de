#include <algorithm>
#include <cmath>
#include <limits>

#include "chaoskit/error.hpp"
#include "chaoskit/shadowing.hpp"

namespace chaoskit::shadowing {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::optional<Rational> System::pullback(const std::vector<double>&) const { return std::nullopt; }

std::optional<std::vector<double>> System::hub_kick_prefix(double, std::size_t) const {
  return std::nullopt;
}

namespace {

bool fits_int64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

}  // namespace

IntervalSystem::IntervalSystem(interval::PLMap f) : f_(std::move(f)), name_("pl") {
  lo_ = to_double(f_.lo());
  hi_ = to_double(f_.hi());
  for (const auto& x : f_.breakpoints()) xs_.push_back(to_double(x));
  for (const auto& y : f_.values()) ys_.push_back(to_double(y));
  integral_ = true;
  for (std::size_t j = 0; j < f_.pieces(); ++j) {
    Rational s = f_.slope(j);
    Rational c = f_.values()[j] - s * f_.breakpoints()[j];
    slopes_.push_back(to_double(s));
    if (s.get_den() != 1 || c.get_den() != 1 || !fits_int64(s.get_num()) || !fits_int64(c.get_num()) ||
        abs(s.get_num()) > 1 << 20 || abs(c.get_num()) > 1 << 20) {
      integral_ = false;
    } else {
      int_slope_.push_back(s.get_num().get_si());
      int_icept_.push_back(c.get_num().get_si());
    }
  }
  for (const auto& x : f_.breakpoints())
    if (!fits_int64(x.get_num()) || !fits_int64(x.get_den()) || abs(x.get_num()) > 1L << 30 ||
        x.get_den() > 1L << 30)
      integral_ = false;
  for (const auto& p : interval::periodic_points(f_, 1).points) hubs_.push_back(p.point);
}

std::size_t IntervalSystem::piece_of(double x) const {
  auto it = std::lower_bound(xs_.begin() + 1, xs_.end(), x);
  if (it == xs_.end()) --it;
  return static_cast<std::size_t>(it - xs_.begin()) - 1;
}

double IntervalSystem::apply(double x) const {
  x = std::clamp(x, lo_, hi_);
  const std::size_t j = piece_of(x);
  return std::clamp(ys_[j] + slopes_[j] * (x - xs_[j]), lo_, hi_);
}

double IntervalSystem::distance(double a, double b) const { return std::fabs(a - b); }

double IntervalSystem::perturb(double fx, double radius, std::mt19937_64& rng) const {
  const double u = 2.0 * uniform01(rng) - 1.0;
  return std::clamp(fx + u * radius * (1.0 - 0x1p-20), lo_, hi_);
}

double IntervalSystem::sample(std::mt19937_64& rng) const { return lo_ + (hi_ - lo_) * uniform01(rng); }

double IntervalSystem::sample_in(double lo, double hi, std::mt19937_64& rng) const {
  lo = std::clamp(lo, lo_, hi_);
  hi = std::clamp(hi, lo_, hi_);
  if (hi < lo) return sample(rng);
  return lo + (hi - lo) * uniform01(rng);
}

std::vector<Rational> IntervalSystem::grid(const Rational& mesh) const {
  if (mesh <= 0) throw ParameterError("grid mesh must be positive");
  Rational steps = (f_.hi() - f_.lo()) / mesh;
  mpz_class k_max;
  mpz_fdiv_q(k_max.get_mpz_t(), steps.get_num_mpz_t(), steps.get_den_mpz_t());
  if (k_max > 1 << 26) throw BudgetExceededError("tracer grid too fine");
  std::vector<Rational> out;
  const long count = k_max.get_si();
  out.reserve(static_cast<std::size_t>(count) + 2);
  for (long k = 0; k <= count; ++k) out.push_back(f_.lo() + mesh * k);
  if (out.back() != f_.hi()) out.push_back(f_.hi());
  return out;
}

std::vector<double> IntervalSystem::tracer_orbit(const Rational& y, std::size_t n) const {
  std::vector<double> out;
  out.reserve(n + 1);
  const mpz_class& num = y.get_num();
  const mpz_class& den = y.get_den();
  if (integral_ && fits_int64(num) && fits_int64(den) && den <= mpz_class(1L << 40) &&
      abs(num) <= mpz_class(1L << 40)) {
    // p/m stays on the same denominator under integer slopes and intercepts.
    std::int64_t p = num.get_si();
    const std::int64_t m = den.get_si();
    const auto& bx = f_.breakpoints();
    std::vector<std::int64_t> bn, bd;
    for (const auto& x : bx) {
      bn.push_back(x.get_num().get_si());
      bd.push_back(x.get_den().get_si());
    }
    out.push_back(static_cast<double>(p) / static_cast<double>(m));
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = 0;
      while (j + 2 < bx.size() &&
             static_cast<__int128>(p) * bd[j + 1] > static_cast<__int128>(bn[j + 1]) * m)
        ++j;
      p = int_slope_[j] * p + int_icept_[j] * m;
      out.push_back(static_cast<double>(p) / static_cast<double>(m));
    }
    return out;
  }
  Rational x = y;
  out.push_back(x.get_d());
  for (std::size_t i = 0; i < n; ++i) {
    x = interval::pl_eval(f_, x);
    out.push_back(x.get_d());
  }
  return out;
}

std::optional<Rational> IntervalSystem::pullback(const std::vector<double>& points) const {
  if (points.empty()) return std::nullopt;
  const auto& bx = f_.breakpoints();
  const auto& by = f_.values();
  Rational y = from_double(std::clamp(points.back(), lo_, hi_));
  for (std::size_t i = points.size() - 1; i-- > 0;) {
    const std::size_t j = piece_of(points[i]);
    Rational s = f_.slope(j);
    Rational pre;
    if (s == 0) {
      pre = from_double(std::clamp(points[i], lo_, hi_));
    } else {
      pre = bx[j] + (y - by[j]) / s;
      if (pre < bx[j]) pre = bx[j];
      if (pre > bx[j + 1]) pre = bx[j + 1];
    }
    y = pre;
  }
  return y;
}

std::optional<std::vector<double>> IntervalSystem::hub_kick_prefix(double delta,
                                                                   std::size_t which) const {
  if (hubs_.empty()) return std::nullopt;
  const Rational& hub = hubs_[which % hubs_.size()];
  const auto& bx = f_.breakpoints();
  const auto& by = f_.values();
  std::optional<Rational> best;
  for (std::size_t j = 0; j < f_.pieces(); ++j) {
    const Rational& y0 = by[j];
    const Rational& y1 = by[j + 1];
    if (y0 == y1 || hub < std::min(y0, y1) || hub > std::max(y0, y1)) continue;
    Rational pre = bx[j] + (hub - y0) * (bx[j + 1] - bx[j]) / (y1 - y0);
    if (pre == hub) continue;
    if (!best || abs(pre - hub) > abs(*best - hub) || (abs(pre - hub) == abs(*best - hub) && pre < *best))
      best = pre;
  }
  if (!best) return std::nullopt;
  const double h = to_double(hub);
  const double side = *best < hub ? -1.0 : 1.0;
  double kick = h - side * delta / 2;
  if (kick < lo_ || kick > hi_) kick = h + side * delta / 2;
  std::vector<double> prefix{to_double(*best)};
  const std::size_t dwell = 4 + which % 5;
  for (std::size_t k = 0; k <= dwell; ++k) prefix.push_back(h);
  prefix.push_back(kick);
  return prefix;
}

DiscreteSystem::DiscreteSystem(std::vector<std::size_t> table) : table_(std::move(table)) {
  if (table_.empty()) throw ParameterError("discrete system needs at least one point");
  for (auto t : table_)
    if (t >= table_.size()) throw ParameterError("discrete map leaves the space");
}

DiscreteSystem DiscreteSystem::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return DiscreteSystem(std::move(t));
}

double DiscreteSystem::apply(double x) const {
  auto i = static_cast<std::size_t>(std::llround(x));
  if (i >= table_.size()) throw DomainError("point outside the discrete space");
  return static_cast<double>(table_[i]);
}

double DiscreteSystem::perturb(double fx, double radius, std::mt19937_64& rng) const {
  // Under the discrete metric only fx itself is closer than any radius <= 1.
  if (radius > 1.0) return sample(rng);
  return fx;
}

double DiscreteSystem::sample(std::mt19937_64& rng) const {
  return static_cast<double>(rng() % table_.size());
}

double DiscreteSystem::sample_in(double lo, double hi, std::mt19937_64& rng) const {
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (static_cast<double>(i) >= lo && static_cast<double>(i) <= hi) inside.push_back(i);
  if (inside.empty()) return sample(rng);
  return static_cast<double>(inside[rng() % inside.size()]);
}

std::vector<Rational> DiscreteSystem::grid(const Rational&) const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < table_.size(); ++i) out.emplace_back(static_cast<unsigned long>(i));
  return out;
}

std::vector<double> DiscreteSystem::tracer_orbit(const Rational& y, std::size_t n) const {
  if (y.get_den() != 1 || y < 0 || y >= static_cast<unsigned long>(table_.size()))
    throw DomainError("tracer outside the discrete space");
  std::size_t x = y.get_num().get_ui();
  std::vector<double> out{static_cast<double>(x)};
  for (std::size_t i = 0; i < n; ++i) {
    x = table_[x];
    out.push_back(static_cast<double>(x));
  }
  return out;
}

}  // namespace chaoskit::shadowing
