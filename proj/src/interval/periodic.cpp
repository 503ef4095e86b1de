#include <algorithm>

#include "chaoskit/budget.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/interval.hpp"

namespace chaoskit::interval {
namespace {

std::size_t prime_period(const PLMap& f, const Rational& x, std::size_t n) {
  Rational y = x;
  for (std::size_t d = 1; d <= n; ++d) {
    y = pl_eval(f, y);
    if (y == x) return d;
  }
  return n;  // unreachable for a genuine solution of f^n(x) = x
}

// Solutions of g(x) = x for a PL map g (here g = f^n), clipped to window.
void diagonal_hits(const PLMap& g, const Interval& window, std::vector<Rational>& points,
                   std::vector<Interval>& segments) {
  const auto& xs = g.breakpoints();
  const auto& ys = g.values();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i + 1] < window.lo || window.hi < xs[i]) continue;
    const Rational d0 = ys[i] - xs[i];
    const Rational d1 = ys[i + 1] - xs[i + 1];
    if (d0 == 0 && d1 == 0) {
      Interval seg(std::max(xs[i], window.lo), std::min(xs[i + 1], window.hi));
      if (!segments.empty() && segments.back().hi == seg.lo)
        segments.back().hi = seg.hi;
      else
        segments.push_back(seg);
      continue;
    }
    if ((d0 > 0 && d1 > 0) || (d0 < 0 && d1 < 0)) continue;
    // d is linear on the piece, so it vanishes exactly once here.
    Rational x = xs[i] + d0 * (xs[i + 1] - xs[i]) / (d0 - d1);
    if (window.contains(x)) points.push_back(x);
  }
}

}  // namespace

PeriodicPointSet periodic_points(const PLMap& f, std::size_t n, const Interval& window) {
  if (!f.domain().contains(window)) throw DomainError("window outside the domain");
  PLMap g = pl_power(f, n);
  std::vector<Rational> raw;
  PeriodicPointSet out;
  diagonal_hits(g, window, raw, out.segments);
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  for (auto& x : raw) {
    bool in_segment = std::any_of(out.segments.begin(), out.segments.end(),
                                  [&](const Interval& s) { return s.contains(x); });
    if (in_segment) continue;
    out.points.push_back({x, prime_period(f, x, n)});
  }
  return out;
}

PeriodicPointSet periodic_points(const PLMap& f, std::size_t n) {
  return periodic_points(f, n, f.domain());
}

DensityReport periodic_density_report(const PLMap& f, const Rational& eps, std::size_t n_max) {
  if (eps <= 0) throw ParameterError("density report: eps must be positive");
  if (n_max == 0) throw ParameterError("density report: n_max must be >= 1");
  if (n_max > budget().max_power)
    throw BudgetExceededError("density report: n_max " + std::to_string(n_max) + " exceeds the power budget");
  const Rational width = f.hi() - f.lo();
  Rational ratio = width / eps;
  mpz_class count_z;
  mpz_cdiv_q(count_z.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  if (count_z > 1 << 24) throw BudgetExceededError("density report: too many cells");
  const auto cells = static_cast<std::size_t>(count_z.get_ui());

  auto cell_of = [&](const Rational& x) {
    Rational r = (x - f.lo()) / eps;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return std::min(static_cast<std::size_t>(q.get_ui()), cells - 1);
  };

  std::vector<char> hit(cells, 0);
  std::size_t covered = 0;
  auto mark = [&](std::size_t c) {
    if (!hit[c]) {
      hit[c] = 1;
      ++covered;
    }
  };

  DensityReport rep;
  rep.cells = cells;
  PLMap g = f;
  for (std::size_t n = 1; n <= n_max && covered < cells; ++n) {
    if (n > 1) g = pl_compose(f, g);
    std::vector<Rational> points;
    std::vector<Interval> segments;
    diagonal_hits(g, f.domain(), points, segments);
    for (const auto& p : points) mark(cell_of(p));
    for (const auto& s : segments)
      for (std::size_t c = cell_of(s.lo); c <= cell_of(s.hi); ++c) mark(c);
    rep.periods_scanned = n;
  }
  rep.covered = covered;
  rep.covered_fraction = make_rational(static_cast<unsigned long>(covered), static_cast<unsigned long>(cells));
  IntervalSet gaps;
  for (std::size_t c = 0; c < cells; ++c) {
    if (hit[c]) continue;
    Rational lo = f.lo() + eps * static_cast<unsigned long>(c);
    Rational hi = std::min<Rational>(f.hi(), lo + eps);
    gaps.add(Interval(lo, hi));
  }
  rep.gaps = gaps.components();
  return rep;
}

}  // namespace chaoskit::interval
