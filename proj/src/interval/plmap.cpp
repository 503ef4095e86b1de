#include <algorithm>
#include <sstream>
#include <optional>

#include "chaoskit/budget.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/interval.hpp"

namespace chaoskit::interval {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw ParameterError("interval with lo > hi: [" + chaoskit::to_string(lo) + "," + chaoskit::to_string(hi) + "]");
}

bool intersects(const Interval& a, const Interval& b, bool strict) {
  const Rational& lo = a.lo < b.lo ? b.lo : a.lo;
  const Rational& hi = a.hi < b.hi ? a.hi : b.hi;
  if (!strict) return lo <= hi;
  if (lo < hi) return true;
  // A degenerate operand meets the other strictly only in its interior.
  if (a.degenerate() && !b.degenerate()) return b.lo < a.lo && a.lo < b.hi;
  if (b.degenerate() && !a.degenerate()) return a.lo < b.lo && b.lo < a.hi;
  return a.degenerate() && b.degenerate() && a.lo == b.lo;
}

std::string to_string(const Interval& j) {
  return "[" + chaoskit::to_string(j.lo) + "," + chaoskit::to_string(j.hi) + "]";
}

void IntervalSet::add(const Interval& j) {
  Interval merged = j;
  std::vector<Interval> out;
  bool placed = false;
  for (const auto& p : parts_) {
    if (p.hi < merged.lo) {
      out.push_back(p);
    } else if (merged.hi < p.lo) {
      if (!placed) {
        out.push_back(merged);
        placed = true;
      }
      out.push_back(p);
    } else {
      merged = Interval(std::min(p.lo, merged.lo), std::max(p.hi, merged.hi));
    }
  }
  if (!placed) out.push_back(merged);
  parts_ = std::move(out);
}

bool IntervalSet::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) { return p.contains(x); });
}

bool IntervalSet::intersects(const Interval& j, bool strict) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Interval& p) { return interval::intersects(p, j, strict); });
}

PLMap::PLMap(std::vector<Rational> xs, std::vector<Rational> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2) throw ParameterError("PL map needs at least two breakpoints");
  if (xs_.size() != ys_.size()) throw ParameterError("PL map: breakpoint and value counts differ");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i - 1] < xs_[i])) throw ParameterError("PL map: breakpoints must be strictly increasing");
  for (const auto& y : ys_)
    if (y < xs_.front() || y > xs_.back())
      throw ParameterError("PL map is not a self-map: value " + chaoskit::to_string(y) + " leaves the domain");
}

PLMap PLMap::builtin(const std::string& name) {
  auto q = [](long p, long d = 1) { return make_rational(p, d); };
  if (name == "S") return PLMap({q(-1), q(-1, 2), q(0), q(1)}, {q(0), q(1), q(0), q(-1)});
  if (name == "example211")
    return PLMap({q(0), q(1, 6), q(1, 3), q(2, 3), q(5, 6), q(1)},
                 {q(0), q(1, 2), q(0), q(1), q(1, 2), q(1)});
  if (name == "tent") return PLMap({q(0), q(1, 2), q(1)}, {q(0), q(1), q(0)});
  if (name == "identity") return PLMap({q(0), q(1)}, {q(0), q(1)});
  throw ParameterError("unknown builtin map: " + name);
}

std::vector<std::string> PLMap::builtin_names() { return {"S", "example211", "tent", "identity"}; }

PLMap PLMap::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<Interval> domain;
  std::vector<Rational> xs, ys;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!domain) {
      if (line.rfind("domain=", 0) != 0) throw ParseError("PL map text must start with domain=a,b");
      auto comma = line.find(',');
      if (comma == std::string::npos) throw ParseError("domain line needs two endpoints");
      domain = Interval(parse_rational(line.substr(7, comma - 7)), parse_rational(line.substr(comma + 1)));
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("breakpoint line must be x:y, got: " + line);
    xs.push_back(parse_rational(line.substr(0, colon)));
    ys.push_back(parse_rational(line.substr(colon + 1)));
  }
  if (!domain) throw ParseError("PL map text is empty");
  if (xs.empty() || xs.front() != domain->lo || xs.back() != domain->hi)
    throw ParseError("breakpoints must start and end at the domain endpoints");
  try {
    return PLMap(std::move(xs), std::move(ys));
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
}

std::string PLMap::format() const {
  std::string out = "domain=" + chaoskit::to_string(lo()) + "," + chaoskit::to_string(hi()) + "\n";
  for (std::size_t i = 0; i < xs_.size(); ++i)
    out += chaoskit::to_string(xs_[i]) + ":" + chaoskit::to_string(ys_[i]) + "\n";
  return out;
}

Rational PLMap::slope(std::size_t piece) const {
  return (ys_[piece + 1] - ys_[piece]) / (xs_[piece + 1] - xs_[piece]);
}

std::size_t PLMap::piece_of(const Rational& x) const {
  if (x < lo() || x > hi())
    throw DomainError("point " + chaoskit::to_string(x) + " outside " + to_string(domain()));
  auto it = std::lower_bound(xs_.begin() + 1, xs_.end(), x);
  return static_cast<std::size_t>(it - xs_.begin()) - 1;
}

Rational pl_eval(const PLMap& f, const Rational& x) {
  const std::size_t i = f.piece_of(x);
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  if (x == xs[i]) return ys[i];
  if (x == xs[i + 1]) return ys[i + 1];
  return ys[i] + (ys[i + 1] - ys[i]) * (x - xs[i]) / (xs[i + 1] - xs[i]);
}

Rational pl_iterate(const PLMap& f, Rational x, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) x = pl_eval(f, x);
  return x;
}

Interval pl_image(const PLMap& f, const Interval& j) {
  if (!f.domain().contains(j)) throw DomainError("interval " + to_string(j) + " outside the domain");
  Rational a = pl_eval(f, j.lo);
  Rational b = pl_eval(f, j.hi);
  Rational lo = std::min(a, b);
  Rational hi = std::max(a, b);
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  auto first = std::upper_bound(xs.begin(), xs.end(), j.lo);
  for (auto it = first; it != xs.end() && *it < j.hi; ++it) {
    const Rational& y = ys[static_cast<std::size_t>(it - xs.begin())];
    if (y < lo) lo = y;
    if (y > hi) hi = y;
  }
  return {lo, hi};
}

namespace {

// Drops interior breakpoints where the two adjacent slopes agree.
void drop_collinear(std::vector<Rational>& xs, std::vector<Rational>& ys) {
  std::vector<Rational> ox{xs.front()}, oy{ys.front()};
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const Rational& x0 = ox.back();
    const Rational& y0 = oy.back();
    if ((ys[i] - y0) * (xs[i + 1] - xs[i]) == (ys[i + 1] - ys[i]) * (xs[i] - x0)) continue;
    ox.push_back(xs[i]);
    oy.push_back(ys[i]);
  }
  ox.push_back(xs.back());
  oy.push_back(ys.back());
  xs = std::move(ox);
  ys = std::move(oy);
}

}  // namespace

PLMap pl_compose(const PLMap& f, const PLMap& g) {
  const auto& gx = g.breakpoints();
  const auto& gy = g.values();
  for (const auto& y : gy)
    if (!f.domain().contains(y)) throw DomainError("compose: range of g leaves the domain of f");
  const auto& fx = f.breakpoints();
  const std::size_t cap = budget().max_breakpoints;

  std::vector<Rational> xs{gx.front()};
  for (std::size_t i = 0; i + 1 < gx.size(); ++i) {
    const Rational& y0 = gy[i];
    const Rational& y1 = gy[i + 1];
    if (y0 != y1) {
      // Preimages of f's breakpoints strictly inside this piece of g.
      const bool up = y0 < y1;
      const Rational& lo = up ? y0 : y1;
      const Rational& hi = up ? y1 : y0;
      auto first = std::upper_bound(fx.begin(), fx.end(), lo);
      auto last = std::lower_bound(fx.begin(), fx.end(), hi);
      const std::size_t start = xs.size();
      for (auto it = first; it != last; ++it)
        xs.push_back(gx[i] + (*it - y0) * (gx[i + 1] - gx[i]) / (y1 - y0));
      if (!up) std::reverse(xs.begin() + static_cast<std::ptrdiff_t>(start), xs.end());
    }
    xs.push_back(gx[i + 1]);
    if (xs.size() > 4 * cap)
      throw BudgetExceededError("compose: more than " + std::to_string(4 * cap) + " raw breakpoints");
  }
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const auto& x : xs) ys.push_back(pl_eval(f, pl_eval(g, x)));
  drop_collinear(xs, ys);
  if (xs.size() > cap)
    throw BudgetExceededError("compose: " + std::to_string(xs.size()) + " breakpoints exceed budget " +
                              std::to_string(cap));
  return PLMap(std::move(xs), std::move(ys));
}

PLMap pl_power(const PLMap& f, std::size_t n) {
  if (n == 0) throw ParameterError("pl_power: exponent must be >= 1");
  if (n > budget().max_power)
    throw BudgetExceededError("pl_power: exponent " + std::to_string(n) + " exceeds budget " +
                              std::to_string(budget().max_power));
  PLMap out = f;
  for (std::size_t k = 1; k < n; ++k) out = pl_compose(f, out);
  return out;
}

}  // namespace chaoskit::interval
