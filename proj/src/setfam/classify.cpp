#include <algorithm>
#include <numeric>

#include "chaoskit/error.hpp"
#include "chaoskit/setfam.hpp"

namespace chaoskit::setfam {
namespace {

// Max of the leading gap and consecutive gaps of the members of `a` that lie
// below `effective_horizon`; under kStrict the trailing gap to
// `effective_horizon` is included. -1 if there is no such member.
std::int64_t gap_below(const WindowSet& a, std::int64_t effective_horizon, TailPolicy policy) {
  std::int64_t prev = -1;
  std::int64_t worst = -1;
  for (std::int64_t i = 0; i < effective_horizon; ++i) {
    if (!a.contains(i)) continue;
    worst = std::max(worst, prev < 0 ? i : i - prev);
    prev = i;
  }
  if (prev < 0) return -1;
  if (policy == TailPolicy::kStrict) worst = std::max(worst, effective_horizon - prev);
  return worst;
}

}  // namespace

void FamilyParams::validate() const {
  if (gap_bound < 1) throw ParameterError("gap_bound must be >= 1");
  if (block_len < 1) throw ParameterError("block_len must be >= 1");
  if (density_burnin < 1) throw ParameterError("density_burnin must be >= 1");
  if (cofinite_head < 0) throw ParameterError("cofinite_head must be >= 0");
}

std::strong_ordering operator<=>(const Density& a, const Density& b) {
  return a.count * b.n <=> b.count * a.n;
}

std::string Density::to_string() const {
  std::int64_t g = std::gcd(count, n);
  if (g == 0) g = 1;
  return std::to_string(count / g) + "/" + std::to_string(n / g);
}

std::int64_t max_gap(const WindowSet& a, TailPolicy policy) {
  std::int64_t g = gap_below(a, a.horizon(), policy);
  if (g < 0) throw EmptySetError("max_gap of an empty set");
  return g;
}

std::int64_t longest_block(const WindowSet& a) {
  std::int64_t best = 0;
  std::int64_t run = 0;
  for (std::int64_t i = 0; i < a.horizon(); ++i) {
    run = a.contains(i) ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

WindowSet block_starts(const WindowSet& a, std::int64_t n) {
  if (n < 1) throw ParameterError("block length must be positive");
  WindowSet out(a.horizon());
  // Walk right to left tracking the run length starting at i.
  std::int64_t run = 0;
  for (std::int64_t i = a.horizon() - 1; i >= 0; --i) {
    run = a.contains(i) ? run + 1 : 0;
    if (run >= n) out.insert(i);
  }
  return out;
}

std::int64_t cofinite_head(const WindowSet& a) {
  std::int64_t m = a.horizon();
  while (m > 0 && a.contains(m - 1)) --m;
  return m;
}

std::vector<Density> density_profile(const WindowSet& a, std::int64_t burnin) {
  if (burnin < 1) throw ParameterError("density_burnin must be >= 1");
  if (burnin > a.horizon())
    throw ParameterError("density_burnin " + std::to_string(burnin) + " exceeds horizon " +
                         std::to_string(a.horizon()));
  std::vector<Density> out;
  out.reserve(static_cast<std::size_t>(a.horizon() - burnin + 1));
  std::int64_t count = 0;
  for (std::int64_t n = 1; n <= a.horizon(); ++n) {
    if (a.contains(n - 1)) ++count;
    if (n >= burnin) out.push_back(Density{count, n});
  }
  return out;
}

FamilyVerdict classify(const WindowSet& input, const FamilyParams& p) {
  p.validate();
  if (p.density_burnin > input.horizon())
    throw ParameterError("density_burnin exceeds the window horizon");

  WindowSet a = input;
  if (p.ground == Ground::kNaturals) a.erase(0);

  FamilyVerdict v;
  auto profile = density_profile(a, p.density_burnin);
  v.lower_density = *std::min_element(profile.begin(), profile.end());
  v.upper_density = *std::max_element(profile.begin(), profile.end());
  v.longest_block = longest_block(a);
  if (a.empty()) return v;

  const std::int64_t horizon = a.horizon();
  v.max_gap = max_gap(a, p.tail_policy);
  v.syndetic = v.max_gap <= p.gap_bound;
  v.thick = v.longest_block >= p.block_len;

  // Block-start sets S_n for n = 1..L. S_1 = A. Under kStrict the trailing
  // gap of S_n is measured to the last admissible start, horizon - n + 1.
  v.thickly_syndetic = v.thick;
  for (std::int64_t n = 1; v.thickly_syndetic && n <= p.block_len; ++n) {
    WindowSet starts = block_starts(a, n);
    std::int64_t g = gap_below(starts, horizon - n + 1, p.tail_policy);
    v.thickly_syndetic = g >= 0 && g <= p.gap_bound;
  }

  // Longest span first..last of a chain of members with consecutive gaps <= g.
  std::int64_t run_first = -1;
  std::int64_t prev = -1;
  for (std::int64_t i = 0; i < horizon; ++i) {
    if (!a.contains(i)) continue;
    if (prev < 0 || i - prev > p.gap_bound) run_first = i;
    prev = i;
    v.longest_syndetic_span = std::max(v.longest_syndetic_span, i - run_first + 1);
  }
  v.piecewise_syndetic = v.longest_syndetic_span >= p.block_len;

  std::int64_t head = cofinite_head(a);
  if (head < horizon) {
    v.cofinite_head = head;
    v.cofinite = head <= p.cofinite_head;
  }
  return v;
}

}  // namespace chaoskit::setfam
