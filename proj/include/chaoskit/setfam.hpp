#pragma once

// Finite-window algebra of subsets of N0 and their classification against the
// families syndetic, thick, thickly syndetic, piecewise syndetic, co-finite
// and the lower/upper density estimates.
//
// Every family is a tail property of an infinite set. Here a set is only
// observed on [0, horizon), so each verdict is taken relative to explicit
// surrogate parameters (gap bound, block length, head, density burn-in) and
// carries the witness that decided it.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace chaoskit::setfam {

// A subset of [0, horizon). Stored as a membership bitmap.
class WindowSet {
 public:
  WindowSet() = default;
  explicit WindowSet(std::int64_t horizon);
  WindowSet(std::int64_t horizon, std::span<const std::int64_t> members);
  WindowSet(std::int64_t horizon, std::initializer_list<std::int64_t> members);

  static WindowSet full(std::int64_t horizon);
  // Members i in [from, horizon).
  static WindowSet tail(std::int64_t horizon, std::int64_t from);

  std::int64_t horizon() const { return static_cast<std::int64_t>(bits_.size()); }
  bool contains(std::int64_t i) const {
    return i >= 0 && i < horizon() && bits_[static_cast<std::size_t>(i)] != 0;
  }
  void insert(std::int64_t i);
  void erase(std::int64_t i);

  std::vector<std::int64_t> members() const;  // ascending
  std::int64_t size() const;
  bool empty() const;
  std::span<const std::uint8_t> bitmap() const { return bits_; }

  // Subset test; horizons must match.
  bool subset_of(const WindowSet& other) const;

  bool operator==(const WindowSet&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

enum class TailPolicy { kCensored, kStrict };

// Ground set for a classification. Sets "over N" ignore membership of 0.
enum class Ground { kNaturalsWithZero, kNaturals };

struct FamilyParams {
  std::int64_t gap_bound = 2;        // g
  std::int64_t block_len = 8;        // L
  std::int64_t cofinite_head = 0;    // m
  std::int64_t density_burnin = 1;   // n0
  TailPolicy tail_policy = TailPolicy::kCensored;
  Ground ground = Ground::kNaturalsWithZero;

  // Throws ParameterError if g, L or n0 is below 1 or m is negative.
  void validate() const;
};

// count / n with count <= n. Compared exactly.
struct Density {
  std::int64_t count = 0;
  std::int64_t n = 1;

  double value() const { return static_cast<double>(count) / static_cast<double>(n); }
  std::string to_string() const;  // reduced "p/q"
  friend std::strong_ordering operator<=>(const Density& a, const Density& b);
  friend bool operator==(const Density& a, const Density& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

struct FamilyVerdict {
  bool syndetic = false;
  std::int64_t max_gap = -1;        // -1 when the set is empty
  bool thick = false;
  std::int64_t longest_block = 0;
  bool thickly_syndetic = false;
  bool piecewise_syndetic = false;
  std::int64_t longest_syndetic_span = 0;
  bool cofinite = false;
  std::int64_t cofinite_head = -1;  // least m* with [m*, horizon) inside A, -1 if none
  Density lower_density;
  Density upper_density;
};

// Largest of {a1} and the consecutive differences; under kStrict also the
// trailing gap horizon - a_k. Throws EmptySetError on an empty set.
std::int64_t max_gap(const WindowSet& a, TailPolicy policy = TailPolicy::kCensored);

// Length of the longest run of consecutive members; 0 for the empty set.
std::int64_t longest_block(const WindowSet& a);

// {i : i, ..., i+n-1 all in A}, on the same horizon.
WindowSet block_starts(const WindowSet& a, std::int64_t n);

// Least m with [m, horizon) inside A (horizon itself when the last position is
// missing).
std::int64_t cofinite_head(const WindowSet& a);

// Density |A ∩ [0,n)| / n for n = n0 .. horizon, one entry per n.
std::vector<Density> density_profile(const WindowSet& a, std::int64_t burnin);

FamilyVerdict classify(const WindowSet& a, const FamilyParams& p);

// n·A, dropping products at or beyond the horizon.
WindowSet dilate(const WindowSet& a, std::int64_t n);
// A - q, dropping negatives.
WindowSet shift_down(const WindowSet& a, std::int64_t q);
// A + m, dropping values at or beyond the horizon.
WindowSet offset_up(const WindowSet& a, std::int64_t m);
WindowSet set_union(const WindowSet& a, const WindowSet& b);
WindowSet set_intersection(const WindowSet& a, const WindowSet& b);

// Text form: "horizon=<N>" line followed by a comma separated ascending
// member list (possibly empty).
std::string format_window_set(const WindowSet& a);
WindowSet parse_window_set(const std::string& text);

// Generator grammar used by configs:
//   all | evens | multiples(k) | complement(powers(k)) | explicit
// `explicit` takes its members from `explicit_members` (comma list).
// powers(k) is {k^n : n >= 1}; multiples include 0.
WindowSet generate_window_set(const std::string& expr, std::int64_t horizon,
                              const std::string& explicit_members = {});

}  // namespace chaoskit::setfam
