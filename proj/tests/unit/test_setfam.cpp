#include <algorithm>
#include <random>
#include <set>

#include "chaoskit/error.hpp"
#include "chaoskit/setfam.hpp"
#include "doctest.h"

using namespace chaoskit;
using namespace chaoskit::setfam;

namespace {

WindowSet range_minus(std::int64_t horizon, std::initializer_list<std::int64_t> removed) {
  WindowSet w = WindowSet::full(horizon);
  for (auto r : removed) w.erase(r);
  return w;
}

WindowSet random_set(std::mt19937_64& rng, std::int64_t horizon, double p) {
  std::bernoulli_distribution coin(p);
  WindowSet w(horizon);
  for (std::int64_t i = 0; i < horizon; ++i)
    if (coin(rng)) w.insert(i);
  return w;
}

// Independent gap oracle: scans positions and measures distances between
// successive hits starting from a virtual hit at 0 (leading gap a1).
std::int64_t naive_max_gap(const std::set<std::int64_t>& a) {
  std::int64_t prev = 0;
  std::int64_t worst = 0;
  for (auto x : a) {
    worst = std::max(worst, x - prev);
    prev = x;
  }
  return worst;
}

}  // namespace

TEST_CASE("max_gap examples") {
  WindowSet evens(16, {0, 2, 4, 6, 8, 10, 12, 14});
  CHECK(max_gap(evens) == 2);

  WindowSet holes = range_minus(16, {2, 4, 8});
  std::set<std::int64_t> members;
  for (auto m : holes.members()) members.insert(m);
  CHECK(naive_max_gap(members) == 2);
  CHECK(max_gap(holes) == 2);

  CHECK(max_gap(WindowSet(16, {7})) == 7);
  CHECK(max_gap(WindowSet(16, {7}), TailPolicy::kStrict) == 9);
  CHECK_THROWS_AS(max_gap(WindowSet(16)), EmptySetError);
}

TEST_CASE("longest_block examples") {
  CHECK(longest_block(WindowSet(10, {1, 2, 3, 7})) == 3);
  CHECK(longest_block(range_minus(64, {2, 4, 8, 16, 32})) == 31);
  CHECK(longest_block(generate_window_set("evens", 64)) == 1);
  CHECK(longest_block(WindowSet(10)) == 0);
}

TEST_CASE("classify: complement of powers of two is thick and syndetic, not cofinite") {
  WindowSet p = generate_window_set("complement(powers(2))", 256);
  FamilyParams params;
  params.gap_bound = 2;
  params.block_len = 64;
  params.density_burnin = 8;
  auto v = classify(p, params);
  CHECK(v.syndetic);
  CHECK(v.max_gap == 2);
  CHECK(v.thick);
  CHECK(v.longest_block == 127);
  CHECK_FALSE(v.cofinite);
  CHECK(v.cofinite_head == 129);
}

TEST_CASE("classify: evens are syndetic but not thick") {
  FamilyParams params;
  params.gap_bound = 2;
  params.block_len = 2;
  params.density_burnin = 8;
  auto v = classify(generate_window_set("evens", 256), params);
  CHECK(v.syndetic);
  CHECK_FALSE(v.thick);
  CHECK_FALSE(v.thickly_syndetic);
  CHECK_FALSE(v.cofinite);
  CHECK(v.lower_density >= Density{7, 16});
  CHECK(v.upper_density <= Density{9, 16});
  CHECK(v.lower_density <= v.upper_density);
}

TEST_CASE("classify: full window") {
  FamilyParams params;
  params.block_len = 16;
  auto v = classify(WindowSet::full(256), params);
  CHECK(v.cofinite);
  CHECK(v.cofinite_head == 0);
  CHECK(v.lower_density == Density{1, 1});
  CHECK(v.upper_density == Density{1, 1});
  CHECK(v.syndetic);
  CHECK(v.thick);
  CHECK(v.thickly_syndetic);
  CHECK(v.piecewise_syndetic);
}

TEST_CASE("classify: empty set belongs to no family") {
  auto v = classify(WindowSet(32), FamilyParams{});
  CHECK_FALSE(v.syndetic);
  CHECK_FALSE(v.thick);
  CHECK_FALSE(v.thickly_syndetic);
  CHECK_FALSE(v.piecewise_syndetic);
  CHECK_FALSE(v.cofinite);
  CHECK(v.lower_density == Density{0, 1});
}

TEST_CASE("classify: parameter errors") {
  FamilyParams params;
  params.density_burnin = 33;
  CHECK_THROWS_AS(classify(WindowSet::full(32), params), ParameterError);
  params.density_burnin = 1;
  params.gap_bound = 0;
  CHECK_THROWS_AS(classify(WindowSet::full(32), params), ParameterError);
}

TEST_CASE("classify: ground N ignores 0") {
  FamilyParams params;
  params.ground = Ground::kNaturals;
  auto v = classify(WindowSet::full(16), params);
  CHECK(v.cofinite_head == 1);
  CHECK(v.max_gap == 1);
}

TEST_CASE("classify: strict tail policy charges the trailing gap") {
  FamilyParams params;
  params.gap_bound = 3;
  params.block_len = 2;
  WindowSet a(32, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(classify(a, params).syndetic);
  params.tail_policy = TailPolicy::kStrict;
  auto v = classify(a, params);
  CHECK_FALSE(v.syndetic);
  CHECK_FALSE(v.thickly_syndetic);
}

TEST_CASE("set algebra examples") {
  WindowSet a(16, {1, 2, 3});
  CHECK(dilate(a, 3) == WindowSet(16, {3, 6, 9}));
  CHECK(dilate(a, 1) == a);
  CHECK(shift_down(WindowSet(16, {3, 6, 9}), 3) == WindowSet(16, {0, 3, 6}));
  CHECK(set_union(a, WindowSet(16)) == a);
  CHECK(offset_up(a, 14) == WindowSet(16, {15}));
  CHECK_THROWS_AS(set_union(a, WindowSet(17)), HorizonMismatchError);

  // Expand the union of (2A - q), q = 0, 1 by hand: 2A = {2,4,6}.
  std::set<std::int64_t> expected;
  for (std::int64_t x : {1, 2, 3})
    for (std::int64_t q = 0; q < 2; ++q) expected.insert(2 * x - q);
  WindowSet b = set_union(shift_down(dilate(a, 2), 0), shift_down(dilate(a, 2), 1));
  std::vector<std::int64_t> got = b.members();
  CHECK(std::set<std::int64_t>(got.begin(), got.end()) == expected);
  CHECK(b == WindowSet(16, {1, 2, 3, 4, 5, 6}));
}

TEST_CASE("text format and generators") {
  WindowSet a(10, {0, 3, 9});
  CHECK(format_window_set(a) == "horizon=10\n0,3,9\n");
  CHECK(format_window_set(WindowSet(4)) == "horizon=4\n\n");
  CHECK(parse_window_set("horizon=4\n") == WindowSet(4));
  CHECK_THROWS_AS(parse_window_set("horizon=10\n3,1\n"), ParseError);
  CHECK_THROWS_AS(parse_window_set("horizon=10\n10\n"), ParseError);
  CHECK_THROWS_AS(parse_window_set("size=10\n1\n"), ParseError);

  CHECK(generate_window_set("multiples(3)", 10) == WindowSet(10, {0, 3, 6, 9}));
  CHECK(generate_window_set("complement(powers(2))", 10) == range_minus(10, {2, 4, 8}));
  CHECK(generate_window_set("explicit", 8, "1, 5,7") == WindowSet(8, {1, 5, 7}));
  CHECK(generate_window_set("all", 3) == WindowSet::full(3));
  CHECK_THROWS_AS(generate_window_set("primes", 10), ParseError);
  CHECK_THROWS_AS(generate_window_set("explicit", 8, "9"), ParseError);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    WindowSet w = random_set(rng, 1 + static_cast<std::int64_t>(rng() % 80), 0.4);
    CHECK(parse_window_set(format_window_set(w)) == w);
  }
}

TEST_CASE("property: classify is upward hereditary") {
  std::mt19937_64 rng(11);
  FamilyParams params;
  params.gap_bound = 3;
  params.block_len = 4;
  params.cofinite_head = 40;
  params.density_burnin = 4;
  for (int trial = 0; trial < 400; ++trial) {
    params.tail_policy = trial % 2 ? TailPolicy::kStrict : TailPolicy::kCensored;
    WindowSet a = random_set(rng, 64, 0.6);
    WindowSet b = set_union(a, random_set(rng, 64, 0.3));
    auto va = classify(a, params);
    auto vb = classify(b, params);
    CHECK((!va.syndetic || vb.syndetic));
    CHECK((!va.thick || vb.thick));
    CHECK((!va.thickly_syndetic || vb.thickly_syndetic));
    CHECK((!va.piecewise_syndetic || vb.piecewise_syndetic));
    CHECK((!va.cofinite || vb.cofinite));
  }
}

TEST_CASE("property: verdict implications") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 600; ++trial) {
    FamilyParams params;
    params.gap_bound = 1 + static_cast<std::int64_t>(rng() % 4);
    params.block_len = 1 + static_cast<std::int64_t>(rng() % 6);
    params.tail_policy = trial % 2 ? TailPolicy::kStrict : TailPolicy::kCensored;
    double density = 0.5 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
    WindowSet a = random_set(rng, 48, density);
    auto v = classify(a, params);
    if (v.thickly_syndetic) {
      CHECK(v.syndetic);
      CHECK(v.thick);
    }
    if (v.thick) CHECK(v.piecewise_syndetic);
    if (v.syndetic) {
      auto m = a.members();
      if (m.back() - m.front() + 1 >= params.block_len) CHECK(v.piecewise_syndetic);
    }
    CHECK(v.lower_density <= v.upper_density);
    if (v.cofinite && v.cofinite_head <= params.gap_bound &&
        a.horizon() - v.cofinite_head >= std::max(2 * params.gap_bound, params.block_len)) {
      CHECK(v.syndetic);
      CHECK(v.thick);
    }
  }
}

TEST_CASE("property: dilation keeps syndeticity with gap at most n*g") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    WindowSet a = random_set(rng, 128, 0.5);
    if (a.empty()) continue;
    std::int64_t g = max_gap(a);
    std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 5);
    WindowSet d = dilate(a, n);
    if (d.empty()) continue;
    CHECK(max_gap(d) <= n * g);
  }
}

TEST_CASE("property: union of shifted dilations of a cofinite set is cofinite") {
  std::mt19937_64 rng(19);
  const std::int64_t horizon = 200;
  for (int trial = 0; trial < 100; ++trial) {
    std::int64_t m = static_cast<std::int64_t>(rng() % 20);
    WindowSet a = set_union(WindowSet::tail(horizon, m), random_set(rng, horizon, 0.3));
    for (std::int64_t n = 1; n <= 8; ++n) {
      WindowSet b(horizon);
      for (std::int64_t q = 0; q < n; ++q) b = set_union(b, shift_down(dilate(a, n), q));
      // Products at or beyond the horizon were dropped, so the last n-1
      // positions are censored.
      for (std::int64_t i = n * m; i < horizon - n; ++i) CHECK(b.contains(i));
    }
  }
}

TEST_CASE("density profile") {
  auto prof = density_profile(generate_window_set("evens", 10), 2);
  REQUIRE(prof.size() == 9);
  CHECK(prof.front() == Density{1, 2});
  CHECK(prof[1] == Density{2, 3});
  CHECK(prof.back() == Density{5, 10});
  CHECK(prof.back().to_string() == "1/2");
}
