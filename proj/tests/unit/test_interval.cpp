#include <cmath>
#include <random>
#include <set>

#include "chaoskit/budget.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/interval.hpp"
#include "doctest.h"

using namespace chaoskit;
using namespace chaoskit::interval;
using setfam::FamilyParams;
using setfam::WindowSet;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

const PLMap& S() {
  static const PLMap m = PLMap::builtin("S");
  return m;
}
const PLMap& tent() {
  static const PLMap m = PLMap::builtin("tent");
  return m;
}
const PLMap& ex211() {
  static const PLMap m = PLMap::builtin("example211");
  return m;
}
const PLMap& identity() {
  static const PLMap m = PLMap::builtin("identity");
  return m;
}

// Random self-map of [0,1] with small denominators.
PLMap random_map(std::mt19937_64& rng, std::size_t pieces) {
  std::set<long> cuts;
  while (cuts.size() < pieces - 1) cuts.insert(1 + static_cast<long>(rng() % 11));
  std::vector<Rational> xs{q(0)}, ys;
  for (long c : cuts) xs.push_back(q(c, 12));
  xs.push_back(q(1));
  for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(q(static_cast<long>(rng() % 13), 12));
  return PLMap(xs, ys);
}

Interval random_sub(std::mt19937_64& rng, const PLMap& f, long denom = 97) {
  const Rational w = f.hi() - f.lo();
  long a = static_cast<long>(rng() % static_cast<unsigned long>(denom));
  long b = static_cast<long>(rng() % static_cast<unsigned long>(denom));
  if (a == b) b = a + 1;
  if (a > b) std::swap(a, b);
  return {f.lo() + w * q(a, denom), f.lo() + w * q(b, denom)};
}

WindowSet rehorizon(const WindowSet& a, std::int64_t h) {
  WindowSet out(h);
  for (auto m : a.members())
    if (m < h) out.insert(m);
  return out;
}

FamilyParams window_params() {
  FamilyParams p;
  p.gap_bound = 16;
  p.block_len = 8;
  p.cofinite_head = 24;
  p.density_burnin = 8;
  p.ground = setfam::Ground::kNaturals;
  return p;
}

}  // namespace

TEST_CASE("builtins evaluate at the defining points") {
  CHECK(pl_eval(S(), q(-1)) == 0);
  CHECK(pl_eval(S(), q(-1, 2)) == 1);
  CHECK(pl_eval(S(), q(0)) == 0);
  CHECK(pl_eval(S(), q(1)) == -1);
  CHECK(pl_eval(S(), q(-3, 4)) == q(1, 2));  // 2x + 2
  CHECK(pl_eval(S(), q(-1, 4)) == q(1, 2));  // -2x
  CHECK(pl_eval(S(), q(1, 3)) == q(-1, 3));  // -x
  CHECK(pl_eval(ex211(), q(1, 6)) == q(1, 2));
  CHECK(pl_eval(ex211(), q(2, 3)) == 1);
  CHECK(pl_eval(ex211(), q(1, 12)) == q(1, 4));
  CHECK(pl_eval(tent(), q(1, 2)) == 1);
  CHECK(pl_eval(tent(), q(1)) == 0);
  CHECK(pl_iterate(tent(), q(1, 3), 2) == q(2, 3));
  CHECK_THROWS_AS(pl_eval(tent(), q(2)), DomainError);
  CHECK_THROWS_AS(PLMap::builtin("logistic"), ParameterError);
}

TEST_CASE("PL map validation and text format") {
  CHECK_THROWS_AS(PLMap({q(0)}, {q(0)}), ParameterError);
  CHECK_THROWS_AS(PLMap({q(0), q(0)}, {q(0), q(0)}), ParameterError);
  CHECK_THROWS_AS(PLMap({q(0), q(1)}, {q(0), q(2)}), ParameterError);
  for (const auto& name : PLMap::builtin_names()) {
    PLMap f = PLMap::builtin(name);
    CHECK(PLMap::parse(f.format()) == f);
  }
  CHECK(S().format() == "domain=-1,1\n-1:0\n-1/2:1\n0:0\n1:-1\n");
  CHECK(PLMap::parse("domain=0,1\n0:0\n0.5:1\n1:0\n") == tent());
  CHECK_THROWS_AS(PLMap::parse("0:0\n1:1\n"), ParseError);
  CHECK_THROWS_AS(PLMap::parse("domain=0,1\n0:0\n1/2:1\n"), ParseError);
  CHECK_THROWS_AS(PLMap::parse("domain=0,1\n0:0\n1:2\n"), ParseError);
  CHECK_THROWS_AS(PLMap::parse("domain=0,1\n0;0\n1:1\n"), ParseError);
}

TEST_CASE("exact images") {
  CHECK(pl_image(S(), {q(0), q(1)}) == Interval(q(-1), q(0)));
  CHECK(pl_image(S(), {q(-1), q(0)}) == Interval(q(0), q(1)));
  CHECK(pl_image(tent(), {q(0), q(1)}) == Interval(q(0), q(1)));
  CHECK(pl_image(tent(), {q(1, 10), q(2, 10)}) == Interval(q(1, 5), q(2, 5)));
  CHECK(pl_image(tent(), {q(1, 3), q(1, 3)}) == Interval(q(2, 3), q(2, 3)));
  CHECK_THROWS_AS(pl_image(tent(), {q(-1), q(1, 2)}), DomainError);

  // Sampled inner bound plus attainment by a breakpoint or endpoint.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    PLMap f = random_map(rng, 2 + rng() % 4);
    Interval j = random_sub(rng, f);
    Interval im = pl_image(f, j);
    for (int k = 0; k <= 64; ++k) {
      Rational x = j.lo + (j.hi - j.lo) * q(k, 64);
      CHECK(im.contains(pl_eval(f, x)));
    }
    std::vector<Rational> cand{j.lo, j.hi};
    for (const auto& x : f.breakpoints())
      if (j.contains(x)) cand.push_back(x);
    bool lo_hit = false, hi_hit = false;
    for (const auto& x : cand) {
      lo_hit = lo_hit || pl_eval(f, x) == im.lo;
      hi_hit = hi_hit || pl_eval(f, x) == im.hi;
    }
    CHECK(lo_hit);
    CHECK(hi_hit);
  }
}

TEST_CASE("composition and powers") {
  PLMap s2 = pl_power(S(), 2);
  for (long k = 0; k <= 120; ++k) {
    Rational x = q(k, 120);
    Rational t = x <= q(1, 2) ? Rational(2 * x) : Rational(2 - 2 * x);
    CHECK(pl_eval(s2, x) == t);
  }
  CHECK(pl_power(tent(), 1) == tent());
  PLMap t2 = pl_power(tent(), 2);
  REQUIRE(t2.pieces() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(abs(t2.slope(i)) == 4);
  CHECK(t2.breakpoints() == std::vector<Rational>{q(0), q(1, 4), q(1, 2), q(3, 4), q(1)});
  CHECK(pl_power(tent(), 10).pieces() == 1024);
  CHECK(pl_power(identity(), 12) == identity());
  CHECK_THROWS_AS(pl_power(tent(), 13), BudgetExceededError);

  Budget saved = budget();
  Budget tight = saved;
  tight.max_breakpoints = 64;
  set_budget(tight);
  try {
    pl_power(tent(), 8);
    CHECK(false);
  } catch (const BudgetExceededError& e) {
    CHECK(std::string(e.what()).find("65 breakpoints") != std::string::npos);
  }
  set_budget(saved);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    PLMap f = random_map(rng, 3);
    PLMap g = random_map(rng, 4);
    PLMap fg = pl_compose(f, g);
    for (long k = 0; k <= 60; ++k) {
      Rational x = q(k, 60) + q(1, 997) * (k < 60 ? 1 : 0);
      CHECK(pl_eval(fg, x) == pl_eval(f, pl_eval(g, x)));
    }
    for (std::size_t i = 1; i + 1 < fg.breakpoints().size(); ++i)
      CHECK(fg.slope(i - 1) != fg.slope(i));
  }
}

TEST_CASE("property: image of a power equals iterated images") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    PLMap f = trial % 4 == 0 ? S() : random_map(rng, 2 + rng() % 2);
    Interval u = random_sub(rng, f);
    Interval iter = u;
    PLMap power = f;
    for (std::size_t n = 1; n <= 8; ++n) {
      if (n > 1) power = pl_compose(f, power);
      iter = pl_image(f, iter);
      CHECK(pl_image(power, u) == iter);
    }
  }
}

TEST_CASE("periodic points") {
  auto s = periodic_points(S(), 1);
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0].point == 0);
  CHECK(s.segments.empty());

  std::vector<Rational> ex;
  for (const auto& p : periodic_points(ex211(), 1).points) ex.push_back(p.point);
  CHECK(ex == std::vector<Rational>{q(0), q(1, 4), q(1, 2), q(3, 4), q(1)});

  auto t = periodic_points(tent(), 1);
  REQUIRE(t.points.size() == 2);
  CHECK(t.points[0].point == 0);
  CHECK(t.points[1].point == q(2, 3));

  auto t2 = periodic_points(tent(), 2);
  std::vector<std::pair<Rational, std::size_t>> got;
  for (const auto& p : t2.points) got.emplace_back(p.point, p.prime_period);
  CHECK(got == std::vector<std::pair<Rational, std::size_t>>{
                   {q(0), 1}, {q(2, 5), 2}, {q(2, 3), 1}, {q(4, 5), 2}});

  // The tent map has exactly 2^n solutions of T^n(x) = x.
  for (std::size_t n = 1; n <= 8; ++n) {
    auto pts = periodic_points(tent(), n);
    CHECK(pts.points.size() == (std::size_t{1} << n));
    for (const auto& p : pts.points) {
      CHECK(pl_iterate(tent(), p.point, n) == p.point);
      CHECK(n % p.prime_period == 0);
      CHECK(pl_iterate(tent(), p.point, p.prime_period) == p.point);
    }
  }

  auto id = periodic_points(identity(), 3);
  CHECK(id.points.empty());
  REQUIRE(id.segments.size() == 1);
  CHECK(id.segments[0] == Interval(q(0), q(1)));

  auto windowed = periodic_points(ex211(), 1, {q(1, 5), q(4, 5)});
  CHECK(windowed.points.size() == 3);
}

TEST_CASE("periodic density") {
  auto t = periodic_density_report(tent(), q(1, 64), 10);
  CHECK(t.covered_fraction == 1);
  CHECK(t.gaps.empty());
  CHECK(t.cells == 64);

  auto e = periodic_density_report(ex211(), q(1, 32), 12);
  CHECK(e.covered_fraction == 1);
  CHECK(e.periods_scanned < 12);

  CHECK(periodic_density_report(identity(), q(1, 100), 1).covered_fraction == 1);

  PLMap constant({q(0), q(1)}, {q(1, 2), q(1, 2)});
  auto c = periodic_density_report(constant, q(1, 4), 3);
  CHECK(c.covered == 1);
  CHECK(c.covered_fraction == q(1, 4));
  REQUIRE(c.gaps.size() == 2);
  CHECK(c.gaps[0] == Interval(q(0), q(1, 2)));
  CHECK(c.gaps[1] == Interval(q(3, 4), q(1)));

  CHECK_THROWS_AS(periodic_density_report(tent(), q(1, 64), 13), BudgetExceededError);
}

TEST_CASE("sensitivity hitting sets") {
  auto h = sensitivity_hitting_set(S(), {q(1, 10), q(2, 5)}, q(1, 2), 64);
  auto v = setfam::classify(h.set, window_params());
  CHECK(v.cofinite);
  // Once the image has diameter 1 it keeps it.
  auto orbit = image_orbit(S(), {q(1, 10), q(2, 5)}, 64);
  bool reached = false;
  for (std::size_t k = 1; k < orbit.size(); ++k) {
    if (orbit[k].diameter() == 1) reached = true;
    if (reached) CHECK(orbit[k].diameter() == 1);
  }
  CHECK(reached);

  CHECK(sensitivity_hitting_set(S(), {q(1, 10), q(2, 5)}, q(2), 64).set.empty());
  CHECK(sensitivity_hitting_set(identity(), {q(1, 10), q(2, 5)}, q(1, 2), 64).set.empty());
  CHECK_THROWS_AS(sensitivity_hitting_set(S(), {q(1, 10), q(1, 10)}, q(1, 2), 64), ParameterError);
  CHECK_THROWS_AS(sensitivity_hitting_set(S(), {q(1, 10), q(2, 10)}, q(0), 64), ParameterError);
  CHECK_THROWS_AS(sensitivity_hitting_set(S(), {q(1, 10), q(2, 10)}, q(1), 5000), BudgetExceededError);

  // Strict comparison: a diameter equal to δ is not a hit.
  auto eq = sensitivity_hitting_set(tent(), {q(0), q(1, 4)}, q(1, 2), 1);
  CHECK_FALSE(eq.set.contains(1));
}

TEST_CASE("transitivity hitting sets and the parity law of S") {
  Interval u{q(1, 10), q(2, 5)};
  Interval v_neg{q(-2, 5), q(-1, 10)};
  auto same = transitivity_hitting_set(S(), u, u, 64);
  auto opp = transitivity_hitting_set(S(), u, v_neg, 64);
  for (auto m : same.set.members()) CHECK(m % 2 == 0);
  for (auto m : opp.set.members()) CHECK(m % 2 == 1);
  auto vs = setfam::classify(same.set, window_params());
  CHECK(vs.syndetic);
  CHECK_FALSE(vs.thick);

  auto t = transitivity_hitting_set(tent(), {q(1, 10), q(1, 5)}, {q(1, 10), q(1, 5)}, 64);
  CHECK(setfam::classify(t.set, window_params()).cofinite);

  // Boundary contact: tent maps [0,1/4] onto [0,1/2], which touches [1/2,1].
  auto touch = transitivity_hitting_set(tent(), {q(0), q(1, 4)}, {q(1, 2), q(1)}, 1);
  CHECK(touch.set.contains(1));
  auto strict = transitivity_hitting_set(tent(), {q(0), q(1, 4)}, {q(1, 2), q(1)}, 1, true);
  CHECK_FALSE(strict.set.contains(1));

  std::string csv = hitting_set_csv(opp);
  CHECK(csv.rfind("n,member\n1,1\n2,0\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    // Random sub-intervals away from 0 on each side.
    auto side = [&](bool neg) {
      long a = 5 + static_cast<long>(rng() % 80), b = a + 1 + static_cast<long>(rng() % 10);
      Interval j{q(a, 100), q(b, 100)};
      return neg ? Interval(-j.hi, -j.lo) : j;
    };
    bool un = rng() % 2, vn = rng() % 2;
    auto h = transitivity_hitting_set(S(), side(un), side(vn), 64);
    for (auto m : h.set.members()) CHECK(m % 2 == (un == vn ? 0 : 1));
  }
}

TEST_CASE("leo check") {
  CHECK(leo_check(tent(), {q(3, 10), q(7, 20)}, 64) == 5);
  CHECK_FALSE(leo_check(S(), {q(1, 10), q(2, 5)}, 64).has_value());
  CHECK(leo_check(tent(), tent().domain(), 64) == 1);
  CHECK(leo_check(S(), S().domain(), 64) == 1);
  CHECK_FALSE(leo_check(identity(), {q(1, 10), q(2, 5)}, 64).has_value());
}

TEST_CASE("property: dilation embedding of power hitting sets") {
  std::mt19937_64 rng(11);
  const std::int64_t horizon = 48;
  for (const PLMap* f : {&S(), &tent()}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      PLMap fn = pl_power(*f, n);
      for (int trial = 0; trial < 10; ++trial) {
        Interval u = random_sub(rng, *f, 1000);
        Rational delta = q(1 + static_cast<long>(rng() % 9), 10);
        auto big = sensitivity_hitting_set(*f, u, delta, horizon);
        auto small = sensitivity_hitting_set(fn, u, delta, horizon / static_cast<std::int64_t>(n));
        auto embedded = rehorizon(setfam::dilate(rehorizon(small.set, horizon + 1), static_cast<std::int64_t>(n)), horizon + 1);
        CHECK(embedded.subset_of(big.set));
      }
    }
  }
}

TEST_CASE("property: sensitivity tags of S and S^2 agree for some eta") {
  std::mt19937_64 rng(13);
  FamilyParams p = window_params();
  p.gap_bound = 4;
  p.cofinite_head = 12;
  // One step of S^2 is two steps of S, so the window parameters are halved.
  FamilyParams p2 = p;
  p2.gap_bound = p.gap_bound / 2;
  p2.block_len = p.block_len / 2;
  p2.cofinite_head = p.cofinite_head / 2;
  p2.density_burnin = p.density_burnin / 2;
  const PLMap s2 = pl_power(S(), 2);
  for (int trial = 0; trial < 20; ++trial) {
    Interval u = random_sub(rng, S(), 1000);
    auto vf = setfam::classify(sensitivity_hitting_set(S(), u, q(1, 2), 64).set, p);
    bool agreed = false;
    // The leading gap halves under S^2, so η is searched on both sides of δ.
    for (long j = 1; j < 128 && !agreed; ++j) {
      Rational eta = q(j, 64);
      auto vg = setfam::classify(sensitivity_hitting_set(s2, u, eta, 32).set, p2);
      agreed = vf.syndetic == vg.syndetic && vf.thick == vg.thick && vf.cofinite == vg.cofinite;
    }
    CHECK(agreed);
  }
}

TEST_CASE("sampled adapter") {
  SampledMap st = SampledMap::from_pl(tent(), 1e-4);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    Interval j = random_sub(rng, tent(), 1000);
    auto exact = pl_image(tent(), j);
    auto im = st.image(to_double(j.lo), to_double(j.hi));
    CHECK(im.lo >= to_double(exact.lo) - 1e-12);
    CHECK(im.hi <= to_double(exact.hi) + 1e-12);
    CHECK(im.lo <= to_double(exact.lo) + im.error);
    CHECK(im.hi >= to_double(exact.hi) - im.error);
  }

  SampledMap id([](double x) { return x; }, 0, 1, 1e-3, 1);
  CHECK(sensitivity_hitting_set(id, 0.2, 0.3, 0.2, 64).set.empty());
  CHECK(sensitivity_hitting_set(id, 0.2, 0.3, 0.2, 64).approximate);

  // Conjugate of the tent map by h(x) = x(1+x)/2.
  auto h = [](double x) { return x * (1 + x) / 2; };
  auto h_inv = [](double y) { return (-1 + std::sqrt(1 + 8 * y)) / 2; };
  SampledMap g([&](double y) { double x = h_inv(y); return h(x <= 0.5 ? 2 * x : 2 - 2 * x); }, 0, 1, 1e-4, 6);
  FamilyParams p = window_params();
  for (int k = 0; k < 10; ++k) {
    Rational a = q(k, 10) + q(1, 40), b = q(k, 10) + q(3, 40);
    auto exact_s = setfam::classify(sensitivity_hitting_set(tent(), {a, b}, q(1, 2), 64).set, p);
    auto conj_s = setfam::classify(sensitivity_hitting_set(g, h(to_double(a)), h(to_double(b)), 0.5, 64).set, p);
    CHECK(exact_s.syndetic == conj_s.syndetic);
    CHECK(exact_s.thick == conj_s.thick);
    CHECK(exact_s.cofinite == conj_s.cofinite);
    Interval v{q(3, 5), q(7, 10)};
    auto exact_t = setfam::classify(transitivity_hitting_set(tent(), {a, b}, v, 64).set, p);
    auto conj_t = setfam::classify(
        transitivity_hitting_set(g, h(to_double(a)), h(to_double(b)), h(0.6), h(0.7), 64).set, p);
    CHECK(exact_t.syndetic == conj_t.syndetic);
    CHECK(exact_t.thick == conj_t.thick);
    CHECK(exact_t.cofinite == conj_t.cofinite);
  }
}

TEST_CASE("Devaney reports of the builtins") {
  DevaneyParams params;
  auto s = devaney_report(S(), params);
  CHECK(s.family(FamilyTag::kSyndetic).devaney);
  CHECK_FALSE(s.family(FamilyTag::kThick).devaney);
  CHECK_FALSE(s.family(FamilyTag::kCofinite).devaney);
  CHECK(s.dense_periodic);
  CHECK(s.fixed_point_count == 1);

  auto t = devaney_report(tent(), params);
  CHECK(t.family(FamilyTag::kCofinite).devaney);
  CHECK(t.family(FamilyTag::kSyndetic).devaney);

  auto id = devaney_report(identity(), params);
  for (const auto& f : id.families) CHECK_FALSE(f.devaney);
  CHECK(id.dense_periodic);

  auto e = devaney_report(ex211(), params);
  CHECK(e.dense_periodic);
  CHECK_FALSE(e.family(FamilyTag::kSyndetic).transitive);

  for (const auto* r : {&s, &t, &id, &e}) CHECK(r->theorem_consistent);

  auto serial = devaney_report(S(), params, Exec::kSerial);
  for (std::size_t i = 0; i < serial.transitivity.size(); ++i)
    CHECK(serial.transitivity[i].set == s.transitivity[i].set);
}
