#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "chaoskit/budget.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/subshift.hpp"
#include "doctest.h"

using namespace chaoskit;
using namespace chaoskit::subshift;
using setfam::FamilyParams;
using setfam::WindowSet;

namespace {

Word w(const char* s) { return Word::parse(s); }

std::shared_ptr<const SturmianSpec> golden_spec() {
  static auto spec = std::make_shared<const SturmianSpec>(SturmianSpec::golden(10000));
  return spec;
}

WindowSet random_p(std::mt19937_64& rng, std::int64_t horizon) {
  std::bernoulli_distribution coin(0.6);
  WindowSet p(horizon);
  for (std::int64_t i = 1; i < horizon; ++i)
    if (coin(rng)) p.insert(i);
  return p;
}

// Pairwise gap test written out independently of spacing_member.
bool naive_spacing(const WindowSet& p, const std::string& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i] == '1' && x[j] == '1' && !p.contains(static_cast<std::int64_t>(j - i))) return false;
  return true;
}

std::vector<std::string> all_binary(std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t len = 1; len <= max_len; ++len)
    for (std::size_t m = 0; m < (std::size_t{1} << len); ++m) {
      std::string s;
      for (std::size_t b = 0; b < len; ++b) s.push_back((m >> (len - 1 - b)) & 1 ? '1' : '0');
      out.push_back(s);
    }
  return out;
}

// Times t in [1, n] for which some configuration x with x[0..|u|) = u and
// x[t..t+|v|) = v is admissible, found by filling every free cell.
std::set<std::int64_t> brute_hitting(const WindowSet& p, const std::string& u, const std::string& v,
                                     std::int64_t n) {
  std::set<std::int64_t> hits;
  for (std::int64_t t = 1; t <= n; ++t) {
    const std::size_t len = std::max(u.size(), static_cast<std::size_t>(t) + v.size());
    std::string fixed(len, '?');
    bool clash = false;
    for (std::size_t i = 0; i < u.size(); ++i) fixed[i] = u[i];
    for (std::size_t i = 0; i < v.size(); ++i) {
      char& c = fixed[static_cast<std::size_t>(t) + i];
      if (c != '?' && c != v[i]) clash = true;
      c = v[i];
    }
    if (clash) continue;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < len; ++i)
      if (fixed[i] == '?') free.push_back(i);
    for (std::size_t m = 0; m < (std::size_t{1} << free.size()); ++m) {
      std::string x = fixed;
      for (std::size_t b = 0; b < free.size(); ++b) x[free[b]] = (m >> b) & 1 ? '1' : '0';
      if (naive_spacing(p, x)) {
        hits.insert(t);
        break;
      }
    }
  }
  return hits;
}

std::set<std::int64_t> as_set(const WindowSet& a) {
  auto m = a.members();
  return {m.begin(), m.end()};
}

}  // namespace

TEST_CASE("word literals and distance") {
  CHECK(Word::parse("-").empty());
  CHECK(w("0110").str() == "0110");
  CHECK_THROWS_AS(Word::parse(""), ParseError);
  CHECK_THROWS_AS(Word::parse("012"), ParseError);
  CHECK(w("10") < w("000"));
  CHECK(w("01") < w("10"));

  CHECK(word_distance(w("0110"), w("0110")) == 0);
  CHECK(word_distance(w("0110"), w("0100")) == Rational(1, 4));
  CHECK(word_distance(w("1000"), w("0000")) == 1);
  CHECK_THROWS_AS(word_distance(w("01"), w("011")), ParameterError);
  CHECK_THROWS_AS(word_distance(Word(), Word()), ParameterError);
}

TEST_CASE("spacing_member examples") {
  WindowSet evens = setfam::generate_window_set("evens", 32);
  CHECK(spacing_member(evens, w("10001")));
  CHECK(spacing_member(evens, w("101")));
  CHECK_FALSE(spacing_member(evens, w("1001")));
  CHECK(spacing_member(evens, Word::zeros(40)));
  CHECK_THROWS_AS(spacing_member(evens, w("1").power(1) + Word::zeros(40) + w("1")),
                  HorizonExceededError);
}

TEST_CASE("language examples") {
  auto full = language(SubshiftOracle::full(), 2);
  std::vector<std::string> got;
  for (const auto& x : full) got.push_back(x.str());
  CHECK(got == std::vector<std::string>{"-", "0", "1", "00", "01", "10", "11"});

  WindowSet evens = setfam::generate_window_set("evens", 32);
  std::set<std::string> lang;
  for (const auto& x : language(SubshiftOracle::spacing(evens), 3)) lang.insert(x.symbols());
  std::set<std::string> expected{""};
  for (const auto& s : all_binary(3))
    if (naive_spacing(evens, s)) expected.insert(s);
  CHECK(lang == expected);
  CHECK(lang.size() == 11);  // ε + 14 non-empty words minus 11, 110, 011, 111
  CHECK(lang.count("101") == 1);
  CHECK(lang.count("110") == 0);

  CHECK_THROWS_AS(language(SubshiftOracle::full(), 17), BudgetExceededError);
}

TEST_CASE("language respects the node budget") {
  Budget saved = budget();
  Budget tight = saved;
  tight.max_nodes = 100;
  set_budget(tight);
  CHECK_THROWS_AS(language(SubshiftOracle::full(), 8), BudgetExceededError);
  set_budget(saved);
}

TEST_CASE("golden sturmian symbols") {
  auto spec = golden_spec();
  // Independent evaluation in long double; only indices far from the
  // threshold are compared.
  const long double alpha = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  int compared = 0;
  for (std::size_t n = 0; n < 2000; ++n) {
    long double f = std::fmod(static_cast<long double>(n) * alpha, 1.0L);
    if (std::fabs(f - (1.0L - alpha)) < 1e-9L) continue;
    CHECK(sturmian_word(*spec, n) == (f >= 1.0L - alpha ? 1 : 0));
    ++compared;
  }
  CHECK(compared > 1990);

  std::vector<int> first8;
  for (std::size_t n = 0; n < 8; ++n) first8.push_back(sturmian_word(*spec, n));
  CHECK(first8 == std::vector<int>{0, 1, 0, 1, 1, 0, 1, 0});
  CHECK(sturmian_word(*spec, 0) == 0);
  CHECK(sturmian_word(*spec, 1) == 1);
  CHECK_NOTHROW(sturmian_word(*spec, 10000));
  CHECK_THROWS_AS(sturmian_word(*spec, 10001), ParameterError);
}

TEST_CASE("sturmian spec certification") {
  CHECK_THROWS_AS(SturmianSpec(Rational(1, 2), Rational(0), 10), PrecisionError);
  CHECK_THROWS_AS(SturmianSpec::golden(10000, 3), PrecisionError);
  CHECK_THROWS_AS(SturmianSpec(Rational(3, 2), Rational(0), 10), ParameterError);
  CHECK_THROWS_AS(SturmianSpec::from_text("1/3", "", 10), ParameterError);
  auto silver = SturmianSpec::silver(2000);
  CHECK(silver.label() == "silver");
  CHECK(silver.prefix()[1] == 0);  // frac(0.414) < 0.586
  auto custom = SturmianSpec::from_text("0.6180339887498948", "1e-15", 200);
  CHECK(custom.prefix().symbols() == golden_spec()->prefix().subword(0, 200).symbols());
}

TEST_CASE("sturmian language: complexity n + 1 and balance") {
  auto spec = golden_spec();
  SubshiftOracle oracle = SubshiftOracle::sturmian(spec);
  const std::string& x = spec->prefix().symbols();
  std::map<std::size_t, std::set<std::string>> factors;
  for (std::size_t len = 1; len <= 10; ++len)
    for (std::size_t i = 0; i + len <= x.size(); ++i) factors[len].insert(x.substr(i, len));
  std::map<std::size_t, std::set<std::string>> enumerated;
  for (const auto& f : language(oracle, 10))
    if (!f.empty()) enumerated[f.size()].insert(f.symbols());
  for (std::size_t len = 1; len <= 10; ++len) {
    CHECK(factors[len].size() == len + 1);
    CHECK(enumerated[len] == factors[len]);
    int lo = 1 << 30, hi = -1;
    for (const auto& f : factors[len]) {
      int c = static_cast<int>(std::count(f.begin(), f.end(), '1'));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    CHECK(hi - lo <= 1);
  }
  CHECK_THROWS_AS(oracle.accepts(Word::zeros(2501)), BudgetExceededError);
}

TEST_CASE("factor closedness of every oracle kind") {
  std::mt19937_64 rng(23);
  std::vector<SubshiftOracle> oracles{SubshiftOracle::full(),
                                      SubshiftOracle::spacing(random_p(rng, 64)),
                                      SubshiftOracle::spacing(setfam::generate_window_set("evens", 64)),
                                      SubshiftOracle::sturmian(golden_spec())};
  for (const auto& oracle : oracles) {
    for (const auto& x : language(oracle, 10)) {
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t len = 0; i + len <= x.size(); ++len)
          CHECK(oracle.accepts(x.subword(i, len)));
    }
  }
}

TEST_CASE("gap_set examples") {
  const std::int64_t n = 32;
  WindowSet p = setfam::generate_window_set("complement(powers(2))", 64);
  auto oracle = SubshiftOracle::spacing(p);
  WindowSet expected = WindowSet::full(n + 1);
  for (auto r : {1, 3, 7, 15, 31}) expected.erase(r);
  CHECK(gap_set(oracle, w("1"), w("1"), n) == expected);
  CHECK(gap_set(SubshiftOracle::full(), w("0110"), w("1"), 10) == WindowSet::full(11));
  CHECK_THROWS_AS(gap_set(oracle, w("1"), w("1"), 63), HorizonExceededError);
  CHECK_THROWS_AS(gap_set(SubshiftOracle::spacing(setfam::generate_window_set("evens", 64)),
                          w("11"), w("1"), 4),
                  ParameterError);
}

TEST_CASE("property: spacing u = v = 1 gives P - 1") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    WindowSet p = random_p(rng, 80);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 78);
    WindowSet g = gap_set(SubshiftOracle::spacing(p), w("1"), w("1"), n);
    for (std::int64_t k = 0; k <= n; ++k) CHECK(g.contains(k) == p.contains(k + 1));
  }
}

TEST_CASE("property: gap_set fast paths agree with pruned enumeration") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    auto oracle = SubshiftOracle::spacing(random_p(rng, 32));
    auto words = language(oracle, 3);
    for (const auto& u : words)
      for (const auto& v : words) CHECK(gap_set(oracle, u, v, 12) == gap_set_enumerated(oracle, u, v, 12));
  }
  auto sturm = SubshiftOracle::sturmian(golden_spec());
  auto words = language(sturm, 4);
  for (const auto& u : words)
    for (const auto& v : words) CHECK(gap_set(sturm, u, v, 14) == gap_set_enumerated(sturm, u, v, 14));
}

TEST_CASE("cylinder hitting set examples") {
  CHECK(cylinder_hitting_set(SubshiftOracle::full(), w("0"), w("1"), 8) ==
        WindowSet(9, {1, 2, 3, 4, 5, 6, 7, 8}));
  auto evens = SubshiftOracle::spacing(setfam::generate_window_set("evens", 64));
  CHECK(cylinder_hitting_set(evens, w("1"), w("1"), 16) ==
        WindowSet(17, {2, 4, 6, 8, 10, 12, 14, 16}));
  // Overlaps: 101 then 1 at offset 2 is consistent, at offset 1 is not.
  CHECK(cylinder_overlap_hits(evens, w("101"), w("1"), 8) == WindowSet(9, {2}));
}

TEST_CASE("property: cylinder hitting set equals brute force on random P") {
  std::mt19937_64 rng(37);
  const std::int64_t n = 12;
  for (int trial = 0; trial < 3; ++trial) {
    WindowSet p = random_p(rng, 32);
    auto oracle = SubshiftOracle::spacing(p);
    auto words = language(oracle, 3);
    words.erase(words.begin());
    for (const auto& u : words)
      for (const auto& v : words)
        CHECK(as_set(cylinder_hitting_set(oracle, u, v, n)) == brute_hitting(p, u.symbols(), v.symbols(), n));
  }
}

TEST_CASE("fs_transitivity_report examples") {
  FamilyParams params;
  params.gap_bound = 2;
  params.block_len = 8;
  params.cofinite_head = 8;
  params.density_burnin = 8;

  auto pow2 = SubshiftOracle::spacing(setfam::generate_window_set("complement(powers(2))", 128));
  auto r = fs_transitivity_report(pow2, 3, 64, params);
  CHECK(r.all_thick);
  CHECK_FALSE(r.all_cofinite);

  WindowSet cof = WindowSet::tail(128, 4);
  auto rc = fs_transitivity_report(SubshiftOracle::spacing(cof), 3, 64, params);
  CHECK(rc.all_cofinite);
  CHECK(rc.all_thick);

  auto evens = SubshiftOracle::spacing(setfam::generate_window_set("evens", 128));
  auto re = fs_transitivity_report(evens, 3, 64, params);
  CHECK_FALSE(re.all_thick);
  CHECK(re.all_syndetic);

  auto serial = fs_transitivity_report(pow2, 3, 64, params, Exec::kSerial);
  CHECK(transitivity_csv(serial) == transitivity_csv(r));

  std::string csv = transitivity_csv(re);
  CHECK(csv.rfind("u,v,gap_set_members,syndetic,thick,ts,cofinite\n", 0) == 0);
  CHECK(csv.find("\n1,1,1;3;5;7;9") != std::string::npos);
}

TEST_CASE("property: cofinite P gives all-cofinite gap sets") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 12);
    WindowSet p = setfam::set_union(WindowSet::tail(100, m), random_p(rng, 100));
    FamilyParams params;
    params.cofinite_head = m;
    params.block_len = 8;
    REQUIRE(setfam::classify(p, params).cofinite);
    CHECK(fs_transitivity_report(SubshiftOracle::spacing(p), 3, 64, params).all_cofinite);
  }
}

TEST_CASE("spacing_dense_periodic") {
  WindowSet pow2 = setfam::generate_window_set("complement(powers(2))", 256);
  auto rep = spacing_dense_periodic(pow2, 128);
  CHECK(rep.pass);
  for (auto q : pow2.members()) {
    if (q < 2 || q > 64) continue;
    CHECK(is_dense_periodic_witness(pow2, q, 2 * q));
  }
  CHECK_FALSE(is_dense_periodic_witness(pow2, 1, 2));
  CHECK(rep.witnesses.at(1) == 6);
  CHECK_FALSE(rep.skipped.empty());

  auto ev = spacing_dense_periodic(setfam::generate_window_set("evens", 256), 8);
  CHECK(ev.pass);
  for (const auto& [q, k] : ev.witnesses) CHECK(k == 2);

  auto cof = spacing_dense_periodic(WindowSet::tail(256, 4), 64);
  CHECK(cof.pass);
  CHECK(cof.failures.empty());

  CHECK_FALSE(spacing_dense_periodic(WindowSet(256, {3, 5, 7}), 64).pass);
}

TEST_CASE("spacing_witness") {
  WindowSet evens = setfam::generate_window_set("evens", 64);
  auto bad = spacing_witness(w("1"), 4, w("1"), evens);
  CHECK(bad.word.str() == "100001");
  CHECK_FALSE(bad.member);
  CHECK(spacing_witness(w("1"), 3, w("1"), evens).member);
  CHECK(spacing_witness(w("1"), 7, Word(), evens).word.str() == "10000000");
  CHECK(spacing_witness(w("1"), 7, Word(), evens).member);

  WindowSet pow2 = setfam::generate_window_set("complement(powers(2))", 64);
  auto good = spacing_witness(w("11"), 9, w("11"), pow2);
  CHECK(good.block_start);
  CHECK(good.member);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    WindowSet p = random_p(rng, 64);
    auto oracle = SubshiftOracle::spacing(p);
    auto words = language(oracle, 3);
    for (int rep = 0; rep < 20; ++rep) {
      const Word& u = words[rng() % words.size()];
      const Word& v = words[rng() % words.size()];
      auto r = spacing_witness(u, static_cast<std::int64_t>(rng() % 40), v, p);
      if (r.block_start) CHECK(r.member);
    }
  }
}

TEST_CASE("occurrence gaps of golden factors") {
  auto spec = golden_spec();
  SubshiftOracle oracle = SubshiftOracle::sturmian(spec);
  for (const auto& f : language(oracle, 8)) {
    if (f.empty()) continue;
    WindowSet occ = occurrence_gaps(*spec, f);
    REQUIRE_FALSE(occ.empty());
    CHECK(setfam::max_gap(occ) <= 34);
  }
  CHECK(occurrence_gaps(*spec, w("00")).empty());
  CHECK_FALSE(occurrence_gaps(*spec, w("1")).empty());
  CHECK_THROWS_AS(occurrence_gaps(*spec, Word::zeros(2501)), ParameterError);
}

TEST_CASE("periodicity probe") {
  CHECK(periodicity_probe(SubshiftOracle::full(), 1, 8));
  CHECK(periodicity_probe(SubshiftOracle::spacing(setfam::generate_window_set("evens", 64)), 2, 8));
  CHECK_FALSE(periodicity_probe(SubshiftOracle::sturmian(golden_spec()), 6, 8));
  // Cubes do occur in the golden word ((101)^3 is a factor), so k = 3 succeeds.
  CHECK(periodicity_probe(SubshiftOracle::sturmian(golden_spec()), 6, 3));
}
