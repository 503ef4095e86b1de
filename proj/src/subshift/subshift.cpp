#include "chaoskit/subshift.hpp"

#include <sstream>

#include "chaoskit/budget.hpp"
#include "chaoskit/error.hpp"

namespace chaoskit::subshift {

using setfam::WindowSet;

bool spacing_member(const WindowSet& p, const Word& w) {
  const auto ones = w.ones();
  if (ones.size() < 2) return true;
  const auto span = static_cast<std::int64_t>(ones.back() - ones.front());
  if (span >= p.horizon())
    throw HorizonExceededError("spacing_member: gap " + std::to_string(span) +
                               " not decidable from P (horizon " + std::to_string(p.horizon()) + ")");
  for (std::size_t a = 0; a < ones.size(); ++a)
    for (std::size_t b = a + 1; b < ones.size(); ++b)
      if (!p.contains(static_cast<std::int64_t>(ones[b] - ones[a]))) return false;
  return true;
}

SubshiftOracle SubshiftOracle::full() { return SubshiftOracle(Full{}); }

SubshiftOracle SubshiftOracle::spacing(WindowSet p) { return SubshiftOracle(Spacing{std::move(p)}); }

SubshiftOracle SubshiftOracle::sturmian(std::shared_ptr<const SturmianSpec> spec) {
  if (!spec) throw ParameterError("sturmian oracle needs a spec");
  return SubshiftOracle(Sturmian{std::move(spec)});
}

SubshiftOracle::Kind SubshiftOracle::kind() const {
  if (std::holds_alternative<Full>(impl_)) return Kind::kFull;
  if (std::holds_alternative<Spacing>(impl_)) return Kind::kSpacing;
  return Kind::kSturmian;
}

namespace {

std::size_t sturmian_word_cap(const SturmianSpec& spec) { return spec.prefix_len() / 4; }

}  // namespace

bool SubshiftOracle::accepts(const Word& w) const {
  if (auto* s = std::get_if<Spacing>(&impl_)) return spacing_member(s->p, w);
  if (auto* s = std::get_if<Sturmian>(&impl_)) {
    if (w.size() > sturmian_word_cap(*s->spec))
      throw BudgetExceededError("sturmian oracle: word length " + std::to_string(w.size()) +
                                " exceeds prefix_len/4");
    return s->spec->prefix().symbols().find(w.symbols()) != std::string::npos;
  }
  return true;
}

const WindowSet& SubshiftOracle::spacing_set() const {
  if (auto* s = std::get_if<Spacing>(&impl_)) return s->p;
  throw ParameterError("oracle is not a spacing shift");
}

const SturmianSpec& SubshiftOracle::sturmian_spec() const {
  if (auto* s = std::get_if<Sturmian>(&impl_)) return *s->spec;
  throw ParameterError("oracle is not a sturmian shift");
}

std::string SubshiftOracle::describe() const {
  switch (kind()) {
    case Kind::kFull:
      return "full";
    case Kind::kSpacing:
      return "spacing(horizon=" + std::to_string(spacing_set().horizon()) + ")";
    case Kind::kSturmian:
      return "sturmian(" + sturmian_spec().label() + ", prefix_len=" +
             std::to_string(sturmian_spec().prefix_len()) + ")";
  }
  return "";
}

std::vector<Word> language(const SubshiftOracle& oracle, std::size_t max_len) {
  const Budget& b = budget();
  if (max_len > b.max_word_len)
    throw BudgetExceededError("language: length " + std::to_string(max_len) + " exceeds budget " +
                              std::to_string(b.max_word_len));
  if (oracle.kind() == SubshiftOracle::Kind::kSturmian &&
      max_len > sturmian_word_cap(oracle.sturmian_spec()))
    throw BudgetExceededError("language: length exceeds prefix_len/4");

  std::vector<Word> out{Word()};
  std::vector<Word> level{Word()};
  std::size_t nodes = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : level) {
      for (int s = 0; s < 2; ++s) {
        if (++nodes > b.max_nodes) throw BudgetExceededError("language: node budget exhausted");
        Word x = w;
        x.push_back(s);
        if (oracle.accepts(x)) next.push_back(std::move(x));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

namespace {

void check_gap_args(const SubshiftOracle& oracle, const Word& u, const Word& v, std::int64_t n) {
  if (n < 0) throw ParameterError("gap window must be non-negative");
  if (static_cast<std::size_t>(n) > budget().max_gap_window)
    throw BudgetExceededError("gap window " + std::to_string(n) + " exceeds budget");
  if (!oracle.accepts(u)) throw ParameterError("u = " + u.str() + " is not in the language");
  if (!oracle.accepts(v)) throw ParameterError("v = " + v.str() + " is not in the language");
}

// Erasing 1s keeps a spacing word admissible, so some w of length k works iff
// u 0^k v does, and only the gaps across the block of zeros need checking.
WindowSet spacing_gap_set(const WindowSet& p, const Word& u, const Word& v, std::int64_t n) {
  WindowSet out(n + 1);
  const auto ou = u.ones();
  const auto ov = v.ones();
  if (ou.empty() || ov.empty()) return WindowSet::full(n + 1);
  const auto lu = static_cast<std::int64_t>(u.size());
  const std::int64_t widest = lu - static_cast<std::int64_t>(ou.front()) + n +
                              static_cast<std::int64_t>(ov.back());
  if (widest >= p.horizon())
    throw HorizonExceededError("gap_set: cross gap " + std::to_string(widest) +
                               " not decidable from P (horizon " + std::to_string(p.horizon()) + ")");
  for (std::int64_t k = 0; k <= n; ++k) {
    bool ok = true;
    for (auto i : ou) {
      for (auto j : ov) {
        if (!p.contains(lu - static_cast<std::int64_t>(i) + k + static_cast<std::int64_t>(j))) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) out.insert(k);
  }
  return out;
}

// Scans the certified prefix: k is a gap iff u occurs at i and v at i+|u|+k.
WindowSet sturmian_gap_set(const SturmianSpec& spec, const Word& u, const Word& v, std::int64_t n) {
  const std::size_t total = u.size() + static_cast<std::size_t>(n) + v.size();
  if (total > sturmian_word_cap(spec))
    throw BudgetExceededError("gap_set: |u| + N + |v| exceeds prefix_len/4");
  const std::string& x = spec.prefix().symbols();
  const std::size_t len = x.size();
  std::vector<char> v_at(len + 1, 0);
  for (std::size_t j = 0; j + v.size() <= len; ++j)
    v_at[j] = x.compare(j, v.size(), v.symbols()) == 0;
  WindowSet out(n + 1);
  for (std::size_t i = 0; i + u.size() <= len; ++i) {
    if (x.compare(i, u.size(), u.symbols()) != 0) continue;
    for (std::int64_t k = 0; k <= n; ++k) {
      const std::size_t j = i + u.size() + static_cast<std::size_t>(k);
      if (j + v.size() > len) break;
      if (v_at[j]) out.insert(k);
    }
  }
  return out;
}

}  // namespace

WindowSet gap_set(const SubshiftOracle& oracle, const Word& u, const Word& v, std::int64_t n) {
  check_gap_args(oracle, u, v, n);
  switch (oracle.kind()) {
    case SubshiftOracle::Kind::kFull:
      return WindowSet::full(n + 1);
    case SubshiftOracle::Kind::kSpacing:
      return spacing_gap_set(oracle.spacing_set(), u, v, n);
    case SubshiftOracle::Kind::kSturmian:
      return sturmian_gap_set(oracle.sturmian_spec(), u, v, n);
  }
  return WindowSet(n + 1);
}

WindowSet gap_set_enumerated(const SubshiftOracle& oracle, const Word& u, const Word& v,
                             std::int64_t n) {
  check_gap_args(oracle, u, v, n);
  WindowSet out(n + 1);
  const std::size_t max_nodes = budget().max_nodes;
  std::size_t nodes = 0;
  // Depth-first over accepted extensions u w; prefixes that fail are pruned.
  Word cur = u;
  auto visit = [&](auto&& self, std::int64_t k) -> void {
    if (++nodes > max_nodes) throw BudgetExceededError("gap_set: node budget exhausted");
    if (!out.contains(k) && oracle.accepts(cur + v)) out.insert(k);
    if (k == n) return;
    for (int s = 0; s < 2; ++s) {
      cur.push_back(s);
      if (oracle.accepts(cur)) self(self, k + 1);
      cur.pop_back();
    }
  };
  visit(visit, 0);
  return out;
}

WindowSet cylinder_overlap_hits(const SubshiftOracle& oracle, const Word& u, const Word& v,
                                std::int64_t n) {
  check_gap_args(oracle, u, v, n);
  WindowSet out(n + 1);
  const auto lu = static_cast<std::int64_t>(u.size());
  for (std::int64_t t = 1; t < lu && t <= n; ++t) {
    const std::size_t shared = std::min<std::size_t>(v.size(), u.size() - static_cast<std::size_t>(t));
    bool consistent = true;
    for (std::size_t i = 0; i < shared && consistent; ++i)
      consistent = u[static_cast<std::size_t>(t) + i] == v[i];
    if (!consistent) continue;
    Word z = u;
    if (v.size() > shared) z = z + v.subword(shared, v.size() - shared);
    if (oracle.accepts(z)) out.insert(t);
  }
  return out;
}

WindowSet cylinder_hitting_set(const SubshiftOracle& oracle, const Word& u, const Word& v,
                               std::int64_t n) {
  WindowSet out = cylinder_overlap_hits(oracle, u, v, n);
  const auto lu = static_cast<std::int64_t>(u.size());
  if (n >= lu) {
    for (auto s : gap_set(oracle, u, v, n - lu).members())
      if (lu + s >= 1) out.insert(lu + s);
  }
  return out;
}

TransitivityReport fs_transitivity_report(const SubshiftOracle& oracle, std::size_t max_len,
                                          std::int64_t n, const setfam::FamilyParams& params,
                                          Exec exec) {
  params.validate();
  std::vector<Word> words = language(oracle, max_len);
  words.erase(words.begin());  // ε
  TransitivityReport report;
  report.pairs.resize(words.size() * words.size(), PairVerdict{});
  for_each_index(report.pairs.size(), exec, [&](std::size_t idx) {
    PairVerdict& row = report.pairs[idx];
    row.u = words[idx / words.size()];
    row.v = words[idx % words.size()];
    row.gaps = gap_set(oracle, row.u, row.v, n);
    row.verdict = setfam::classify(row.gaps, params);
  });
  for (const auto& row : report.pairs) {
    report.all_syndetic = report.all_syndetic && row.verdict.syndetic;
    report.all_thick = report.all_thick && row.verdict.thick;
    report.all_thickly_syndetic = report.all_thickly_syndetic && row.verdict.thickly_syndetic;
    report.all_piecewise_syndetic = report.all_piecewise_syndetic && row.verdict.piecewise_syndetic;
    report.all_cofinite = report.all_cofinite && row.verdict.cofinite;
  }
  return report;
}

std::string transitivity_csv(const TransitivityReport& report) {
  std::ostringstream out;
  out << "u,v,gap_set_members,syndetic,thick,ts,cofinite\n";
  auto flag = [](bool b) { return b ? "true" : "false"; };
  for (const auto& row : report.pairs) {
    out << row.u.str() << ',' << row.v.str() << ',';
    bool first = true;
    for (auto m : row.gaps.members()) {
      out << (first ? "" : ";") << m;
      first = false;
    }
    out << ',' << flag(row.verdict.syndetic) << ',' << flag(row.verdict.thick) << ','
        << flag(row.verdict.thickly_syndetic) << ',' << flag(row.verdict.cofinite) << '\n';
  }
  return out.str();
}

bool is_dense_periodic_witness(const WindowSet& p, std::int64_t period_gap, std::int64_t k) {
  const std::int64_t h = p.horizon();
  if (period_gap < 1 || k < 1) throw ParameterError("dense periodic witness: p and k must be >= 1");
  if (k + period_gap >= h)
    throw HorizonExceededError("dense periodic witness: k + p must lie below the horizon");
  for (std::int64_t m = k; m < h; m += k) {
    if (!p.contains(m)) return false;
    if (m + period_gap < h && !p.contains(m + period_gap)) return false;
    if (m - period_gap > 0 && !p.contains(m - period_gap)) return false;
  }
  return true;
}

DensePeriodicReport spacing_dense_periodic(const WindowSet& p, std::int64_t k_max) {
  if (k_max < 1) throw ParameterError("spacing_dense_periodic: Kmax must be >= 1");
  DensePeriodicReport report;
  const std::int64_t h = p.horizon();
  for (auto q : p.members()) {
    if (q < 1) continue;
    if (q > h / 4) {
      report.skipped.push_back(q);
      continue;
    }
    bool found = false;
    for (std::int64_t k = 1; k <= k_max && k + q < h; ++k) {
      if (is_dense_periodic_witness(p, q, k)) {
        report.witnesses[q] = k;
        found = true;
        break;
      }
    }
    if (!found) report.failures.push_back(q);
  }
  report.pass = report.failures.empty();
  return report;
}

SpacingWitness spacing_witness(const Word& u, std::int64_t k, const Word& v, const WindowSet& p) {
  if (k < 0) throw ParameterError("spacing_witness: k must be non-negative");
  SpacingWitness out;
  out.word = u + Word::zeros(static_cast<std::size_t>(k)) + v;
  out.member = spacing_member(p, out.word);
  const auto block = static_cast<std::int64_t>(u.size() + v.size());
  out.block_start = true;
  for (std::int64_t i = k; i < k + block; ++i) {
    if (i >= p.horizon() || !p.contains(i)) {
      out.block_start = false;
      break;
    }
  }
  return out;
}

WindowSet occurrence_gaps(const SturmianSpec& spec, const Word& w) {
  if (w.size() > sturmian_word_cap(spec))
    throw ParameterError("occurrence_gaps: |w| exceeds prefix_len/4");
  const std::string& x = spec.prefix().symbols();
  const auto h = static_cast<std::int64_t>(x.size() - w.size() + 1);
  WindowSet out(h);
  for (std::int64_t i = 0; i < h; ++i)
    if (x.compare(static_cast<std::size_t>(i), w.size(), w.symbols()) == 0) out.insert(i);
  return out;
}

bool periodicity_probe(const SubshiftOracle& oracle, std::size_t max_len, std::size_t k) {
  if (k < 1) throw ParameterError("periodicity_probe: k must be >= 1");
  for (const Word& w : language(oracle, max_len))
    if (!w.empty() && oracle.accepts(w.power(k))) return true;
  return false;
}

}  // namespace chaoskit::subshift
