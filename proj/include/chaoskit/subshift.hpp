#pragma once

// One-sided binary subshifts given by a factor-closed membership oracle:
// the full shift, spacing shifts Σ_P and Sturmian subshifts. Provides the
// language, gap sets {|w| : uwv ∈ L(X)}, cylinder hitting sets and the
// family-transitivity report built on them.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "chaoskit/parallel.hpp"
#include "chaoskit/setfam.hpp"
#include "chaoskit/sturmian.hpp"
#include "chaoskit/word.hpp"

namespace chaoskit::subshift {

// True iff every distance between two 1-positions of w lies in P ∪ {0}.
// Throws HorizonExceededError when the span between the outermost 1s is not
// below P's horizon.
bool spacing_member(const setfam::WindowSet& p, const Word& w);

class SubshiftOracle {
 public:
  enum class Kind { kFull, kSpacing, kSturmian };

  static SubshiftOracle full();
  static SubshiftOracle spacing(setfam::WindowSet p);
  static SubshiftOracle sturmian(std::shared_ptr<const SturmianSpec> spec);

  Kind kind() const;
  // Factor-closed membership. For Sturmian oracles, words longer than
  // prefix_len / 4 raise BudgetExceededError.
  bool accepts(const Word& w) const;

  const setfam::WindowSet& spacing_set() const;
  const SturmianSpec& sturmian_spec() const;
  std::string describe() const;

 private:
  struct Full {};
  struct Spacing {
    setfam::WindowSet p;
  };
  struct Sturmian {
    std::shared_ptr<const SturmianSpec> spec;
  };
  explicit SubshiftOracle(std::variant<Full, Spacing, Sturmian> v) : impl_(std::move(v)) {}
  std::variant<Full, Spacing, Sturmian> impl_;
};

// All accepted words of length <= max_len, shortlex order, ε first.
// Enumeration extends accepted words only. BudgetExceededError when max_len
// exceeds the word-length budget (or prefix_len / 4 for Sturmian oracles) or
// the enumeration visits more than the node budget.
std::vector<Word> language(const SubshiftOracle& oracle, std::size_t max_len);

// {k in [0, n] : u w v accepted for some |w| = k}, on horizon n + 1.
// ParameterError unless u and v are accepted.
setfam::WindowSet gap_set(const SubshiftOracle& oracle, const Word& u, const Word& v,
                          std::int64_t n);

// Same set computed by exhaustive enumeration of every w in {0,1}^k.
// Exponential; intended as an independent cross-check for small n.
setfam::WindowSet gap_set_enumerated(const SubshiftOracle& oracle, const Word& u, const Word& v,
                                     std::int64_t n);

// N_σ(C[u], C[v]) ∩ [1, n] on horizon n + 1: times t at which some point
// starting with u has v at offset t.
setfam::WindowSet cylinder_hitting_set(const SubshiftOracle& oracle, const Word& u, const Word& v,
                                       std::int64_t n);

// Only the overlapping times 1 <= t < |u| of cylinder_hitting_set.
setfam::WindowSet cylinder_overlap_hits(const SubshiftOracle& oracle, const Word& u,
                                        const Word& v, std::int64_t n);

struct PairVerdict {
  Word u;
  Word v;
  setfam::WindowSet gaps;
  setfam::FamilyVerdict verdict;
};

struct TransitivityReport {
  std::vector<PairVerdict> pairs;  // ordered by (u, v) shortlex
  bool all_syndetic = true;
  bool all_thick = true;
  bool all_thickly_syndetic = true;
  bool all_piecewise_syndetic = true;
  bool all_cofinite = true;
};

// Classifies gap_set(u, v, n) for every ordered pair of non-empty accepted
// words of length <= max_len.
TransitivityReport fs_transitivity_report(const SubshiftOracle& oracle, std::size_t max_len,
                                          std::int64_t n, const setfam::FamilyParams& params,
                                          Exec exec = Exec::kParallel);

// CSV: u,v,gap_set_members,syndetic,thick,ts,cofinite. Members are ';'
// separated.
std::string transitivity_csv(const TransitivityReport& report);

struct DensePeriodicReport {
  bool pass = true;
  std::map<std::int64_t, std::int64_t> witnesses;  // p -> least k
  std::vector<std::int64_t> failures;              // tested p without a witness
  std::vector<std::int64_t> skipped;               // members p > horizon / 4
};

// True iff kN, kN + p and kN - p (positive terms) restricted to the window
// all lie in P. Requires k + p < horizon so every progression is observed.
bool is_dense_periodic_witness(const setfam::WindowSet& p, std::int64_t period_gap,
                               std::int64_t k);

// For each member p in [1, horizon / 4], searches k in [1, k_max].
DensePeriodicReport spacing_dense_periodic(const setfam::WindowSet& p, std::int64_t k_max);

struct SpacingWitness {
  Word word;             // u 0^k v
  bool member = false;   // spacing_member(P, word)
  bool block_start = false;  // {k, ..., k + |u| + |v| - 1} ⊆ P
};

SpacingWitness spacing_witness(const Word& u, std::int64_t k, const Word& v,
                               const setfam::WindowSet& p);

// Start positions of w in the certified prefix, on horizon
// prefix_len - |w| + 1. ParameterError when |w| > prefix_len / 4.
setfam::WindowSet occurrence_gaps(const SturmianSpec& spec, const Word& w);

// True iff some non-empty accepted w with |w| <= max_len has w^k accepted.
bool periodicity_probe(const SubshiftOracle& oracle, std::size_t max_len, std::size_t k);

}  // namespace chaoskit::subshift
