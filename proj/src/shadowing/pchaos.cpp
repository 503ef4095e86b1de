#include "chaoskit/error.hpp"
#include "chaoskit/shadowing.hpp"

namespace chaoskit::shadowing {

namespace {

bool discrete_dense_periodic(const System& sys, std::size_t n) {
  // Discrete metric: dense periodic points means every point is periodic.
  for (std::size_t x = 0; x < n; ++x) {
    const auto orbit = sys.tracer_orbit(Rational(static_cast<unsigned long>(x)), n);
    bool back = false;
    for (std::size_t k = 1; k <= n && !back; ++k) back = orbit[k] == static_cast<double>(x);
    if (!back) return false;
  }
  return true;
}

}  // namespace

PChaosReport p_chaos_report(const System& sys, const PChaosParams& params, Exec exec) {
  PChaosReport r;
  r.system = sys.name();
  const auto* pl = dynamic_cast<const IntervalSystem*>(&sys);

  if (pl) {
    const auto d = interval::periodic_density_report(pl->map(), params.density_eps, params.n_max);
    r.dense_periodic = d.covered == d.cells;
  } else {
    r.dense_periodic = discrete_dense_periodic(sys, sys.grid(Rational(1)).size());
  }

  std::optional<bool> full_full;
  for (const auto& [gen, targets] : params.pairs) {
    ProbeParams p = params.probe;
    p.f_gen = gen;
    p.targets = targets;
    PairOutcome o{gen, targets, fg_shadowing_probe(sys, p, exec)};
    if (gen == AGenerator::kFull && targets == std::vector<Target>{Target::kFull})
      full_full = o.probe.verdict == ProbeVerdict::kPass;
    r.pairs.push_back(std::move(o));
  }
  if (!full_full) {
    ProbeParams p = params.probe;
    p.f_gen = AGenerator::kFull;
    p.targets = {Target::kFull};
    full_full = fg_shadowing_probe(sys, p, exec).verdict == ProbeVerdict::kPass;
  }
  r.shadowing = *full_full;
  r.p_chaotic = r.dense_periodic && r.shadowing;

  if (pl) {
    const auto g = chain_graph(pl->map(), params.chain_delta, params.chain_mesh, exec);
    r.chain_transitive = chain_transitive_check(g);
    r.chain_mixing = r.chain_transitive && chain_mixing_check(g, params.chain_steps, exec);
    const auto dev = interval::devaney_report(pl->map(), params.devaney, exec);
    r.fcf_devaney = dev.family(interval::FamilyTag::kCofinite).devaney;
    if (!dev.theorem_consistent) r.notes.push_back("Devaney scan flagged an anomaly");
  } else {
    r.notes.push_back("chain and Devaney checks need a PL interval map");
  }

  if (r.p_chaotic && !r.chain_transitive && pl)
    r.notes.push_back("P-chaotic at window scale but the delta-chain graph is not transitive");
  if (r.p_chaotic && r.fcf_devaney && !*r.fcf_devaney)
    r.notes.push_back("P-chaotic at window scale but Fcf-Devaney fails on the grid");
  if (!r.p_chaotic && r.fcf_devaney && *r.fcf_devaney)
    r.notes.push_back("Fcf-Devaney holds on the grid but P-chaos was not confirmed");
  for (const auto& o : r.pairs)
    if (o.probe.verdict == ProbeVerdict::kUndetermined)
      r.notes.push_back(std::string("probe (") + generator_name(o.f_gen) + ") undetermined across the delta ladder");
  return r;
}

}  // namespace chaoskit::shadowing
