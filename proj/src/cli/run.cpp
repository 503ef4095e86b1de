#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "chaoskit/cli.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/interval.hpp"
#include "chaoskit/shadowing.hpp"
#include "chaoskit/subshift.hpp"

namespace chaoskit::cli {

namespace {

using setfam::WindowSet;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* tf(bool b) { return b ? "true" : "false"; }
const char* pf(bool b) { return b ? "pass" : "fail"; }

std::string join_members(const WindowSet& s) {
  std::string out;
  for (auto m : s.members()) {
    if (!out.empty()) out += ';';
    out += std::to_string(m);
  }
  return out;
}

std::string density_csv(const WindowSet& s, std::int64_t burnin) {
  std::ostringstream os;
  os << "n,density\n";
  std::int64_t n = burnin;
  for (const auto& d : setfam::density_profile(s, burnin)) os << n++ << ',' << d.count << '/' << d.n << '\n';
  return os.str();
}

std::string membership_csv(const WindowSet& s) {
  std::ostringstream os;
  os << "n,member\n";
  for (std::int64_t i = 0; i < s.horizon(); ++i) os << i << ',' << (s.contains(i) ? 1 : 0) << '\n';
  return os.str();
}

WindowSet system_set(const RunConfig& c) {
  return setfam::generate_window_set(c.system.set_expr, c.system.horizon, c.system.members);
}

interval::PLMap system_map(const RunConfig& c) {
  const std::string& m = c.system.map;
  if (m.rfind("domain=", 0) != 0) return interval::PLMap::builtin(m);
  std::string text = m;
  std::replace(text.begin(), text.end(), '|', '\n');
  return interval::PLMap::parse(text);
}

std::string map_label(const RunConfig& c) {
  return c.system.map.rfind("domain=", 0) == 0 ? std::string("literal") : c.system.map;
}

std::unique_ptr<shadowing::System> make_system(const RunConfig& c) {
  if (c.system.kind == SystemKind::kDiscrete) return std::make_unique<shadowing::DiscreteSystem>(c.system.table);
  auto s = std::make_unique<shadowing::IntervalSystem>(system_map(c));
  s->set_name(map_label(c));
  return s;
}

void write_family_verdict(std::ostream& os, const setfam::FamilyVerdict& v) {
  os << "syndetic=" << tf(v.syndetic) << " max_gap=" << v.max_gap << '\n'
     << "thick=" << tf(v.thick) << " longest_block=" << v.longest_block << '\n'
     << "thickly_syndetic=" << tf(v.thickly_syndetic) << '\n'
     << "piecewise_syndetic=" << tf(v.piecewise_syndetic)
     << " longest_syndetic_span=" << v.longest_syndetic_span << '\n'
     << "cofinite_head=" << v.cofinite_head << '\n'
     << "lower_density=" << v.lower_density.to_string() << " upper_density=" << v.upper_density.to_string()
     << '\n';
}

void classify_set(const RunConfig& c, RunResult& r, std::ostream& os) {
  const WindowSet s = system_set(c);
  const auto v = setfam::classify(s, c.family);
  os << "== classify-set ==\n"
     << "set=" << c.system.set_expr << " horizon=" << s.horizon() << " members=" << s.size() << '\n';
  write_family_verdict(os, v);
  os << "summary: syndetic=" << tf(v.syndetic) << " ts=" << tf(v.thickly_syndetic)
     << " ps=" << tf(v.piecewise_syndetic) << " thick=" << tf(v.thick) << " cofinite=" << tf(v.cofinite)
     << "\n\n";
  r.files["classify_density.csv"] = density_csv(s, c.family.density_burnin);
  r.files["classify_members.csv"] = membership_csv(s);
}

void spacing(const RunConfig& c, RunResult& r, std::ostream& os, Exec exec) {
  const WindowSet p = system_set(c);
  const auto oracle = subshift::SubshiftOracle::spacing(p);
  const auto n = c.subshift.gap_horizon;
  os << "== spacing ==\n" << "P=" << c.system.set_expr << " horizon=" << p.horizon() << '\n';

  const auto pv = setfam::classify(p, c.family);
  os << "mixing=" << tf(pv.cofinite) << " (criterion: P cofinite)\n";

  const auto one = subshift::Word::parse("1");
  const auto gaps = subshift::gap_set(oracle, one, one, n);
  WindowSet shifted(n + 1);
  for (auto m : setfam::shift_down(p, 1).members())
    if (m <= n) shifted.insert(m);
  os << "gap_set(1,1," << n << ")=P-1: " << tf(gaps == shifted) << '\n';

  const auto t = subshift::fs_transitivity_report(oracle, c.subshift.max_len, n, c.family, exec);
  os << "transitivity: words<=" << c.subshift.max_len << " pairs=" << t.pairs.size()
     << " syndetic=" << tf(t.all_syndetic) << " thick=" << tf(t.all_thick)
     << " ts=" << tf(t.all_thickly_syndetic) << " ps=" << tf(t.all_piecewise_syndetic)
     << " cofinite=" << tf(t.all_cofinite) << '\n';
  r.files["spacing_transitivity.csv"] = subshift::transitivity_csv(t);

  const auto d = subshift::spacing_dense_periodic(p, c.subshift.k_max);
  os << "dense_periodic=" << pf(d.pass) << " tested=" << d.witnesses.size() + d.failures.size()
     << " failures=" << d.failures.size() << " skipped=" << d.skipped.size() << '\n';
  if (!d.failures.empty()) {
    os << "failed p:";
    for (auto f : d.failures) os << ' ' << f;
    os << '\n';
  }
  std::ostringstream csv;
  csv << "p,k\n";
  std::vector<std::pair<std::int64_t, std::string>> rows;
  for (const auto& [pp, k] : d.witnesses) rows.emplace_back(pp, std::to_string(k));
  for (auto f : d.failures) rows.emplace_back(f, "none");
  std::sort(rows.begin(), rows.end());
  for (const auto& [pp, k] : rows) csv << pp << ',' << k << '\n';
  r.files["spacing_dense_periodic.csv"] = csv.str();
  os << '\n';
}

void sturmian(const RunConfig& c, RunResult& r, std::ostream& os) {
  auto spec = std::make_shared<const subshift::SturmianSpec>(
      subshift::SturmianSpec::from_text(c.system.alpha, c.system.ulp, c.system.prefix));
  const auto oracle = subshift::SubshiftOracle::sturmian(spec);
  os << "== sturmian ==\n"
     << "alpha=" << c.system.alpha << " prefix=" << spec->prefix_len() << '\n'
     << "head=" << spec->prefix().symbols().substr(0, std::min<std::size_t>(32, spec->prefix_len())) << '\n';

  const auto words = subshift::language(oracle, c.subshift.factor_len);
  std::vector<std::size_t> counts(c.subshift.factor_len + 1, 0);
  for (const auto& w : words) ++counts[w.size()];
  bool n_plus_one = true;
  std::ostringstream cx;
  cx << "n,factors\n";
  os << "complexity:";
  for (std::size_t k = 0; k < counts.size(); ++k) {
    os << ' ' << counts[k];
    cx << k << ',' << counts[k] << '\n';
    n_plus_one = n_plus_one && counts[k] == k + 1;
  }
  os << "\ncomplexity=n+1: " << tf(n_plus_one) << '\n';
  r.files["sturmian_complexity.csv"] = cx.str();

  std::ostringstream og;
  og << "word,max_gap\n";
  std::int64_t worst = 0;
  std::size_t factors = 0;
  for (const auto& w : words) {
    if (w.empty() || w.size() > c.subshift.occurrence_len) continue;
    const auto g = setfam::max_gap(subshift::occurrence_gaps(*spec, w));
    worst = std::max(worst, g);
    ++factors;
    og << w.str() << ',' << g << '\n';
  }
  os << "occurrence max_gap over " << factors << " factors of length<=" << c.subshift.occurrence_len << ": "
     << worst << '\n';
  r.files["sturmian_occurrence.csv"] = og.str();

  os << "periodicity_probe(L=" << c.subshift.periodicity_len << ",k=" << c.subshift.periodicity_k
     << ")=" << tf(subshift::periodicity_probe(oracle, c.subshift.periodicity_len, c.subshift.periodicity_k))
     << "\n\n";
}

interval::DevaneyParams devaney_params(const RunConfig& c, const interval::PLMap& f) {
  interval::DevaneyParams p;
  p.u_grid = interval::default_grid(f, c.interval.grid);
  p.v_grid = p.u_grid;
  p.delta = c.interval.delta;
  p.horizon = c.interval.horizon;
  p.family = c.interval.family;
  p.eps = c.interval.eps;
  p.n_max = c.interval.n_max;
  p.strict = c.interval.strict;
  return p;
}

void interval_devaney_exact(const RunConfig& c, RunResult& r, std::ostream& os, Exec exec) {
  const auto f = system_map(c);
  const auto p = devaney_params(c, f);
  const auto d = interval::devaney_report(f, p, exec);
  os << "== interval-devaney ==\n"
     << "map=" << map_label(c) << " domain=" << interval::to_string(f.domain()) << " pieces=" << f.pieces()
     << '\n'
     << "grid=" << d.u_grid.size() << " delta=" << to_string(p.delta) << " horizon=" << p.horizon << '\n';
  os << "fixed_points:";
  for (const auto& x : interval::periodic_points(f, 1).points) os << ' ' << to_string(x.point);
  os << '\n'
     << "periodic density: covered=" << d.density.covered << '/' << d.density.cells
     << " fraction=" << to_string(d.density.covered_fraction) << " periods_scanned=" << d.density.periods_scanned
     << '\n'
     << "dense_periodic=" << tf(d.dense_periodic) << '\n';
  for (const auto& fam : d.families)
    os << interval::family_name(fam.tag) << ": transitive=" << tf(fam.transitive) << " sensitive=" << tf(fam.sensitive)
       << " anomaly=" << tf(fam.anomaly) << '\n';
  bool first = true;
  for (const auto& fam : d.families) {
    os << (first ? "" : " ") << interval::family_name(fam.tag) << '=' << pf(fam.devaney);
    first = false;
  }
  os << "\ntheorem_consistent=" << tf(d.theorem_consistent) << '\n';

  os << "leo:";
  for (const auto& u : d.u_grid) {
    auto n = interval::leo_check(f, u, p.horizon);
    os << ' ' << (n ? std::to_string(*n) : std::string("none"));
  }
  os << "\n\n";

  for (std::size_t i = 0; i < d.sensitivity.size(); ++i)
    r.files["hitting_sensitivity_U" + std::to_string(i) + ".csv"] = interval::hitting_set_csv(d.sensitivity[i]);
  std::ostringstream t;
  t << "u,v,members\n";
  const std::size_t nv = d.v_grid.size();
  for (std::size_t k = 0; k < d.transitivity.size(); ++k)
    t << k / nv << ',' << k % nv << ',' << join_members(d.transitivity[k].set) << '\n';
  r.files["hitting_transitivity.csv"] = t.str();
}

void interval_devaney_sampled(const RunConfig& c, RunResult& r, std::ostream& os, Exec exec) {
  const auto f = system_map(c);
  const double mesh = to_double(c.system.sample_mesh);
  const auto g = interval::SampledMap::from_pl(f, mesh);
  const auto grid = interval::default_grid(f, c.interval.grid);
  const double delta = to_double(c.interval.delta);
  const auto n = c.interval.horizon;
  std::vector<interval::HittingSet> sens(grid.size());
  std::vector<interval::HittingSet> trans(grid.size() * grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t i) {
    sens[i] = interval::sensitivity_hitting_set(g, to_double(grid[i].lo), to_double(grid[i].hi), delta, n);
  });
  for_each_index(trans.size(), exec, [&](std::size_t k) {
    const auto& u = grid[k / grid.size()];
    const auto& v = grid[k % grid.size()];
    trans[k] = interval::transitivity_hitting_set(g, to_double(u.lo), to_double(u.hi), to_double(v.lo),
                                                  to_double(v.hi), n);
  });
  os << "== interval-devaney ==\n"
     << "map=" << map_label(c) << " sampled mesh=" << to_string(c.system.sample_mesh) << " (approximate)\n";
  bool first = true;
  for (auto tag : {interval::FamilyTag::kSyndetic, interval::FamilyTag::kThick, interval::FamilyTag::kThicklySyndetic,
                   interval::FamilyTag::kCofinite}) {
    bool s_ok = true, t_ok = true;
    for (const auto& h : sens) s_ok = s_ok && interval::has_tag(setfam::classify(h.set, c.interval.family), tag);
    for (const auto& h : trans) t_ok = t_ok && interval::has_tag(setfam::classify(h.set, c.interval.family), tag);
    os << (first ? "" : " ") << interval::family_name(tag) << "-TS=" << pf(s_ok && t_ok);
    first = false;
  }
  os << "\n\n";
  for (std::size_t i = 0; i < sens.size(); ++i)
    r.files["hitting_sensitivity_U" + std::to_string(i) + ".csv"] = interval::hitting_set_csv(sens[i]);
}

shadowing::ProbeParams probe_params(const RunConfig& c) {
  shadowing::ProbeParams p;
  const auto& h = c.shadow;
  p.f_gen = shadowing::parse_generator(h.generator);
  p.targets.clear();
  for (const auto& t : h.targets) p.targets.push_back(shadowing::parse_target(t));
  p.g_params = c.family;
  p.eps = h.eps;
  p.delta_ladder = h.deltas;
  p.trials = h.trials;
  p.seed = c.seed;
  p.horizon = h.horizon;
  p.mesh = h.mesh;
  p.objective = h.objective == "min_max_gap"         ? shadowing::Objective::kMinMaxGap
                : h.objective == "max_lower_density" ? shadowing::Objective::kMaxLowerDensity
                                                     : shadowing::Objective::kMaxCardinality;
  p.orbit.off_a = h.off_a == "bounded"       ? shadowing::OffAScheme::kBounded
                  : h.off_a == "adversarial" ? shadowing::OffAScheme::kAdversarial
                                             : shadowing::OffAScheme::kRestart;
  p.orbit.target_lo = h.target_lo;
  p.orbit.target_hi = h.target_hi;
  p.hub_kicks = h.hub_kicks;
  return p;
}

std::string targets_label(const std::vector<shadowing::Target>& ts) {
  std::string out;
  for (auto t : ts) {
    if (!out.empty()) out += ';';
    out += shadowing::target_name(t);
  }
  return out;
}

void shadow(const RunConfig& c, RunResult& r, std::ostream& os, Exec exec) {
  const auto sys = make_system(c);
  const auto p = probe_params(c);
  os << "== shadow ==\n"
     << "system=" << sys->name() << " generator=" << shadowing::generator_name(p.f_gen)
     << " targets=" << targets_label(p.targets) << " eps=" << fmt17(p.eps) << " trials=" << p.trials
     << " horizon=" << p.horizon << " mesh=" << to_string(p.mesh) << " seed=" << p.seed << '\n';

  if (!c.shadow.replay.empty()) {
    std::ifstream in(c.shadow.replay);
    if (!in) throw ParseError("cannot read witness file: " + c.shadow.replay);
    std::ostringstream ss;
    ss << in.rdbuf();
    shadowing::TrialResult w;
    w.orbit.points = shadowing::parse_points(ss.str());
    w.orbit.delta = p.delta_ladder.back();
    const bool fails = shadowing::replay_witness(*sys, p, w, exec);
    os << "replay points=" << w.orbit.points.size() << " delta=" << fmt17(w.orbit.delta)
       << " fails_again=" << tf(fails) << "\n\n";
    r.files["replay_witness.txt"] = shadowing::format_points(w.orbit.points);
    return;
  }

  const auto rep = shadowing::fg_shadowing_probe(*sys, p, exec);
  for (std::size_t d = 0; d < p.delta_ladder.size(); ++d)
    os << "delta=" << fmt17(p.delta_ladder[d]) << ' ' << pf(rep.pass_at_delta[d]) << '\n';
  os << "verdict=" << shadowing::verdict_name(rep.verdict) << '\n';
  r.files["shadow_probe.csv"] = shadowing::probe_csv(rep);
  if (rep.witness) {
    const auto& w = *rep.witness;
    os << "witness: trial=" << w.trial << " hub_kick=" << tf(w.hub_kick)
       << " valid=" << w.orbit.valid_set.size() << '/' << w.orbit.valid_set.horizon()
       << " best_tracer=" << fmt17(w.tracer.tracer_value) << " trace_cardinality=" << w.tracer.trace_set.size()
       << '/' << w.tracer.trace_set.horizon() << '\n'
       << "witness replay fails again: " << tf(shadowing::replay_witness(*sys, p, w, exec)) << '\n';
    r.files["shadow_witness.txt"] = shadowing::format_points(w.orbit.points);
    r.files["shadow_witness_trace.csv"] = membership_csv(w.tracer.trace_set);
  }
  os << '\n';
}

void p_chaos(const RunConfig& c, RunResult& r, std::ostream& os, Exec exec) {
  const auto sys = make_system(c);
  shadowing::PChaosParams p;
  p.probe = probe_params(c);
  p.density_eps = c.pchaos.density_eps;
  p.n_max = c.pchaos.n_max;
  p.chain_delta = c.pchaos.chain_delta;
  p.chain_mesh = c.pchaos.chain_mesh;
  p.chain_steps = c.pchaos.chain_steps;
  if (c.system.kind != SystemKind::kDiscrete) p.devaney = devaney_params(c, system_map(c));
  const auto rep = shadowing::p_chaos_report(*sys, p, exec);
  os << "== p-chaos ==\n"
     << "system=" << rep.system << '\n'
     << "dense_periodic=" << tf(rep.dense_periodic) << '\n';
  std::ostringstream csv;
  csv << "generator,targets,verdict\n";
  for (const auto& o : rep.pairs) {
    os << "probe " << shadowing::generator_name(o.f_gen) << '/' << targets_label(o.targets) << ": "
       << shadowing::verdict_name(o.probe.verdict) << '\n';
    csv << shadowing::generator_name(o.f_gen) << ',' << targets_label(o.targets) << ','
        << shadowing::verdict_name(o.probe.verdict) << '\n';
  }
  os << "shadowing=" << tf(rep.shadowing) << '\n'
     << "p_chaotic=" << tf(rep.p_chaotic) << '\n';
  if (c.system.kind != SystemKind::kDiscrete)
    os << "chain_transitive=" << tf(rep.chain_transitive) << " chain_mixing=" << tf(rep.chain_mixing)
       << " (delta=" << fmt17(p.chain_delta) << " mesh=" << fmt17(p.chain_mesh) << ")\n";
  if (rep.fcf_devaney) os << "Fcf-Devaney=" << pf(*rep.fcf_devaney) << '\n';
  for (const auto& n : rep.notes) os << "note: " << n << '\n';
  os << '\n';
  r.files["pchaos_pairs.csv"] = csv.str();
}

}  // namespace

RunResult run(const RunConfig& c, Exec exec) {
  validate(c);
  RunResult r;
  std::ostringstream os;
  os << "seed=" << c.seed << "\n\n";
  for (auto a : c.analyses) {
    switch (a) {
      case Analysis::kClassifySet: classify_set(c, r, os); break;
      case Analysis::kSpacing: spacing(c, r, os, exec); break;
      case Analysis::kSturmian: sturmian(c, r, os); break;
      case Analysis::kIntervalDevaney:
        if (c.system.kind == SystemKind::kSampled)
          interval_devaney_sampled(c, r, os, exec);
        else
          interval_devaney_exact(c, r, os, exec);
        break;
      case Analysis::kShadow: shadow(c, r, os, exec); break;
      case Analysis::kPChaos: p_chaos(c, r, os, exec); break;
    }
  }
  r.report = os.str();
  return r;
}

void write_outputs(const RunResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ParameterError("cannot create output directory " + dir + ": " + ec.message());
  auto put = [&](const std::string& name, const std::string& body) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    out << body;
    if (!out) throw ParameterError("cannot write " + (fs::path(dir) / name).string());
  };
  put("report.txt", r.report);
  for (const auto& [name, body] : r.files) put(name, body);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const BudgetExceededError*>(&e)) return 3;
  return 2;
}

}  // namespace chaoskit::cli
