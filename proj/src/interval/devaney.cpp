#include "chaoskit/error.hpp"
#include "chaoskit/interval.hpp"

namespace chaoskit::interval {

DevaneyParams::DevaneyParams() {
  family.gap_bound = 16;
  family.block_len = 8;
  family.cofinite_head = 24;
  family.density_burnin = 8;
  family.ground = setfam::Ground::kNaturals;
}

std::vector<Interval> default_grid(const PLMap& f, std::size_t k) {
  if (k == 0) throw ParameterError("grid size must be >= 1");
  const Rational cell = (f.hi() - f.lo()) / static_cast<unsigned long>(k);
  std::vector<Interval> out;
  for (std::size_t j = 0; j < k; ++j) {
    Rational centre = f.lo() + cell * static_cast<unsigned long>(j) + cell / 2;
    out.emplace_back(centre - cell / 4, centre + cell / 4);
  }
  return out;
}

const char* family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::kSyndetic:
      return "Fs";
    case FamilyTag::kThick:
      return "Ft";
    case FamilyTag::kThicklySyndetic:
      return "Fts";
    case FamilyTag::kCofinite:
      return "Fcf";
  }
  return "?";
}

bool has_tag(const setfam::FamilyVerdict& v, FamilyTag tag) {
  switch (tag) {
    case FamilyTag::kSyndetic:
      return v.syndetic;
    case FamilyTag::kThick:
      return v.thick;
    case FamilyTag::kThicklySyndetic:
      return v.thickly_syndetic;
    case FamilyTag::kCofinite:
      return v.cofinite;
  }
  return false;
}

const FamilyDevaney& DevaneyReport::family(FamilyTag tag) const {
  for (const auto& f : families)
    if (f.tag == tag) return f;
  throw ParameterError("family not in report");
}

DevaneyReport devaney_report(const PLMap& f, const DevaneyParams& params, Exec exec) {
  params.family.validate();
  DevaneyReport rep;
  rep.u_grid = params.u_grid.empty() ? default_grid(f, 8) : params.u_grid;
  rep.v_grid = params.v_grid.empty() ? rep.u_grid : params.v_grid;
  const std::size_t nu = rep.u_grid.size();
  const std::size_t nv = rep.v_grid.size();

  rep.sensitivity.resize(nu);
  rep.sensitivity_verdicts.resize(nu);
  for_each_index(nu, exec, [&](std::size_t i) {
    rep.sensitivity[i] = sensitivity_hitting_set(f, rep.u_grid[i], params.delta, params.horizon);
    rep.sensitivity_verdicts[i] = setfam::classify(rep.sensitivity[i].set, params.family);
  });
  rep.transitivity.resize(nu * nv);
  rep.transitivity_verdicts.resize(nu * nv);
  for_each_index(nu * nv, exec, [&](std::size_t idx) {
    rep.transitivity[idx] = transitivity_hitting_set(f, rep.u_grid[idx / nv], rep.v_grid[idx % nv],
                                                     params.horizon, params.strict);
    rep.transitivity_verdicts[idx] = setfam::classify(rep.transitivity[idx].set, params.family);
  });

  rep.density = periodic_density_report(f, params.eps, params.n_max);
  rep.dense_periodic = rep.density.covered == rep.density.cells;
  auto fixed = periodic_points(f, 1);
  rep.fixed_point_count = fixed.points.size();

  for (FamilyTag tag : {FamilyTag::kSyndetic, FamilyTag::kThick, FamilyTag::kThicklySyndetic,
                        FamilyTag::kCofinite}) {
    FamilyDevaney fd{tag};
    fd.transitive = true;
    fd.sensitive = true;
    for (const auto& v : rep.transitivity_verdicts) fd.transitive = fd.transitive && has_tag(v, tag);
    for (const auto& v : rep.sensitivity_verdicts) fd.sensitive = fd.sensitive && has_tag(v, tag);
    fd.devaney = fd.transitive && fd.sensitive && rep.dense_periodic;
    fd.anomaly = fd.transitive && rep.dense_periodic && !fd.sensitive;
    rep.theorem_consistent = rep.theorem_consistent && !fd.anomaly;
    rep.families.push_back(fd);
  }
  return rep;
}

}  // namespace chaoskit::interval
