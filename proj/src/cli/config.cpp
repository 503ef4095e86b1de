#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "chaoskit/budget.hpp"
#include "chaoskit/cli.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/interval.hpp"
#include "chaoskit/shadowing.hpp"

namespace chaoskit::cli {

namespace pt = boost::property_tree;

const char* analysis_name(Analysis a) {
  switch (a) {
    case Analysis::kClassifySet: return "classify-set";
    case Analysis::kSpacing: return "spacing";
    case Analysis::kSturmian: return "sturmian";
    case Analysis::kIntervalDevaney: return "interval-devaney";
    case Analysis::kShadow: return "shadow";
    case Analysis::kPChaos: return "p-chaos";
  }
  return "?";
}

Analysis parse_analysis(const std::string& text) {
  for (Analysis a : {Analysis::kClassifySet, Analysis::kSpacing, Analysis::kSturmian,
                     Analysis::kIntervalDevaney, Analysis::kShadow, Analysis::kPChaos})
    if (text == analysis_name(a)) return a;
  throw ParseError("unknown analysis: " + text);
}

const char* system_kind_name(SystemKind k) {
  switch (k) {
    case SystemKind::kSet: return "set";
    case SystemKind::kSturmian: return "sturmian";
    case SystemKind::kPL: return "pl";
    case SystemKind::kSampled: return "sampled";
    case SystemKind::kDiscrete: return "discrete";
  }
  return "?";
}

SystemKind parse_system_kind(const std::string& text) {
  for (SystemKind k : {SystemKind::kSet, SystemKind::kSturmian, SystemKind::kPL, SystemKind::kSampled,
                       SystemKind::kDiscrete})
    if (text == system_kind_name(k)) return k;
  throw ParseError("unknown system kind: " + text);
}

namespace {

bool same_family(const setfam::FamilyParams& a, const setfam::FamilyParams& b) {
  return a.gap_bound == b.gap_bound && a.block_len == b.block_len && a.cofinite_head == b.cofinite_head &&
         a.density_burnin == b.density_burnin && a.tail_policy == b.tail_policy && a.ground == b.ground;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Reads typed values out of one section and remembers which keys were used.
class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::string str(const std::string& key, const std::string& def) {
    used_.insert(key);
    if (!tree_) return def;
    auto v = tree_->get_optional<std::string>(key);
    return v ? trim(*v) : def;
  }
  std::int64_t int64(const std::string& key, std::int64_t def) {
    const std::string s = str(key, "");
    if (s.empty()) return def;
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno || *end) fail(key, s);
    return v;
  }
  std::size_t size(const std::string& key, std::size_t def) {
    const auto v = int64(key, static_cast<std::int64_t>(def));
    if (v < 0) fail(key, std::to_string(v));
    return static_cast<std::size_t>(v);
  }
  std::uint64_t u64(const std::string& key, std::uint64_t def) {
    const std::string s = str(key, "");
    if (s.empty()) return def;
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno || *end || s[0] == '-') fail(key, s);
    return v;
  }
  double real(const std::string& key, double def) {
    const std::string s = str(key, "");
    if (s.empty()) return def;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (*end) fail(key, s);
    return v;
  }
  Rational rational(const std::string& key, const Rational& def) {
    const std::string s = str(key, "");
    if (s.empty()) return def;
    return parse_rational(s);
  }
  bool boolean(const std::string& key, bool def) {
    const std::string s = str(key, "");
    if (s.empty()) return def;
    if (s == "true") return true;
    if (s == "false") return false;
    fail(key, s);
  }
  std::vector<double> reals(const std::string& key, const std::vector<double>& def) {
    const std::string s = str(key, "");
    if (s.empty()) return def;
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
      char* end = nullptr;
      out.push_back(std::strtod(item.c_str(), &end));
      if (*end) fail(key, item);
    }
    return out;
  }

  void check_unknown() const {
    if (!tree_) return;
    for (const auto& [k, _] : *tree_)
      if (!used_.count(k)) throw ParseError("unknown key '" + k + "' in [" + name_ + "]");
  }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& value) const {
    throw ParseError("[" + name_ + "] " + key + ": bad value '" + value + "'");
  }

  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

void read_family(Section& s, setfam::FamilyParams& f, const std::string& prefix) {
  f.gap_bound = s.int64(prefix + "gap_bound", f.gap_bound);
  f.block_len = s.int64(prefix + "block_len", f.block_len);
  f.cofinite_head = s.int64(prefix + "cofinite_head", f.cofinite_head);
  f.density_burnin = s.int64(prefix + "density_burnin", f.density_burnin);
  const std::string tail = s.str(prefix + "tail_policy", f.tail_policy == setfam::TailPolicy::kStrict ? "strict" : "censored");
  if (tail == "strict") f.tail_policy = setfam::TailPolicy::kStrict;
  else if (tail == "censored") f.tail_policy = setfam::TailPolicy::kCensored;
  else throw ParseError("tail_policy must be censored or strict");
  const std::string ground = s.str(prefix + "ground", f.ground == setfam::Ground::kNaturals ? "n" : "n0");
  if (ground == "n") f.ground = setfam::Ground::kNaturals;
  else if (ground == "n0") f.ground = setfam::Ground::kNaturalsWithZero;
  else throw ParseError("ground must be n or n0");
}

void write_family(std::ostream& os, const setfam::FamilyParams& f, const std::string& prefix) {
  os << prefix << "gap_bound = " << f.gap_bound << '\n'
     << prefix << "block_len = " << f.block_len << '\n'
     << prefix << "cofinite_head = " << f.cofinite_head << '\n'
     << prefix << "density_burnin = " << f.density_burnin << '\n'
     << prefix << "tail_policy = " << (f.tail_policy == setfam::TailPolicy::kStrict ? "strict" : "censored") << '\n'
     << prefix << "ground = " << (f.ground == setfam::Ground::kNaturals ? "n" : "n0") << '\n';
}

}  // namespace

IntervalSettings::IntervalSettings() : family(interval::DevaneyParams().family) {}

bool IntervalSettings::operator==(const IntervalSettings& o) const {
  return delta == o.delta && horizon == o.horizon && grid == o.grid && eps == o.eps && n_max == o.n_max &&
         strict == o.strict && same_family(family, o.family);
}

bool RunConfig::operator==(const RunConfig& o) const {
  return analyses == o.analyses && seed == o.seed && system == o.system && same_family(family, o.family) &&
         subshift == o.subshift && interval == o.interval && shadow == o.shadow && pchaos == o.pchaos;
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  static const std::set<std::string> sections{"run", "system", "family", "subshift", "interval", "shadow", "pchaos"};
  for (const auto& [name, sub] : tree) {
    if (!sections.count(name)) throw ParseError("unknown config section [" + name + "]");
    if (sub.empty() && !sub.data().empty()) throw ParseError("key '" + name + "' outside a section");
  }
  auto section = [&](const std::string& name) {
    auto it = tree.find(name);
    return Section(it == tree.not_found() ? nullptr : &it->second, name);
  };

  RunConfig c;
  {
    Section s = section("run");
    for (const auto& a : split_list(s.str("analyses", ""))) c.analyses.push_back(parse_analysis(a));
    c.seed = s.u64("seed", c.seed);
    s.check_unknown();
  }
  {
    Section s = section("system");
    auto& y = c.system;
    y.kind = parse_system_kind(s.str("kind", system_kind_name(y.kind)));
    y.set_expr = s.str("set", y.set_expr);
    y.members = s.str("members", y.members);
    y.horizon = s.int64("horizon", y.horizon);
    y.alpha = s.str("alpha", y.alpha);
    y.ulp = s.str("ulp", y.ulp);
    y.prefix = s.size("prefix", y.prefix);
    y.map = s.str("map", y.map);
    y.sample_mesh = s.rational("sample_mesh", y.sample_mesh);
    const std::string table = s.str("table", "");
    if (!table.empty()) {
      y.table.clear();
      for (const auto& item : split_list(table)) {
        char* end = nullptr;
        const long v = std::strtol(item.c_str(), &end, 10);
        if (*end || v < 0) throw ParseError("[system] table: bad entry '" + item + "'");
        y.table.push_back(static_cast<std::size_t>(v));
      }
    }
    s.check_unknown();
  }
  {
    Section s = section("family");
    read_family(s, c.family, "");
    s.check_unknown();
  }
  {
    Section s = section("subshift");
    auto& b = c.subshift;
    b.max_len = s.size("max_len", b.max_len);
    b.gap_horizon = s.int64("gap_horizon", b.gap_horizon);
    b.k_max = s.int64("k_max", b.k_max);
    b.factor_len = s.size("factor_len", b.factor_len);
    b.occurrence_len = s.size("occurrence_len", b.occurrence_len);
    b.periodicity_len = s.size("periodicity_len", b.periodicity_len);
    b.periodicity_k = s.size("periodicity_k", b.periodicity_k);
    s.check_unknown();
  }
  {
    Section s = section("interval");
    auto& v = c.interval;
    v.delta = s.rational("delta", v.delta);
    v.horizon = s.int64("horizon", v.horizon);
    v.grid = s.size("grid", v.grid);
    v.eps = s.rational("eps", v.eps);
    v.n_max = s.size("n_max", v.n_max);
    v.strict = s.boolean("strict", v.strict);
    read_family(s, v.family, "family_");
    s.check_unknown();
  }
  {
    Section s = section("shadow");
    auto& h = c.shadow;
    h.eps = s.real("eps", h.eps);
    h.deltas = s.reals("deltas", h.deltas);
    h.trials = s.size("trials", h.trials);
    h.horizon = s.int64("horizon", h.horizon);
    h.mesh = s.rational("mesh", h.mesh);
    h.generator = s.str("generator", h.generator);
    const std::string targets = s.str("targets", "");
    if (!targets.empty()) h.targets = split_list(targets);
    h.objective = s.str("objective", h.objective);
    h.off_a = s.str("off_a", h.off_a);
    h.target_lo = s.real("target_lo", h.target_lo);
    h.target_hi = s.real("target_hi", h.target_hi);
    h.hub_kicks = s.boolean("hub_kicks", h.hub_kicks);
    h.replay = s.str("replay", h.replay);
    s.check_unknown();
  }
  {
    Section s = section("pchaos");
    auto& p = c.pchaos;
    p.chain_delta = s.real("chain_delta", p.chain_delta);
    p.chain_mesh = s.real("chain_mesh", p.chain_mesh);
    p.chain_steps = s.size("chain_steps", p.chain_steps);
    p.density_eps = s.rational("density_eps", p.density_eps);
    p.n_max = s.size("n_max", p.n_max);
    s.check_unknown();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  std::vector<std::string> names;
  for (auto a : c.analyses) names.push_back(analysis_name(a));
  os << "[run]\n"
     << "analyses = " << join(names) << '\n'
     << "seed = " << c.seed << "\n\n";

  const auto& y = c.system;
  std::vector<std::string> table;
  for (auto t : y.table) table.push_back(std::to_string(t));
  os << "[system]\n"
     << "kind = " << system_kind_name(y.kind) << '\n'
     << "set = " << y.set_expr << '\n'
     << "members = " << y.members << '\n'
     << "horizon = " << y.horizon << '\n'
     << "alpha = " << y.alpha << '\n'
     << "ulp = " << y.ulp << '\n'
     << "prefix = " << y.prefix << '\n'
     << "map = " << y.map << '\n'
     << "sample_mesh = " << to_string(y.sample_mesh) << '\n'
     << "table = " << join(table) << "\n\n";

  os << "[family]\n";
  write_family(os, c.family, "");
  os << '\n';

  const auto& b = c.subshift;
  os << "[subshift]\n"
     << "max_len = " << b.max_len << '\n'
     << "gap_horizon = " << b.gap_horizon << '\n'
     << "k_max = " << b.k_max << '\n'
     << "factor_len = " << b.factor_len << '\n'
     << "occurrence_len = " << b.occurrence_len << '\n'
     << "periodicity_len = " << b.periodicity_len << '\n'
     << "periodicity_k = " << b.periodicity_k << "\n\n";

  const auto& v = c.interval;
  os << "[interval]\n"
     << "delta = " << to_string(v.delta) << '\n'
     << "horizon = " << v.horizon << '\n'
     << "grid = " << v.grid << '\n'
     << "eps = " << to_string(v.eps) << '\n'
     << "n_max = " << v.n_max << '\n'
     << "strict = " << (v.strict ? "true" : "false") << '\n';
  write_family(os, v.family, "family_");
  os << '\n';

  const auto& h = c.shadow;
  std::vector<std::string> deltas;
  for (double d : h.deltas) deltas.push_back(fmt_double(d));
  os << "[shadow]\n"
     << "eps = " << fmt_double(h.eps) << '\n'
     << "deltas = " << join(deltas) << '\n'
     << "trials = " << h.trials << '\n'
     << "horizon = " << h.horizon << '\n'
     << "mesh = " << to_string(h.mesh) << '\n'
     << "generator = " << h.generator << '\n'
     << "targets = " << join(h.targets) << '\n'
     << "objective = " << h.objective << '\n'
     << "off_a = " << h.off_a << '\n'
     << "target_lo = " << fmt_double(h.target_lo) << '\n'
     << "target_hi = " << fmt_double(h.target_hi) << '\n'
     << "hub_kicks = " << (h.hub_kicks ? "true" : "false") << '\n'
     << "replay = " << h.replay << "\n\n";

  const auto& p = c.pchaos;
  os << "[pchaos]\n"
     << "chain_delta = " << fmt_double(p.chain_delta) << '\n'
     << "chain_mesh = " << fmt_double(p.chain_mesh) << '\n'
     << "chain_steps = " << p.chain_steps << '\n'
     << "density_eps = " << to_string(p.density_eps) << '\n'
     << "n_max = " << p.n_max << '\n';
  return os.str();
}

namespace {

bool needs(const RunConfig& c, std::initializer_list<SystemKind> kinds, Analysis a) {
  for (auto k : kinds)
    if (c.system.kind == k) return true;
  throw ParameterError(std::string("analysis ") + analysis_name(a) + " does not apply to system kind " +
                       system_kind_name(c.system.kind));
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.analyses.empty()) throw ParameterError("analysis list is empty");
  c.family.validate();
  c.interval.family.validate();
  const auto& y = c.system;
  if (y.horizon < 1) throw ParameterError("system horizon must be positive");
  if (y.kind == SystemKind::kPL || y.kind == SystemKind::kSampled) {
    if (y.map.rfind("domain=", 0) != 0) {
      const auto names = interval::PLMap::builtin_names();
      if (std::find(names.begin(), names.end(), y.map) == names.end())
        throw ParameterError("unknown builtin map: " + y.map);
    }
  }
  if (y.kind == SystemKind::kSampled && y.sample_mesh <= 0) throw ParameterError("sample_mesh must be positive");
  for (auto a : c.analyses) {
    switch (a) {
      case Analysis::kClassifySet:
      case Analysis::kSpacing: needs(c, {SystemKind::kSet}, a); break;
      case Analysis::kSturmian: needs(c, {SystemKind::kSturmian}, a); break;
      case Analysis::kIntervalDevaney: needs(c, {SystemKind::kPL, SystemKind::kSampled}, a); break;
      case Analysis::kShadow:
      case Analysis::kPChaos: needs(c, {SystemKind::kPL, SystemKind::kDiscrete}, a); break;
    }
  }
  if (c.interval.horizon < 1 || static_cast<std::size_t>(c.interval.horizon) > budget().max_iterations)
    throw BudgetExceededError("interval horizon outside the iteration budget");
  if (c.subshift.gap_horizon < 0 || static_cast<std::size_t>(c.subshift.gap_horizon) > budget().max_gap_window)
    throw BudgetExceededError("gap horizon outside the gap-window budget");
  if (c.interval.grid == 0) throw ParameterError("interval grid must be positive");
  const auto& h = c.shadow;
  if (!(h.eps > 0)) throw ParameterError("shadow eps must be positive");
  if (h.horizon < 1) throw ParameterError("shadow horizon must be positive");
  if (h.mesh <= 0) throw ParameterError("shadow mesh must be positive");
  shadowing::parse_generator(h.generator);
  for (const auto& t : h.targets) shadowing::parse_target(t);
  if (h.objective != "max_cardinality" && h.objective != "min_max_gap" && h.objective != "max_lower_density")
    throw ParameterError("unknown objective: " + h.objective);
  if (h.off_a != "restart" && h.off_a != "bounded" && h.off_a != "adversarial")
    throw ParameterError("unknown off_a scheme: " + h.off_a);
}

}  // namespace chaoskit::cli
