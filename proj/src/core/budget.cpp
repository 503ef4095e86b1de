#include "chaoskit/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <mutex>
#include <string>

#include "chaoskit/error.hpp"

namespace chaoskit {
namespace {

std::mutex g_mutex;
bool g_initialized = false;
Budget g_budget;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Budget apply_budget_override(Budget base, std::string_view spec) {
  while (!spec.empty()) {
    auto comma = spec.find(',');
    std::string_view item = trim(spec.substr(0, comma));
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParameterError("budget override item without '=': " + std::string(item));
    std::string_view key = trim(item.substr(0, eq));
    std::string_view val = trim(item.substr(eq + 1));
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc{} || ptr != val.data() + val.size() || v == 0)
      throw ParameterError("bad budget value for " + std::string(key));
    if (key == "max_word_len") base.max_word_len = v;
    else if (key == "max_nodes") base.max_nodes = v;
    else if (key == "max_power") base.max_power = v;
    else if (key == "max_breakpoints") base.max_breakpoints = v;
    else if (key == "max_iterations") base.max_iterations = v;
    else if (key == "max_gap_window") base.max_gap_window = v;
    else throw ParameterError("unknown budget key: " + std::string(key));
  }
  return base;
}

const Budget& budget() {
  std::lock_guard lock(g_mutex);
  if (!g_initialized) {
    g_initialized = true;
    if (const char* env = std::getenv("CHAOS_BUDGET_OVERRIDE"))
      g_budget = apply_budget_override(g_budget, env);
  }
  return g_budget;
}

void set_budget(const Budget& b) {
  std::lock_guard lock(g_mutex);
  g_initialized = true;
  g_budget = b;
}

}  // namespace chaoskit
