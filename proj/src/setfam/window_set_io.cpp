#include <cctype>
#include <charconv>
#include <sstream>
#include <string>
#include <string_view>

#include "chaoskit/error.hpp"
#include "chaoskit/setfam.hpp"

namespace chaoskit::setfam {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("not an integer: '" + std::string(s) + "'");
  return v;
}

std::vector<std::int64_t> parse_member_list(std::string_view s) {
  std::vector<std::int64_t> out;
  s = trim(s);
  while (!s.empty()) {
    auto comma = s.find(',');
    out.push_back(parse_int(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

// Parses "name(arg)" and returns arg, or nullopt-like empty view when the
// expression does not have that shape.
bool call_form(std::string_view expr, std::string_view name, std::string_view& arg) {
  if (expr.size() < name.size() + 2 || expr.substr(0, name.size()) != name) return false;
  std::string_view rest = trim(expr.substr(name.size()));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') return false;
  arg = trim(rest.substr(1, rest.size() - 2));
  return true;
}

}  // namespace

std::string format_window_set(const WindowSet& a) {
  std::ostringstream os;
  os << "horizon=" << a.horizon() << "\n";
  bool first = true;
  for (auto m : a.members()) {
    if (!first) os << ",";
    os << m;
    first = false;
  }
  os << "\n";
  return os.str();
}

WindowSet parse_window_set(const std::string& text) {
  std::string_view s = trim(text);
  auto nl = s.find('\n');
  std::string_view head = trim(s.substr(0, nl));
  std::string_view body = nl == std::string_view::npos ? std::string_view{} : s.substr(nl + 1);
  if (head.substr(0, 8) != "horizon=") throw ParseError("window set must start with horizon=<N>");
  std::int64_t horizon = parse_int(head.substr(8));
  if (horizon < 1) throw ParseError("horizon must be positive");
  auto members = parse_member_list(body);
  for (std::size_t i = 1; i < members.size(); ++i)
    if (members[i] <= members[i - 1]) throw ParseError("member list must be strictly ascending");
  for (auto m : members)
    if (m < 0 || m >= horizon) throw ParseError("member " + std::to_string(m) + " outside window");
  return WindowSet(horizon, members);
}

WindowSet generate_window_set(const std::string& expr_text, std::int64_t horizon,
                              const std::string& explicit_members) {
  if (horizon < 1) throw ParseError("horizon must be positive");
  std::string_view expr = trim(expr_text);
  std::string_view arg;
  WindowSet out(horizon);
  if (expr == "all") return WindowSet::full(horizon);
  if (expr == "evens") {
    for (std::int64_t i = 0; i < horizon; i += 2) out.insert(i);
    return out;
  }
  if (call_form(expr, "multiples", arg)) {
    std::int64_t k = parse_int(arg);
    if (k < 1) throw ParseError("multiples(k) needs k >= 1");
    for (std::int64_t i = 0; i < horizon; i += k) out.insert(i);
    return out;
  }
  if (call_form(expr, "complement", arg)) {
    std::string_view inner;
    if (!call_form(arg, "powers", inner)) throw ParseError("complement(...) expects powers(k)");
    std::int64_t k = parse_int(inner);
    if (k < 2) throw ParseError("powers(k) needs k >= 2");
    out = WindowSet::full(horizon);
    for (std::int64_t p = k; p < horizon; p *= k) out.erase(p);
    return out;
  }
  if (expr == "explicit") {
    auto members = parse_member_list(explicit_members);
    for (std::size_t i = 1; i < members.size(); ++i)
      if (members[i] <= members[i - 1])
        throw ParseError("explicit member list must be strictly ascending");
    for (auto m : members)
      if (m < 0 || m >= horizon)
        throw ParseError("explicit member " + std::to_string(m) + " outside window");
    return WindowSet(horizon, members);
  }
  throw ParseError("unknown set generator: '" + std::string(expr) + "'");
}

}  // namespace chaoskit::setfam
