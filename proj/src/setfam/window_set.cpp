#include <algorithm>
#include <numeric>
#include <string>

#include "chaoskit/error.hpp"
#include "chaoskit/setfam.hpp"

namespace chaoskit::setfam {

WindowSet::WindowSet(std::int64_t horizon) {
  if (horizon < 1) throw ParameterError("window horizon must be positive");
  bits_.assign(static_cast<std::size_t>(horizon), 0);
}

WindowSet::WindowSet(std::int64_t horizon, std::span<const std::int64_t> members)
    : WindowSet(horizon) {
  for (auto m : members) insert(m);
}

WindowSet::WindowSet(std::int64_t horizon, std::initializer_list<std::int64_t> members)
    : WindowSet(horizon, std::span<const std::int64_t>(members.begin(), members.size())) {}

WindowSet WindowSet::full(std::int64_t horizon) { return tail(horizon, 0); }

WindowSet WindowSet::tail(std::int64_t horizon, std::int64_t from) {
  WindowSet w(horizon);
  for (std::int64_t i = std::max<std::int64_t>(from, 0); i < horizon; ++i)
    w.bits_[static_cast<std::size_t>(i)] = 1;
  return w;
}

void WindowSet::insert(std::int64_t i) {
  if (i < 0 || i >= horizon())
    throw ParameterError("member " + std::to_string(i) + " outside [0, " +
                         std::to_string(horizon()) + ")");
  bits_[static_cast<std::size_t>(i)] = 1;
}

void WindowSet::erase(std::int64_t i) {
  if (i >= 0 && i < horizon()) bits_[static_cast<std::size_t>(i)] = 0;
}

std::vector<std::int64_t> WindowSet::members() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

std::int64_t WindowSet::size() const {
  return std::count(bits_.begin(), bits_.end(), std::uint8_t{1});
}

bool WindowSet::empty() const {
  return std::find(bits_.begin(), bits_.end(), std::uint8_t{1}) == bits_.end();
}

bool WindowSet::subset_of(const WindowSet& other) const {
  if (horizon() != other.horizon())
    throw HorizonMismatchError("subset test across different horizons");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

WindowSet dilate(const WindowSet& a, std::int64_t n) {
  if (n < 1) throw ParameterError("dilation factor must be positive");
  WindowSet out(a.horizon());
  for (auto m : a.members())
    if (m * n < a.horizon()) out.insert(m * n);
  return out;
}

WindowSet shift_down(const WindowSet& a, std::int64_t q) {
  if (q < 0) throw ParameterError("shift_down amount must be non-negative");
  WindowSet out(a.horizon());
  for (auto m : a.members())
    if (m - q >= 0) out.insert(m - q);
  return out;
}

WindowSet offset_up(const WindowSet& a, std::int64_t m) {
  if (m < 0) throw ParameterError("offset_up amount must be non-negative");
  WindowSet out(a.horizon());
  for (auto x : a.members())
    if (x + m < a.horizon()) out.insert(x + m);
  return out;
}

WindowSet set_union(const WindowSet& a, const WindowSet& b) {
  if (a.horizon() != b.horizon()) throw HorizonMismatchError("union across different horizons");
  WindowSet out = a;
  for (auto m : b.members()) out.insert(m);
  return out;
}

WindowSet set_intersection(const WindowSet& a, const WindowSet& b) {
  if (a.horizon() != b.horizon())
    throw HorizonMismatchError("intersection across different horizons");
  WindowSet out(a.horizon());
  for (auto m : a.members())
    if (b.contains(m)) out.insert(m);
  return out;
}

}  // namespace chaoskit::setfam
