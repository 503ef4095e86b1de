#pragma once

#include <cstddef>
#include <string_view>

namespace chaoskit {

// Hard caps that keep the exponential parts of the library bounded.
struct Budget {
  std::size_t max_word_len = 16;           // language enumeration
  std::size_t max_nodes = std::size_t{1} << 20;  // enumerated words per call
  std::size_t max_power = 12;              // pl_power exponent
  std::size_t max_breakpoints = std::size_t{1} << 16;
  std::size_t max_iterations = 4096;       // hitting-set horizons
  std::size_t max_gap_window = 4096;       // gap_set / cylinder horizons
};

// Process-wide budget. Initialized from the defaults above, then patched by
// CHAOS_BUDGET_OVERRIDE ("key=value,key=value") on first use.
const Budget& budget();

// Applies an override string to `base`. Unknown keys or malformed values raise
// ParameterError.
Budget apply_budget_override(Budget base, std::string_view spec);

// Test hook: replaces the process-wide budget.
void set_budget(const Budget& b);

}  // namespace chaoskit
