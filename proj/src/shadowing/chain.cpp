#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "chaoskit/error.hpp"
#include "chaoskit/shadowing.hpp"

namespace chaoskit::shadowing {

ChainGraph chain_graph(const interval::PLMap& f, double delta, double mesh, Exec exec) {
  if (!(mesh > 0)) throw ParameterError("mesh must be positive");
  if (!(delta > mesh)) throw MeshError("chain graph needs delta > mesh");
  const Rational lo = f.lo();
  const Rational range = f.hi() - f.lo();
  const double cells = std::ceil(to_double(range) / mesh);
  if (cells > 1 << 22) throw BudgetExceededError("chain graph mesh too fine");
  const auto k = static_cast<std::size_t>(std::max(1.0, cells));

  ChainGraph g;
  g.delta = delta;
  g.mesh = mesh;
  g.grid.resize(k + 1);
  g.out.resize(k + 1);
  std::vector<Rational> exact(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    exact[i] = lo + range * make_rational(static_cast<unsigned long>(i), static_cast<unsigned long>(k));
    g.grid[i] = to_double(exact[i]);
  }
  for_each_index(k + 1, exec, [&](std::size_t i) {
    const double fx = to_double(interval::pl_eval(f, exact[i]));
    // Contiguous block of grid points p with |p - f(x)| < δ.
    auto first = std::upper_bound(g.grid.begin(), g.grid.end(), fx - delta - kSlack);
    auto last = std::lower_bound(g.grid.begin(), g.grid.end(), fx + delta + kSlack);
    const auto a = static_cast<std::size_t>(first - g.grid.begin());
    const auto b = static_cast<std::size_t>(last - g.grid.begin());
    g.out[i] = b > a ? std::pair{a, b - 1} : std::pair{std::size_t{1}, std::size_t{0}};
  });
  return g;
}

std::vector<std::size_t> strongly_connected_components(const ChainGraph& g, std::size_t* count) {
  const std::size_t n = g.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // node, next successor
  std::size_t next_index = 0, next_comp = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, g.out[root].first});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, it] = call.back();
      const auto [first, last] = g.out[v];
      if (first <= last && it <= last) {
        const std::size_t w = it++;
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, g.out[w].first});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = next_comp;
        } while (w != done);
        ++next_comp;
      }
    }
  }
  if (count) *count = next_comp;
  return comp;
}

bool chain_transitive_check(const ChainGraph& g) {
  std::size_t count = 0;
  strongly_connected_components(g, &count);
  return count == 1;
}

std::size_t chain_period(const ChainGraph& g) {
  if (g.size() == 0 || !chain_transitive_check(g)) return 0;
  const std::size_t n = g.size();
  std::vector<std::int64_t> level(n, -1);
  std::queue<std::size_t> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    const auto [first, last] = g.out[u];
    for (std::size_t v = first; first <= last && v <= last; ++v)
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      }
  }
  std::int64_t d = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto [first, last] = g.out[u];
    for (std::size_t v = first; first <= last && v <= last; ++v)
      d = std::gcd(d, std::llabs(level[u] + 1 - level[v]));
  }
  return static_cast<std::size_t>(d);
}

std::optional<std::size_t> chain_mixing_exponent(const ChainGraph& g, std::size_t n, Exec exec) {
  const std::size_t m = g.size();
  if (m == 0) return std::nullopt;
  const std::size_t words = (m + 63) / 64;
  using Rows = std::vector<std::uint64_t>;
  Rows cur(m * words, 0), nxt(m * words, 0);

  auto set_range = [&](std::uint64_t* row, std::size_t a, std::size_t b) {
    for (std::size_t j = a; j <= b; ++j) row[j / 64] |= std::uint64_t{1} << (j % 64);
  };
  auto row_full = [&](const std::uint64_t* row) {
    for (std::size_t w = 0; w < words; ++w) {
      const std::size_t bits = std::min<std::size_t>(64, m - w * 64);
      const std::uint64_t want = bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
      if (row[w] != want) return false;
    }
    return true;
  };
  auto all_full = [&](const Rows& r) {
    for (std::size_t i = 0; i < m; ++i)
      if (!row_full(&r[i * words])) return false;
    return true;
  };

  for (std::size_t i = 0; i < m; ++i)
    if (g.out[i].first <= g.out[i].second) set_range(&cur[i * words], g.out[i].first, g.out[i].second);

  bool prev_full = all_full(cur);
  for (std::size_t k = 1; k <= n; ++k) {
    // Row i of M^(k+1): union of the successor ranges of the nodes in row i.
    for_each_index(m, exec, [&](std::size_t i) {
      std::vector<std::int32_t> diff(m + 1, 0);
      const std::uint64_t* row = &cur[i * words];
      for (std::size_t j = 0; j < m; ++j) {
        if (!((row[j / 64] >> (j % 64)) & 1)) continue;
        const auto [a, b] = g.out[j];
        if (a > b) continue;
        ++diff[a];
        --diff[b + 1];
      }
      std::uint64_t* out = &nxt[i * words];
      std::fill(out, out + words, 0);
      std::int32_t run = 0;
      for (std::size_t j = 0; j < m; ++j) {
        run += diff[j];
        if (run > 0) out[j / 64] |= std::uint64_t{1} << (j % 64);
      }
    });
    const bool next_full = all_full(nxt);
    if (prev_full && next_full) return k;
    prev_full = next_full;
    std::swap(cur, nxt);
  }
  return std::nullopt;
}

bool chain_mixing_check(const ChainGraph& g, std::size_t n, Exec exec) {
  return chain_mixing_exponent(g, n, exec).has_value();
}

std::vector<std::size_t> chain_recurrent_nodes(const ChainGraph& g) {
  std::size_t count = 0;
  const auto comp = strongly_connected_components(g, &count);
  std::vector<std::size_t> size(count, 0);
  for (auto c : comp) ++size[c];
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool self = g.out[i].first <= i && i <= g.out[i].second;
    if (size[comp[i]] > 1 || self) out.push_back(i);
  }
  return out;
}

}  // namespace chaoskit::shadowing
