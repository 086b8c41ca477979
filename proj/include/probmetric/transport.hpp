#pragma once

#include "probmetric/rational.hpp"

#include <cassert>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace probmetric {

struct TransportCell {
  std::size_t source;
  std::size_t sink;
  Rational mass;
};

/// Optimal plan; `cells` lists only strictly positive masses, row-major.
struct TransportPlan {
  Rational cost;
  std::vector<TransportCell> cells;
};

/**
 * Exact transportation simplex.
 *
 * Minimizes sum(x[i][j] * cost[i][j]) subject to row sums = supply and column
 * sums = demand. `costs` is row-major with supply.size() rows. The initial
 * basis is the north-west corner rule; pivoting uses Bland's smallest-index
 * rule for both the entering and the leaving cell, so degenerate pivots
 * cannot cycle.
 */
inline TransportPlan solve_transport(std::span<const Rational> supply, std::span<const Rational> demand,
                                     std::span<const Rational> costs) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  if (m == 0 || n == 0) throw std::invalid_argument("transport problem with an empty side");
  if (costs.size() != m * n) throw std::invalid_argument("cost matrix has the wrong shape");
  {
    Rational a = 0, b = 0;
    for (const auto& s : supply) a += s;
    for (const auto& d : demand) b += d;
    if (a != b) throw std::invalid_argument("supply and demand totals differ");
  }

  auto cell = [n](std::size_t i, std::size_t j) { return i * n + j; };
  std::vector<Rational> x(m * n, Rational(0));
  std::vector<char> basic(m * n, 0);

  // North-west corner: exactly m + n - 1 basic cells, some possibly zero.
  {
    std::vector<Rational> s(supply.begin(), supply.end());
    std::vector<Rational> d(demand.begin(), demand.end());
    std::size_t i = 0, j = 0;
    while (i < m && j < n) {
      const Rational q = s[i] < d[j] ? s[i] : d[j];
      x[cell(i, j)] = q;
      basic[cell(i, j)] = 1;
      s[i] -= q;
      d[j] -= q;
      if (s[i] == 0 && i + 1 < m) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Tree nodes: rows are 0..m-1, columns are m..m+n-1.
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> tree(m + n);
  auto rebuild_tree = [&] {
    for (auto& adj : tree) adj.clear();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (basic[cell(i, j)]) {
          tree[i].push_back(cell(i, j));
          tree[m + j].push_back(cell(i, j));
        }
      }
    }
  };
  auto other_end = [&](std::size_t node, std::size_t c) { return node < m ? m + c % n : c / n; };

  std::vector<Rational> u(m), v(n);
  for (std::size_t guard = 0;; ++guard) {
    rebuild_tree();

    // Potentials u[i] + v[j] = cost on basic cells, anchored at u[0] = 0.
    std::vector<char> known(m + n, 0);
    std::queue<std::size_t> frontier;
    u[0] = 0;
    known[0] = 1;
    frontier.push(0);
    while (!frontier.empty()) {
      const auto node = frontier.front();
      frontier.pop();
      for (auto c : tree[node]) {
        const auto next = other_end(node, c);
        if (known[next]) continue;
        if (next >= m) {
          v[next - m] = costs[c] - u[c / n];
        } else {
          u[next] = costs[c] - v[c % n];
        }
        known[next] = 1;
        frontier.push(next);
      }
    }

    std::optional<std::size_t> entering;
    for (std::size_t c = 0; c < m * n && !entering; ++c) {
      if (!basic[c] && costs[c] - u[c / n] - v[c % n] < 0) entering = c;
    }
    if (!entering) break;

    // Path in the basis tree from the entering column back to its row.
    const std::size_t row = *entering / n;
    const std::size_t col_node = m + *entering % n;
    std::vector<std::size_t> via(m + n, none);
    std::vector<char> seen(m + n, 0);
    seen[col_node] = 1;
    frontier.push(col_node);
    while (!frontier.empty()) {
      const auto node = frontier.front();
      frontier.pop();
      for (auto c : tree[node]) {
        const auto next = other_end(node, c);
        if (seen[next]) continue;
        seen[next] = 1;
        via[next] = c;
        frontier.push(next);
      }
    }
    assert(seen[row]);

    // Walking from the row back to the column gives cells ordered row-first;
    // reverse so cycle position 0 touches the entering column.
    std::vector<std::size_t> path;
    for (std::size_t node = row; node != col_node;) {
      const auto c = via[node];
      path.push_back(c);
      node = other_end(node, c);
    }
    std::vector<std::size_t> cycle(path.rbegin(), path.rend());
    // Even positions in `cycle` lose mass.
    std::optional<std::size_t> leaving;
    for (std::size_t p = 0; p < cycle.size(); p += 2) {
      const auto c = cycle[p];
      if (!leaving || x[c] < x[*leaving] || (x[c] == x[*leaving] && c < *leaving)) leaving = c;
    }
    const Rational theta = x[*leaving];
    for (std::size_t p = 0; p < cycle.size(); ++p) {
      if (p % 2 == 0) {
        x[cycle[p]] -= theta;
      } else {
        x[cycle[p]] += theta;
      }
    }
    x[*entering] = theta;
    basic[*entering] = 1;
    basic[*leaving] = 0;
    x[*leaving] = 0;

    if (guard > 1'000'000) throw std::logic_error("transportation simplex failed to terminate");
  }

  TransportPlan plan;
  plan.cost = 0;
  for (std::size_t c = 0; c < m * n; ++c) {
    if (x[c] > 0) {
      plan.cost += x[c] * costs[c];
      plan.cells.push_back({c / n, c % n, x[c]});
    }
  }
  return plan;
}

}  // namespace probmetric
