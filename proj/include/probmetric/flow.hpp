#pragma once

#include "probmetric/rational.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace probmetric {

/// Edmonds-Karp maximum flow over an exact capacity type.
template <class Capacity>
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adjacency_(nodes) {}

  void add_edge(std::size_t from, std::size_t to, Capacity capacity) {
    adjacency_[from].push_back(edges_.size());
    edges_.push_back({to, std::move(capacity)});
    adjacency_[to].push_back(edges_.size());
    edges_.push_back({from, Capacity(0)});
  }

  Capacity run(std::size_t source, std::size_t sink) {
    Capacity total(0);
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    for (;;) {
      std::vector<std::size_t> via(adjacency_.size(), none);
      std::queue<std::size_t> frontier;
      frontier.push(source);
      std::vector<char> seen(adjacency_.size(), 0);
      seen[source] = 1;
      while (!frontier.empty() && !seen[sink]) {
        const auto u = frontier.front();
        frontier.pop();
        for (auto e : adjacency_[u]) {
          const auto v = edges_[e].to;
          if (!seen[v] && edges_[e].residual > 0) {
            seen[v] = 1;
            via[v] = e;
            frontier.push(v);
          }
        }
      }
      if (!seen[sink]) return total;

      Capacity bottleneck = edges_[via[sink]].residual;
      for (auto v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        if (edges_[via[v]].residual < bottleneck) bottleneck = edges_[via[v]].residual;
      }
      for (auto v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].residual -= bottleneck;
        edges_[via[v] ^ 1].residual += bottleneck;
      }
      total += bottleneck;
    }
  }

 private:
  struct Edge {
    std::size_t to;
    Capacity residual;
  };
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
};

/// Decides whether a coupling of `supply` and `demand` (both summing to the
/// same total) exists whose mass lies only on cells where `allowed(i, j)`.
///
/// Masses are scaled by the lcm of all denominators and an integral max-flow
/// is run; the coupling exists iff the whole scaled total is routed.
inline bool coupling_exists(std::span<const Rational> supply, std::span<const Rational> demand,
                            const std::function<bool(std::size_t, std::size_t)>& allowed) {
  BigInt scale = 1;
  for (const auto* side : {&supply, &demand}) {
    for (const auto& r : *side) scale = boost::multiprecision::lcm(scale, denominator_of(r));
  }
  auto scaled = [&](const Rational& r) { return BigInt(numerator_of(r) * (scale / denominator_of(r))); };

  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  const std::size_t source = m + n;
  const std::size_t sink = m + n + 1;
  MaxFlow<BigInt> flow(m + n + 2);
  BigInt total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const BigInt s = scaled(supply[i]);
    total += s;
    flow.add_edge(source, i, s);
  }
  BigInt demanded = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const BigInt d = scaled(demand[j]);
    demanded += d;
    flow.add_edge(m + j, sink, d);
  }
  if (total != demanded) return false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (allowed(i, j)) flow.add_edge(i, m + j, total);
    }
  }
  return flow.run(source, sink) == total;
}

}  // namespace probmetric
