#pragma once

#include "probmetric/pts.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace probmetric {

struct RandomPtsParams {
  std::size_t max_states = 12;
  std::size_t max_depth = 3;
  std::size_t max_fanout = 2;
  std::size_t max_support = 3;
  std::size_t denominator_bound = 4;
  std::size_t alphabet_size = 2;
};

/**
 * Random acyclic system, deterministic per seed.
 *
 * Processes are assigned to levels 0..D; a transition from level L only
 * reaches lower levels, so depth(p) <= level(p) <= max_depth. Some processes
 * copy the transitions of an earlier process on the same level, sometimes
 * with one extra transition, so that equivalent and similar pairs show up.
 */
inline Pts generate_random_pts(std::uint64_t seed, const RandomPtsParams& params = {}) {
  if (params.max_states == 0 || params.max_fanout == 0 || params.max_support == 0 ||
      params.denominator_bound == 0 || params.alphabet_size == 0 || params.alphabet_size > 26) {
    throw std::invalid_argument("random system parameters out of range");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

  const std::size_t n = uniform(std::min<std::size_t>(2, params.max_states), params.max_states);
  const std::size_t top_level = uniform(0, params.max_depth);
  std::vector<std::size_t> level(n);
  for (auto& l : level) l = uniform(0, top_level);
  level[uniform(0, n - 1)] = 0;
  std::sort(level.begin(), level.end());

  PtsBuilder builder;
  for (std::size_t a = 0; a < params.alphabet_size; ++a) builder.add_action(std::string(1, static_cast<char>('a' + a)));
  std::vector<ProcessId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(builder.add_process("p" + std::to_string(i)));

  auto random_transition = [&](std::size_t from) -> Transition {
    // Levels are sorted, so the candidate targets form a prefix.
    const std::size_t below = static_cast<std::size_t>(std::lower_bound(level.begin(), level.end(), level[from]) - level.begin());
    std::vector<std::uint32_t> pool(below);
    for (std::size_t i = 0; i < below; ++i) pool[i] = static_cast<std::uint32_t>(i);
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t support = uniform(1, std::min({params.max_support, params.denominator_bound, below}));
    const std::size_t q = uniform(support, params.denominator_bound);
    // Split q into `support` positive parts.
    std::vector<std::size_t> cuts(q - 1);
    for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = i + 1;
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(support - 1);
    cuts.push_back(0);
    cuts.push_back(q);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Distribution::Entry> entries;
    for (std::size_t i = 0; i < support; ++i) {
      entries.push_back({ProcessId{pool[i]}, Rational(static_cast<long>(cuts[i + 1] - cuts[i]), static_cast<long>(q))});
    }
    const ActionId a{static_cast<std::uint32_t>(uniform(0, params.alphabet_size - 1))};
    return {a, Distribution::from_entries(std::move(entries))};
  };

  std::vector<std::vector<Transition>> made(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (level[i] == 0) continue;
    std::vector<std::size_t> peers;
    for (std::size_t j = 0; j < i; ++j) {
      if (level[j] == level[i] && !made[j].empty()) peers.push_back(j);
    }
    const std::size_t roll = uniform(0, 7);
    if (!peers.empty() && roll < 2) {
      made[i] = made[peers[uniform(0, peers.size() - 1)]];
      if (roll == 1 && made[i].size() < params.max_fanout) made[i].push_back(random_transition(i));
    } else {
      const std::size_t fanout = uniform(1, params.max_fanout);
      for (std::size_t f = 0; f < fanout; ++f) made[i].push_back(random_transition(i));
    }
    for (const auto& t : made[i]) builder.add_transition(ids[i], t.action, t.target);
  }
  return std::move(builder).build();
}

}  // namespace probmetric
