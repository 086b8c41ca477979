#pragma once

#include "probmetric/flow.hpp"
#include "probmetric/pts.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace probmetric {

/// Binary relation over the processes of one Pts.
class Relation {
 public:
  explicit Relation(std::size_t universe, bool full = false)
      : universe_(universe), bits_(universe * universe, full ? 1 : 0) {}

  static Relation full(std::size_t universe) { return Relation(universe, true); }
  static Relation empty(std::size_t universe) { return Relation(universe, false); }

  std::size_t universe() const { return universe_; }

  bool contains(ProcessId s, ProcessId t) const { return bits_[index(s, t)] != 0; }
  void insert(ProcessId s, ProcessId t) { bits_[index(s, t)] = 1; }
  void erase(ProcessId s, ProcessId t) { bits_[index(s, t)] = 0; }

  std::size_t size() const {
    std::size_t n = 0;
    for (char b : bits_) n += b != 0;
    return n;
  }

  std::vector<std::pair<ProcessId, ProcessId>> pairs() const {
    std::vector<std::pair<ProcessId, ProcessId>> out;
    for (std::uint32_t i = 0; i < universe_; ++i) {
      for (std::uint32_t j = 0; j < universe_; ++j) {
        if (contains({i}, {j})) out.emplace_back(ProcessId{i}, ProcessId{j});
      }
    }
    return out;
  }

  Relation inverse() const {
    Relation r(universe_);
    for (std::uint32_t i = 0; i < universe_; ++i) {
      for (std::uint32_t j = 0; j < universe_; ++j) {
        if (contains({i}, {j})) r.insert({j}, {i});
      }
    }
    return r;
  }

  friend Relation operator&(const Relation& a, const Relation& b) {
    Relation r(a.universe_);
    for (std::size_t i = 0; i < a.bits_.size(); ++i) r.bits_[i] = a.bits_[i] && b.bits_[i];
    return r;
  }

  bool subset_of(const Relation& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] && !other.bits_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t index(ProcessId s, ProcessId t) const {
    if (s.index >= universe_ || t.index >= universe_) throw UnknownProcess("#" + std::to_string(std::max(s.index, t.index)));
    return static_cast<std::size_t>(s.index) * universe_ + t.index;
  }

  std::size_t universe_;
  std::vector<char> bits_;
};

/// Whether `lhs` R† `rhs`: a coupling of the two distributions supported inside R exists.
inline bool lift_check(const Relation& r, const Distribution& lhs, const Distribution& rhs) {
  std::vector<Rational> supply, demand;
  for (const auto& e : lhs.entries()) supply.push_back(e.weight);
  for (const auto& e : rhs.entries()) demand.push_back(e.weight);
  auto left = lhs.entries();
  auto right = rhs.entries();
  return coupling_exists(supply, demand, [&](std::size_t i, std::size_t j) {
    return r.contains(left[i].process, right[j].process);
  });
}

enum class RelationKind { simulation, ready_simulation, bisimulation };

/// Why (s, t) drops out of the next refinement step.
struct TransferFailure {
  /// Process whose move could not be answered (s, or t for the symmetric half of bisimulation).
  ProcessId mover;
  ActionId action;
  /// The unanswered target; empty when the ready clause failed (t can do `action`, s cannot).
  std::optional<Distribution> target;
};

namespace detail {

inline std::optional<TransferFailure> one_way_transfer(const Pts& pts, const Relation& previous,
                                                       ProcessId s, ProcessId t) {
  for (const auto& move : pts.transitions(s)) {
    bool answered = false;
    for (const auto& reply : pts.transitions(t, move.action)) {
      if (lift_check(previous, move.target, reply.target)) {
        answered = true;
        break;
      }
    }
    if (!answered) return TransferFailure{s, move.action, move.target};
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * Checks the transfer condition of one refinement step for the pair (s, t)
 * against the previous approximant.
 *
 * - simulation: every s -a-> pi is answered by some t -a-> pi' with pi previous† pi'.
 * - ready_simulation: additionally init(t) is contained in init(s).
 * - bisimulation: the simulation condition in both directions.
 */
inline std::optional<TransferFailure> transfer_failure(const Pts& pts, RelationKind kind,
                                                       const Relation& previous, ProcessId s,
                                                       ProcessId t) {
  if (auto f = detail::one_way_transfer(pts, previous, s, t)) return f;
  if (kind == RelationKind::ready_simulation) {
    for (auto a : pts.actions()) {
      if (!pts.can_do(s, a) && pts.can_do(t, a)) return TransferFailure{t, a, std::nullopt};
    }
  }
  if (kind == RelationKind::bisimulation) {
    // `previous` is symmetric for bisimulation approximants, so the inverse is itself.
    if (auto f = detail::one_way_transfer(pts, previous, t, s)) return f;
  }
  return std::nullopt;
}

/// One application of the refinement operator of `kind`.
inline Relation refine(const Pts& pts, RelationKind kind, const Relation& previous) {
  Relation next(pts.num_processes());
  for (auto s : pts.processes()) {
    for (auto t : pts.processes()) {
      if (!transfer_failure(pts, kind, previous, s, t)) next.insert(s, t);
    }
  }
  return next;
}

/// The k-th approximant: the full relation at k = 0, then k refinement steps.
inline Relation upto_relation(const Pts& pts, RelationKind kind, std::size_t k) {
  Relation r = Relation::full(pts.num_processes());
  for (std::size_t i = 0; i < k; ++i) {
    Relation next = refine(pts, kind, r);
    if (next == r) break;
    r = std::move(next);
  }
  return r;
}

inline Relation upto_simulation(const Pts& pts, std::size_t k) {
  return upto_relation(pts, RelationKind::simulation, k);
}

inline Relation upto_ready_simulation(const Pts& pts, std::size_t k) {
  return upto_relation(pts, RelationKind::ready_simulation, k);
}

/// Up-to-k bisimulation: s ~_{k+1} t iff each process answers every move of
/// the other with a derivative related by the lifting of ~_k.
inline Relation upto_bisimulation(const Pts& pts, std::size_t k) {
  return upto_relation(pts, RelationKind::bisimulation, k);
}

/// Kernel of the up-to-k simulation: mutual up-to-k similarity.
inline Relation upto_mutual_simulation(const Pts& pts, std::size_t k) {
  const Relation sim = upto_simulation(pts, k);
  return sim & sim.inverse();
}

/// Greatest fixpoint, reached by iterating from the full relation. The chain is
/// strictly decreasing until it stabilizes, so |S|^2 + 1 rounds always suffice.
inline Relation greatest_relation(const Pts& pts, RelationKind kind) {
  const std::size_t n = pts.num_processes();
  Relation r = Relation::full(n);
  for (std::size_t round = 0; round <= n * n + 1; ++round) {
    Relation next = refine(pts, kind, r);
    if (next == r) return r;
    r = std::move(next);
  }
  throw std::logic_error("relation refinement did not stabilize");
}

}  // namespace probmetric
