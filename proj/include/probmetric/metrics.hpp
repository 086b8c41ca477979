#pragma once

#include "probmetric/pts.hpp"
#include "probmetric/transport.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace probmetric {

/// Discount factor lambda in (0, 1].
class Discount {
 public:
  explicit Discount(Rational value) : value_(std::move(value)) {
    if (value_ <= 0 || value_ > 1) {
      throw std::invalid_argument("discount " + to_string(value_) + " outside (0,1]");
    }
  }
  const Rational& value() const { return value_; }
  friend bool operator==(const Discount&, const Discount&) = default;

 private:
  Rational value_;
};

/// Symmetric [0,1]-valued table over the process pairs of one Pts.
class PseudometricTable {
 public:
  explicit PseudometricTable(std::size_t universe) : universe_(universe), values_(universe * universe, Rational(0)) {}

  static PseudometricTable zero(std::size_t universe) { return PseudometricTable(universe); }

  std::size_t universe() const { return universe_; }

  const Rational& at(ProcessId s, ProcessId t) const { return values_[index(s, t)]; }

  /// Writes both (s, t) and (t, s).
  void set(ProcessId s, ProcessId t, const Rational& value) {
    if (value < 0 || value > 1) throw std::invalid_argument("distance " + to_string(value) + " outside [0,1]");
    values_[index(s, t)] = value;
    values_[index(t, s)] = value;
  }

  /// First violated axiom, if any: zero self-distance, symmetry, range, triangle inequality.
  std::optional<std::string> pseudometric_violation() const {
    for (std::uint32_t s = 0; s < universe_; ++s) {
      if (at({s}, {s}) != 0) return "d(#" + std::to_string(s) + ",#" + std::to_string(s) + ") != 0";
      for (std::uint32_t t = 0; t < universe_; ++t) {
        const auto& v = at({s}, {t});
        if (v != at({t}, {s})) return "asymmetric at (#" + std::to_string(s) + ",#" + std::to_string(t) + ")";
        if (v < 0 || v > 1) return "out of range at (#" + std::to_string(s) + ",#" + std::to_string(t) + ")";
        for (std::uint32_t p = 0; p < universe_; ++p) {
          if (v > at({s}, {p}) + at({p}, {t})) {
            return "triangle fails for (#" + std::to_string(s) + ",#" + std::to_string(p) + ",#" +
                   std::to_string(t) + ")";
          }
        }
      }
    }
    return std::nullopt;
  }

  /// Pointwise order.
  bool below(const PseudometricTable& other) const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] > other.values_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const PseudometricTable&, const PseudometricTable&) = default;

 private:
  std::size_t index(ProcessId s, ProcessId t) const {
    if (s.index >= universe_ || t.index >= universe_) throw UnknownProcess("#" + std::to_string(std::max(s.index, t.index)));
    return static_cast<std::size_t>(s.index) * universe_ + t.index;
  }

  std::size_t universe_;
  std::vector<Rational> values_;
};

/// An optimal matching, kept for audit: masses are positive and the marginals
/// reproduce the two distributions exactly.
struct Matching {
  struct Entry {
    ProcessId from;
    ProcessId to;
    Rational mass;
  };
  Rational cost;
  std::vector<Entry> entries;
};

inline Matching kantorovich_matching(const PseudometricTable& d, const Distribution& lhs, const Distribution& rhs) {
  auto left = lhs.entries();
  auto right = rhs.entries();
  std::vector<Rational> supply, demand, costs;
  supply.reserve(left.size());
  demand.reserve(right.size());
  costs.reserve(left.size() * right.size());
  for (const auto& e : left) supply.push_back(e.weight);
  for (const auto& e : right) demand.push_back(e.weight);
  for (const auto& a : left) {
    for (const auto& b : right) costs.push_back(d.at(a.process, b.process));
  }
  auto plan = solve_transport(supply, demand, costs);
  Matching m{std::move(plan.cost), {}};
  for (auto& c : plan.cells) m.entries.push_back({left[c.source].process, right[c.sink].process, std::move(c.mass)});
  return m;
}

/// Kantorovich lifting K(d)(lhs, rhs): minimum expected distance over all matchings.
inline Rational kantorovich(const PseudometricTable& d, const Distribution& lhs, const Distribution& rhs) {
  return kantorovich_matching(d, lhs, rhs).cost;
}

/**
 * Hausdorff lifting of `dist` to the finite collections `lhs` and `rhs`:
 * the larger of the two directed sup-inf distances, with inf over an empty
 * set equal to 1 and sup over an empty set equal to 0.
 */
template <class LeftRange, class RightRange, class Dist>
Rational hausdorff(const LeftRange& lhs, const RightRange& rhs, Dist&& dist) {
  Rational forward = 0;
  for (const auto& x : lhs) {
    Rational best = 1;
    for (const auto& y : rhs) {
      Rational v = dist(x, y);
      if (v < best) best = std::move(v);
    }
    if (best > forward) forward = std::move(best);
  }
  Rational backward = 0;
  for (const auto& y : rhs) {
    Rational best = 1;
    for (const auto& x : lhs) {
      Rational v = dist(x, y);
      if (v < best) best = std::move(v);
    }
    if (best > backward) backward = std::move(best);
  }
  return forward > backward ? forward : backward;
}

/// Bisimulation metric functional B applied once to `d`.
inline PseudometricTable metric_step(const Pts& pts, const Discount& lambda, const PseudometricTable& d) {
  if (d.universe() != pts.num_processes()) throw std::invalid_argument("table does not match the system");
  PseudometricTable next(pts.num_processes());
  auto lifted = [&](const Transition& x, const Transition& y) {
    return Rational(lambda.value() * kantorovich(d, x.target, y.target));
  };
  for (auto s : pts.processes()) {
    for (auto t : pts.processes()) {
      if (t < s) continue;
      Rational best = 0;
      for (auto a : pts.actions()) {
        Rational h = hausdorff(pts.transitions(s, a), pts.transitions(t, a), lifted);
        if (h > best) best = std::move(h);
      }
      next.set(s, t, best);
    }
  }
  return next;
}

/// d^k = B^k(0).
inline PseudometricTable upto_k_metric(const Pts& pts, const Discount& lambda, std::size_t k) {
  auto d = PseudometricTable::zero(pts.num_processes());
  for (std::size_t i = 0; i < k; ++i) d = metric_step(pts, lambda, d);
  return d;
}

/// Least fixed point of B on a system of finite processes.
///
/// After 1 + max depth steps every behaviour is exhausted; one further step is
/// checked to be a no-op. Throws NotFiniteProcess when a cycle is reachable.
inline PseudometricTable bisimilarity_metric(const Pts& pts, const Discount& lambda) {
  const std::size_t k = max_depth(pts) + 1;
  auto d = upto_k_metric(pts, lambda, k);
  if (metric_step(pts, lambda, d) != d) throw std::logic_error("bisimilarity metric did not stabilize");
  return d;
}

}  // namespace probmetric
