#pragma once

#include "probmetric/logic.hpp"
#include "probmetric/metrics.hpp"
#include "probmetric/mimicking.hpp"
#include "probmetric/transport.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace probmetric {

/// Optimal logical matching: positive masses on pairs of terms, with the
/// weight vectors of the two distribution formulae as marginals.
struct LogicalMatching {
  struct Entry {
    StateFormula left;
    StateFormula right;
    Rational mass;
  };
  Rational cost;
  std::vector<Entry> entries;
};

/**
 * Up-to-k distances L^k between state formulae and D^k between distribution
 * formulae, for one discount factor.
 *
 * Formulae are compared exactly as given; no normalization takes place.
 * Results are memoized on (k, formula, formula) up to syntactic identity, so
 * one instance can serve many queries over formulae sharing structure.
 */
class FormulaDistance {
 public:
  explicit FormulaDistance(Discount lambda) : lambda_(std::move(lambda)) {}

  const Discount& discount() const { return lambda_; }

  Rational state(std::size_t k, const StateFormula& x, const StateFormula& y) {
    if (k == 0) return 0;
    Key key{k, x, y};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational result = compute(k, x, y);
    memo_.emplace(std::move(key), result);
    return result;
  }

  Rational distribution(std::size_t k, const DistFormula& x, const DistFormula& y) {
    return matching(k, x, y).cost;
  }

  LogicalMatching matching(std::size_t k, const DistFormula& x, const DistFormula& y) {
    auto left = x.terms();
    auto right = y.terms();
    std::vector<Rational> supply, demand, costs;
    for (const auto& t : left) supply.push_back(t.weight);
    for (const auto& t : right) demand.push_back(t.weight);
    for (const auto& a : left) {
      for (const auto& b : right) costs.push_back(state(k, a.formula, b.formula));
    }
    auto plan = solve_transport(supply, demand, costs);
    LogicalMatching m{std::move(plan.cost), {}};
    for (auto& c : plan.cells) m.entries.push_back({left[c.source].formula, right[c.sink].formula, std::move(c.mass)});
    return m;
  }

 private:
  struct Key {
    std::size_t k;
    StateFormula x;
    StateFormula y;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const {
      return DistFormula::mix(DistFormula::mix(key.k, key.x.hash()), key.y.hash());
    }
  };

  static std::vector<StateFormula> distinct(std::span<const StateFormula> xs) {
    std::unordered_set<StateFormula, StateFormulaHash> seen;
    std::vector<StateFormula> out;
    for (const auto& x : xs) {
      if (seen.insert(x).second) out.push_back(x);
    }
    return out;
  }

  Rational compute(std::size_t k, const StateFormula& x, const StateFormula& y) {
    using Kind = StateFormula::Kind;
    if (x.kind() != y.kind()) return 1;
    switch (x.kind()) {
      case Kind::top:
        return 0;
      case Kind::negation:
        return state(k, x.body(), y.body());
      case Kind::diamond:
        if (x.action() != y.action()) return 1;
        return lambda_.value() * distribution(k - 1, x.distribution(), y.distribution());
      case Kind::conjunction: {
        const auto xs = distinct(x.conjuncts());
        const auto ys = distinct(y.conjuncts());
        return hausdorff(xs, ys, [&](const StateFormula& a, const StateFormula& b) { return state(k, a, b); });
      }
    }
    return 1;
  }

  Discount lambda_;
  std::unordered_map<Key, Rational, KeyHash> memo_;
};

inline Rational state_distance_upto(const Discount& lambda, std::size_t k, const StateFormula& x,
                                    const StateFormula& y) {
  return FormulaDistance(lambda).state(k, x, y);
}

inline Rational dist_distance_upto(const Discount& lambda, std::size_t k, const DistFormula& x,
                                   const DistFormula& y) {
  return FormulaDistance(lambda).distribution(k, x, y);
}

namespace detail {

inline Rational stabilized_state_distance(FormulaDistance& distance, const StateFormula& x, const StateFormula& y) {
  const std::size_t k = std::max(x.modal_depth(), y.modal_depth()) + 1;
  Rational value = distance.state(k, x, y);
  if (distance.state(k + 1, x, y) != value) throw std::logic_error("formula distance did not stabilize");
  return value;
}

}  // namespace detail

/// Limit distance L: the up-to-k distance once k exceeds both modal depths.
inline Rational state_distance(const Discount& lambda, const StateFormula& x, const StateFormula& y) {
  FormulaDistance distance(lambda);
  return detail::stabilized_state_distance(distance, x, y);
}

inline Rational dist_distance(const Discount& lambda, const DistFormula& x, const DistFormula& y) {
  FormulaDistance distance(lambda);
  const std::size_t k = std::max(x.modal_depth(), y.modal_depth()) + 1;
  Rational value = distance.distribution(k, x, y);
  if (distance.distribution(k + 1, x, y) != value) throw std::logic_error("formula distance did not stabilize");
  return value;
}

/// l^k(s, t) = L^k(phi_s^k, phi_t^k).
inline Rational logical_distance_upto(const Pts& pts, const Discount& lambda, std::size_t k, ProcessId s,
                                      ProcessId t) {
  FormulaBuilder builder(pts);
  return state_distance_upto(lambda, k, builder.mimicking(s, k), builder.mimicking(t, k));
}

/// l(s, t) = L(phi_s, phi_t). Throws NotFiniteProcess.
inline Rational logical_distance(const Pts& pts, const Discount& lambda, ProcessId s, ProcessId t) {
  return state_distance(lambda, mimicking(pts, s), mimicking(pts, t));
}

}  // namespace probmetric
