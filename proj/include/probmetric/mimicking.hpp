#pragma once

#include "probmetric/logic.hpp"
#include "probmetric/pts.hpp"

#include <map>
#include <utility>
#include <vector>

namespace probmetric {

/**
 * Builds up-to-k mimicking formulae and simulation characteristic formulae.
 *
 * Results are memoized per (process, k), so formulae for different processes
 * of the same system share their common subformulae.
 */
class FormulaBuilder {
 public:
  explicit FormulaBuilder(const Pts& pts) : pts_(pts) {}

  /// phi_s^k: one diamond per transition (in transition order), then
  /// ~<b>T for every action b that s cannot perform, by action index.
  StateFormula mimicking(ProcessId s, std::size_t k) {
    pts_.check(s);
    if (k == 0) return StateFormula::top();
    const auto key = std::make_pair(s.index, k);
    if (auto it = mimicking_.find(key); it != mimicking_.end()) return it->second;

    std::vector<StateFormula> conjuncts;
    for (const auto& t : pts_.transitions(s)) {
      conjuncts.push_back(StateFormula::diamond(pts_.name(t.action), lift(t.target, k - 1, true)));
    }
    for (auto b : pts_.actions()) {
      if (!pts_.can_do(s, b)) {
        conjuncts.push_back(StateFormula::negation(StateFormula::diamond(pts_.name(b), StateFormula::top())));
      }
    }
    // Only an empty alphabet leaves nothing to conjoin.
    StateFormula result = conjuncts.empty() ? StateFormula::top() : StateFormula::conjunction(std::move(conjuncts));
    mimicking_.emplace(key, result);
    return result;
  }

  /// theta_s^k: the diamonds of phi_s^k without the negated conjuncts; T when s has no transitions.
  StateFormula sim_characteristic(ProcessId s, std::size_t k) {
    pts_.check(s);
    if (k == 0) return StateFormula::top();
    const auto key = std::make_pair(s.index, k);
    if (auto it = characteristic_.find(key); it != characteristic_.end()) return it->second;

    std::vector<StateFormula> conjuncts;
    for (const auto& t : pts_.transitions(s)) {
      conjuncts.push_back(StateFormula::diamond(pts_.name(t.action), lift(t.target, k - 1, false)));
    }
    StateFormula result = conjuncts.empty() ? StateFormula::top() : StateFormula::conjunction(std::move(conjuncts));
    characteristic_.emplace(key, result);
    return result;
  }

  /// psi_pi^k (or upsilon_pi^k): pi(t) phi_t^k summed over the support of pi.
  DistFormula lift(const Distribution& pi, std::size_t k, bool mimic) {
    std::vector<WeightedFormula> terms;
    for (const auto& e : pi.entries()) {
      terms.push_back({e.weight, mimic ? mimicking(e.process, k) : sim_characteristic(e.process, k)});
    }
    return DistFormula(std::move(terms));
  }

 private:
  const Pts& pts_;
  std::map<std::pair<std::uint32_t, std::size_t>, StateFormula> mimicking_;
  std::map<std::pair<std::uint32_t, std::size_t>, StateFormula> characteristic_;
};

inline StateFormula mimicking_upto(const Pts& pts, ProcessId s, std::size_t k) {
  return FormulaBuilder(pts).mimicking(s, k);
}

inline DistFormula mimicking_distribution_upto(const Pts& pts, const Distribution& pi, std::size_t k) {
  return FormulaBuilder(pts).lift(pi, k, true);
}

/// phi_s = phi_s^{depth(s)+1}. Throws NotFiniteProcess.
inline StateFormula mimicking(const Pts& pts, ProcessId s) {
  pts.check(s);
  const auto d = depth(pts, s);
  if (!d) throw NotFiniteProcess(pts.name(s));
  return mimicking_upto(pts, s, *d + 1);
}

inline StateFormula sim_characteristic_upto(const Pts& pts, ProcessId s, std::size_t k) {
  return FormulaBuilder(pts).sim_characteristic(s, k);
}

/// theta_s = theta_s^{depth(s)}. Throws NotFiniteProcess.
inline StateFormula sim_characteristic(const Pts& pts, ProcessId s) {
  pts.check(s);
  const auto d = depth(pts, s);
  if (!d) throw NotFiniteProcess(pts.name(s));
  return sim_characteristic_upto(pts, s, *d);
}

}  // namespace probmetric
