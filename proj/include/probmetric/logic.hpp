#pragma once

#include "probmetric/flow.hpp"
#include "probmetric/pts.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace probmetric {

class DistFormula;

namespace detail {
struct StateNode;
}

/**
 * State formula of the probabilistic modal logic:
 *
 *   phi ::= T | ~phi | phi_1 & ... & phi_n (n >= 1) | <a> psi
 *
 * Immutable and cheap to copy; equal subformulas may share storage. Action
 * labels are plain names so that formulas exist independently of any system.
 */
class StateFormula {
 public:
  enum class Kind : std::uint8_t { top, negation, conjunction, diamond };

  static StateFormula top();
  static StateFormula negation(StateFormula body);
  /// Throws SemanticError on an empty list.
  static StateFormula conjunction(std::vector<StateFormula> conjuncts);
  static StateFormula diamond(std::string action, DistFormula distribution);
  /// `<a> phi`, shorthand for `<a>(1 phi)`.
  static StateFormula diamond(std::string action, StateFormula body);

  Kind kind() const;
  const StateFormula& body() const;
  std::span<const StateFormula> conjuncts() const;
  const std::string& action() const;
  const DistFormula& distribution() const;

  std::size_t hash() const;
  std::size_t modal_depth() const;

  /// Storage identity; equal identities imply structural equality.
  const void* identity() const { return node_.get(); }

 private:
  explicit StateFormula(std::shared_ptr<const detail::StateNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::StateNode> node_;
};

struct WeightedFormula {
  Rational weight;
  StateFormula formula;
};

/// Distribution formula r_1 phi_1 (+) ... (+) r_n phi_n: weights in (0,1] summing to 1.
class DistFormula {
 public:
  /// Throws SemanticError when the weights are not a probability vector.
  explicit DistFormula(std::vector<WeightedFormula> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw SemanticError("distribution formula without terms");
    Rational total = 0;
    hash_ = 0x9e3779b97f4a7c15ULL;
    for (const auto& t : terms_) {
      if (t.weight <= 0 || t.weight > 1) throw SemanticError("formula weight " + to_string(t.weight) + " outside (0,1]");
      total += t.weight;
      depth_ = std::max(depth_, t.formula.modal_depth());
      hash_ = mix(mix(hash_, std::hash<std::string>{}(t.weight.str())), t.formula.hash());
    }
    if (total != 1) throw SemanticError("formula weights sum to " + to_string(total) + ", not 1");
  }

  static DistFormula dirac(StateFormula phi) { return DistFormula({{Rational(1), std::move(phi)}}); }

  std::span<const WeightedFormula> terms() const { return terms_; }
  std::size_t hash() const { return hash_; }
  std::size_t modal_depth() const { return depth_; }

  static std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  }

 private:
  std::vector<WeightedFormula> terms_;
  std::size_t hash_ = 0;
  std::size_t depth_ = 0;
};

namespace detail {

struct StateNode {
  StateFormula::Kind kind;
  std::string action;
  std::vector<StateFormula> children;
  std::optional<DistFormula> distribution;
  std::size_t hash = 0;
  std::size_t depth = 0;
};

}  // namespace detail

inline StateFormula StateFormula::top() {
  static const auto node = [] {
    auto n = std::make_shared<detail::StateNode>();
    n->kind = Kind::top;
    n->hash = 0x51ed27;
    return std::shared_ptr<const detail::StateNode>(std::move(n));
  }();
  return StateFormula(node);
}

inline StateFormula StateFormula::negation(StateFormula body) {
  auto n = std::make_shared<detail::StateNode>();
  n->kind = Kind::negation;
  n->hash = DistFormula::mix(0x2b, body.hash());
  n->depth = body.modal_depth();
  n->children.push_back(std::move(body));
  return StateFormula(std::move(n));
}

inline StateFormula StateFormula::conjunction(std::vector<StateFormula> conjuncts) {
  if (conjuncts.empty()) throw SemanticError("empty conjunction");
  auto n = std::make_shared<detail::StateNode>();
  n->kind = Kind::conjunction;
  n->hash = 0x3c;
  for (const auto& c : conjuncts) {
    n->hash = DistFormula::mix(n->hash, c.hash());
    n->depth = std::max(n->depth, c.modal_depth());
  }
  n->children = std::move(conjuncts);
  return StateFormula(std::move(n));
}

inline StateFormula StateFormula::diamond(std::string action, DistFormula distribution) {
  if (action.empty()) throw SemanticError("empty action label");
  auto n = std::make_shared<detail::StateNode>();
  n->kind = Kind::diamond;
  n->hash = DistFormula::mix(DistFormula::mix(0x4d, std::hash<std::string>{}(action)), distribution.hash());
  n->depth = 1 + distribution.modal_depth();
  n->action = std::move(action);
  n->distribution.emplace(std::move(distribution));
  return StateFormula(std::move(n));
}

inline StateFormula StateFormula::diamond(std::string action, StateFormula body) {
  return diamond(std::move(action), DistFormula::dirac(std::move(body)));
}

inline StateFormula::Kind StateFormula::kind() const { return node_->kind; }
inline const StateFormula& StateFormula::body() const { return node_->children.front(); }
inline std::span<const StateFormula> StateFormula::conjuncts() const { return node_->children; }
inline const std::string& StateFormula::action() const { return node_->action; }
inline const DistFormula& StateFormula::distribution() const { return *node_->distribution; }
inline std::size_t StateFormula::hash() const { return node_->hash; }
inline std::size_t StateFormula::modal_depth() const { return node_->depth; }

inline std::size_t modal_depth(const StateFormula& phi) { return phi.modal_depth(); }
inline std::size_t modal_depth(const DistFormula& psi) { return psi.modal_depth(); }

std::strong_ordering compare(const DistFormula& a, const DistFormula& b);

/// Fixed structural total order: constructor tag, then action label, then
/// children (weights before formulas in distribution terms) lexicographically.
inline std::strong_ordering compare(const StateFormula& a, const StateFormula& b) {
  if (a.identity() == b.identity()) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case StateFormula::Kind::top:
      return std::strong_ordering::equal;
    case StateFormula::Kind::negation:
      return compare(a.body(), b.body());
    case StateFormula::Kind::conjunction: {
      auto xs = a.conjuncts();
      auto ys = b.conjuncts();
      for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (auto c = compare(xs[i], ys[i]); c != 0) return c;
      }
      return xs.size() <=> ys.size();
    }
    case StateFormula::Kind::diamond:
      if (auto c = a.action() <=> b.action(); c != 0) return c;
      return compare(a.distribution(), b.distribution());
  }
  return std::strong_ordering::equal;
}

inline std::strong_ordering compare(const DistFormula& a, const DistFormula& b) {
  auto xs = a.terms();
  auto ys = b.terms();
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (xs[i].weight != ys[i].weight) {
      return xs[i].weight < ys[i].weight ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = compare(xs[i].formula, ys[i].formula); c != 0) return c;
  }
  return xs.size() <=> ys.size();
}

/// Syntactic identity.
inline bool operator==(const StateFormula& a, const StateFormula& b) {
  return a.identity() == b.identity() || (a.hash() == b.hash() && compare(a, b) == 0);
}
inline bool operator==(const DistFormula& a, const DistFormula& b) {
  return a.hash() == b.hash() && compare(a, b) == 0;
}

struct StateFormulaHash {
  std::size_t operator()(const StateFormula& phi) const { return phi.hash(); }
};

/// Every action label occurring in `phi`.
inline std::set<std::string> actions_of(const StateFormula& phi) {
  std::set<std::string> out;
  std::unordered_set<const void*> seen;
  std::vector<StateFormula> todo{phi};
  while (!todo.empty()) {
    StateFormula f = std::move(todo.back());
    todo.pop_back();
    if (!seen.insert(f.identity()).second) continue;
    switch (f.kind()) {
      case StateFormula::Kind::top:
        break;
      case StateFormula::Kind::negation:
        todo.push_back(f.body());
        break;
      case StateFormula::Kind::conjunction:
        for (const auto& c : f.conjuncts()) todo.push_back(c);
        break;
      case StateFormula::Kind::diamond:
        out.insert(f.action());
        for (const auto& t : f.distribution().terms()) todo.push_back(t.formula);
        break;
    }
  }
  return out;
}

inline std::set<std::string> actions_of(const DistFormula& psi) {
  std::set<std::string> out;
  for (const auto& t : psi.terms()) out.merge(actions_of(t.formula));
  return out;
}

/// Satisfaction checker with a per-instance memo; the memo keeps its formulas alive.
class Satisfaction {
 public:
  explicit Satisfaction(const Pts& pts) : pts_(pts) {}

  bool state(ProcessId s, const StateFormula& phi) {
    pts_.check(s);
    auto& slot = memo_.try_emplace(phi.identity(), Entry{phi, {}}).first->second;
    if (slot.values.empty()) slot.values.assign(pts_.num_processes(), -1);
    if (slot.values[s.index] >= 0) return slot.values[s.index] != 0;

    bool result = false;
    switch (phi.kind()) {
      case StateFormula::Kind::top:
        result = true;
        break;
      case StateFormula::Kind::negation:
        result = !state(s, phi.body());
        break;
      case StateFormula::Kind::conjunction:
        result = std::all_of(phi.conjuncts().begin(), phi.conjuncts().end(),
                             [&](const StateFormula& c) { return state(s, c); });
        break;
      case StateFormula::Kind::diamond: {
        const ActionId a = pts_.action(phi.action());
        for (const auto& t : pts_.transitions(s, a)) {
          if (distribution(t.target, phi.distribution())) {
            result = true;
            break;
          }
        }
        break;
      }
    }
    // Recursive calls may have rehashed the memo; look the slot up again.
    memo_.find(phi.identity())->second.values[s.index] = result ? 1 : 0;
    return result;
  }

  /// pi |= (+) r_i phi_i iff pi splits as sum r_i pi_i with every state of
  /// supp(pi_i) satisfying phi_i: a coupling of pi and the weight vector
  /// restricted to satisfying (state, term) cells.
  bool distribution(const Distribution& pi, const DistFormula& psi) {
    std::vector<Rational> supply, demand;
    for (const auto& e : pi.entries()) supply.push_back(e.weight);
    for (const auto& t : psi.terms()) demand.push_back(t.weight);
    auto states = pi.entries();
    auto terms = psi.terms();
    return coupling_exists(supply, demand, [&](std::size_t i, std::size_t j) {
      return state(states[i].process, terms[j].formula);
    });
  }

 private:
  struct Entry {
    StateFormula formula;
    std::vector<signed char> values;
  };

  const Pts& pts_;
  std::unordered_map<const void*, Entry> memo_;
};

namespace detail {

inline void check_actions(const Pts& pts, const std::set<std::string>& actions) {
  for (const auto& a : actions) pts.action(a);
}

}  // namespace detail

/// Throws UnknownProcess, or UnknownAction for a label outside the alphabet.
inline bool satisfies(const Pts& pts, ProcessId s, const StateFormula& phi) {
  pts.check(s);
  detail::check_actions(pts, actions_of(phi));
  return Satisfaction(pts).state(s, phi);
}

inline bool satisfies(const Pts& pts, const Distribution& pi, const DistFormula& psi) {
  for (const auto& e : pi.entries()) pts.check(e.process);
  detail::check_actions(pts, actions_of(psi));
  return Satisfaction(pts).distribution(pi, psi);
}

/**
 * Canonical representative of the L-equivalence class.
 *
 * Children are normalized first; nested conjunctions are spliced into their
 * parent, duplicate conjuncts removed and the rest sorted by `compare`. In a
 * distribution formula, terms whose normalized formulas coincide are merged
 * by adding their weights, then sorted. A conjunction with a single member
 * stays a conjunction.
 */
class Normalizer {
 public:
  StateFormula state(const StateFormula& phi) {
    if (auto it = memo_.find(phi.identity()); it != memo_.end()) return it->second.second;
    StateFormula result = compute(phi);
    memo_.emplace(phi.identity(), std::make_pair(phi, result));
    return result;
  }

  DistFormula distribution(const DistFormula& psi) {
    std::vector<WeightedFormula> terms;
    for (const auto& t : psi.terms()) terms.push_back({t.weight, state(t.formula)});
    std::sort(terms.begin(), terms.end(),
              [](const WeightedFormula& x, const WeightedFormula& y) { return compare(x.formula, y.formula) < 0; });
    std::vector<WeightedFormula> merged;
    for (auto& t : terms) {
      if (!merged.empty() && merged.back().formula == t.formula) {
        merged.back().weight += t.weight;
      } else {
        merged.push_back(std::move(t));
      }
    }
    return DistFormula(std::move(merged));
  }

 private:
  StateFormula compute(const StateFormula& phi) {
    switch (phi.kind()) {
      case StateFormula::Kind::top:
        return phi;
      case StateFormula::Kind::negation:
        return StateFormula::negation(state(phi.body()));
      case StateFormula::Kind::diamond:
        return StateFormula::diamond(phi.action(), distribution(phi.distribution()));
      case StateFormula::Kind::conjunction: {
        std::vector<StateFormula> members;
        for (const auto& c : phi.conjuncts()) {
          StateFormula n = state(c);
          if (n.kind() == StateFormula::Kind::conjunction) {
            members.insert(members.end(), n.conjuncts().begin(), n.conjuncts().end());
          } else {
            members.push_back(std::move(n));
          }
        }
        std::sort(members.begin(), members.end(),
                  [](const StateFormula& x, const StateFormula& y) { return compare(x, y) < 0; });
        members.erase(std::unique(members.begin(), members.end()), members.end());
        return StateFormula::conjunction(std::move(members));
      }
    }
    return phi;
  }

  std::unordered_map<const void*, std::pair<StateFormula, StateFormula>> memo_;
};

inline StateFormula normalize(const StateFormula& phi) { return Normalizer().state(phi); }
inline DistFormula normalize(const DistFormula& psi) { return Normalizer().distribution(psi); }

/// L-equivalence, decided on canonical forms.
inline bool l_equiv(const StateFormula& x, const StateFormula& y) {
  Normalizer n;
  return n.state(x) == n.state(y);
}

inline bool l_equiv(const DistFormula& x, const DistFormula& y) {
  Normalizer n;
  return n.distribution(x) == n.distribution(y);
}

}  // namespace probmetric
