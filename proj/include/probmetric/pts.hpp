#pragma once

#include "probmetric/error.hpp"
#include "probmetric/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace probmetric {

/// Index of a process inside its owning Pts.
struct ProcessId {
  std::uint32_t index = 0;
  friend auto operator<=>(const ProcessId&, const ProcessId&) = default;
};

/// Index of an action label inside the declared alphabet of its owning Pts.
struct ActionId {
  std::uint32_t index = 0;
  friend auto operator<=>(const ActionId&, const ActionId&) = default;
};

/// Finite-support probability distribution over processes.
///
/// Entries are kept sorted by process, every weight is strictly positive and
/// the weights sum to exactly one.
class Distribution {
 public:
  struct Entry {
    ProcessId process;
    Rational weight;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// Validates and canonicalizes. Throws SemanticError on a non-positive
  /// weight, a repeated process, an empty support or a total other than 1.
  static Distribution from_entries(std::vector<Entry> entries) {
    if (entries.empty()) throw SemanticError("distribution with empty support");
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.process < b.process; });
    Rational total = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].weight <= 0) throw SemanticError("distribution weight must be positive");
      if (i > 0 && entries[i - 1].process == entries[i].process) {
        throw SemanticError("process listed twice in one distribution");
      }
      total += entries[i].weight;
    }
    if (total != 1) throw SemanticError("distribution weights sum to " + to_string(total) + ", not 1");
    Distribution d;
    d.entries_ = std::move(entries);
    return d;
  }

  std::span<const Entry> entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  std::vector<ProcessId> support() const {
    std::vector<ProcessId> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.process);
    return out;
  }

  /// Mass on `p`; zero outside the support.
  Rational mass(ProcessId p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, ProcessId q) { return e.process < q; });
    if (it != entries_.end() && it->process == p) return it->weight;
    return 0;
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

  /// Lexicographic on (process, weight) pairs.
  friend bool operator<(const Distribution& a, const Distribution& b) {
    return std::lexicographical_compare(
        a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
        [](const Entry& x, const Entry& y) {
          if (x.process != y.process) return x.process < y.process;
          return x.weight < y.weight;
        });
  }

 private:
  Distribution() = default;
  std::vector<Entry> entries_;
};

inline Distribution dirac(ProcessId s) { return Distribution::from_entries({{s, Rational(1)}}); }

/// Pointwise weighted sum. Coefficients must lie in (0,1] and sum to 1.
inline Distribution convex_combination(std::span<const std::pair<Rational, Distribution>> parts) {
  Rational total = 0;
  for (const auto& [p, _] : parts) {
    if (p <= 0 || p > 1) throw CoefficientSumError("coefficient " + to_string(p) + " outside (0,1]");
    total += p;
  }
  if (parts.empty() || total != 1) {
    throw CoefficientSumError("coefficients sum to " + to_string(total) + ", not 1");
  }
  std::vector<Distribution::Entry> merged;
  for (const auto& [p, dist] : parts) {
    for (const auto& e : dist.entries()) merged.push_back({e.process, p * e.weight});
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.process < b.process; });
  std::vector<Distribution::Entry> out;
  for (auto& e : merged) {
    if (!out.empty() && out.back().process == e.process) {
      out.back().weight += e.weight;
    } else {
      out.push_back(std::move(e));
    }
  }
  return Distribution::from_entries(std::move(out));
}

struct Transition {
  ActionId action;
  Distribution target;
  friend bool operator==(const Transition&, const Transition&) = default;
  friend bool operator<(const Transition& a, const Transition& b) {
    if (a.action != b.action) return a.action < b.action;
    return a.target < b.target;
  }
};

class PtsBuilder;

/// Nondeterministic probabilistic labelled transition system over a finite
/// declared alphabet. Immutable once built.
class Pts {
 public:
  std::size_t num_processes() const { return process_names_.size(); }
  std::size_t num_actions() const { return action_names_.size(); }

  auto processes() const {
    return std::views::iota(std::uint32_t{0}, static_cast<std::uint32_t>(num_processes())) |
           std::views::transform([](std::uint32_t i) { return ProcessId{i}; });
  }
  auto actions() const {
    return std::views::iota(std::uint32_t{0}, static_cast<std::uint32_t>(num_actions())) |
           std::views::transform([](std::uint32_t i) { return ActionId{i}; });
  }

  const std::string& name(ProcessId s) const {
    check(s);
    return process_names_[s.index];
  }
  const std::string& name(ActionId a) const {
    check(a);
    return action_names_[a.index];
  }

  std::optional<ProcessId> find_process(std::string_view name) const {
    auto it = process_index_.find(std::string(name));
    if (it == process_index_.end()) return std::nullopt;
    return ProcessId{it->second};
  }
  std::optional<ActionId> find_action(std::string_view name) const {
    auto it = action_index_.find(std::string(name));
    if (it == action_index_.end()) return std::nullopt;
    return ActionId{it->second};
  }

  /// Throws UnknownProcess.
  ProcessId process(std::string_view name) const {
    if (auto p = find_process(name)) return *p;
    throw UnknownProcess(std::string(name));
  }
  /// Throws UnknownAction.
  ActionId action(std::string_view name) const {
    if (auto a = find_action(name)) return *a;
    throw UnknownAction(std::string(name));
  }

  void check(ProcessId s) const {
    if (s.index >= num_processes()) throw UnknownProcess("#" + std::to_string(s.index));
  }
  void check(ActionId a) const {
    if (a.index >= num_actions()) throw UnknownAction("#" + std::to_string(a.index));
  }

  /// All outgoing transitions of `s`, sorted by (action, target), no duplicates.
  std::span<const Transition> transitions(ProcessId s) const {
    check(s);
    return transitions_[s.index];
  }

  /// The contiguous block of `transitions(s)` labelled `a`.
  std::span<const Transition> transitions(ProcessId s, ActionId a) const {
    check(a);
    auto all = transitions(s);
    auto lo = std::partition_point(all.begin(), all.end(),
                                   [a](const Transition& t) { return t.action < a; });
    auto hi = std::partition_point(lo, all.end(),
                                   [a](const Transition& t) { return t.action <= a; });
    return {lo, hi};
  }

  bool can_do(ProcessId s, ActionId a) const { return !transitions(s, a).empty(); }

  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& ts : transitions_) n += ts.size();
    return n;
  }

  friend bool operator==(const Pts& a, const Pts& b) {
    return a.process_names_ == b.process_names_ && a.action_names_ == b.action_names_ &&
           a.transitions_ == b.transitions_;
  }

 private:
  friend class PtsBuilder;

  std::vector<std::string> process_names_;
  std::vector<std::string> action_names_;
  std::unordered_map<std::string, std::uint32_t> process_index_;
  std::unordered_map<std::string, std::uint32_t> action_index_;
  std::vector<std::vector<Transition>> transitions_;
};

class PtsBuilder {
 public:
  /// Returns the existing id when `name` was already added.
  ProcessId add_process(const std::string& name) {
    if (name.empty()) throw SemanticError("empty process name");
    auto [it, inserted] = pts_.process_index_.try_emplace(name, pts_.process_names_.size());
    if (inserted) {
      pts_.process_names_.push_back(name);
      pts_.transitions_.emplace_back();
    }
    return ProcessId{it->second};
  }

  ActionId add_action(const std::string& name) {
    if (name.empty()) throw SemanticError("empty action name");
    auto [it, inserted] = pts_.action_index_.try_emplace(name, pts_.action_names_.size());
    if (inserted) pts_.action_names_.push_back(name);
    return ActionId{it->second};
  }

  std::optional<ActionId> find_action(const std::string& name) const { return pts_.find_action(name); }

  /// Duplicate transitions collapse.
  void add_transition(ProcessId s, ActionId a, Distribution target) {
    pts_.check(s);
    pts_.check(a);
    for (const auto& e : target.entries()) pts_.check(e.process);
    pts_.transitions_[s.index].push_back({a, std::move(target)});
  }

  Pts build() && {
    for (auto& ts : pts_.transitions_) {
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    }
    return std::move(pts_);
  }

 private:
  Pts pts_;
};

/// init(s): labels with at least one outgoing transition.
inline std::vector<ActionId> init_actions(const Pts& pts, ProcessId s) {
  std::vector<ActionId> out;
  for (const auto& t : pts.transitions(s)) {
    if (out.empty() || out.back() != t.action) out.push_back(t.action);
  }
  return out;
}

/// der(s, a).
inline std::vector<Distribution> derivatives(const Pts& pts, ProcessId s, ActionId a) {
  std::vector<Distribution> out;
  for (const auto& t : pts.transitions(s, a)) out.push_back(t.target);
  return out;
}

/// Depth of every process; std::nullopt marks infinite depth (a cycle is reachable).
inline std::vector<std::optional<std::size_t>> depths(const Pts& pts) {
  enum class Mark : std::uint8_t { unvisited, active, done };
  const std::size_t n = pts.num_processes();
  std::vector<Mark> mark(n, Mark::unvisited);
  std::vector<std::optional<std::size_t>> depth(n);

  // Iterative post-order DFS; frames hold (process, next transition, next support entry).
  struct Frame {
    std::uint32_t process;
    std::size_t transition = 0;
    std::size_t entry = 0;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::unvisited) continue;
    std::vector<Frame> stack{{root}};
    mark[root] = Mark::active;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto ts = pts.transitions(ProcessId{f.process});
      bool descended = false;
      while (f.transition < ts.size()) {
        auto entries = ts[f.transition].target.entries();
        if (f.entry >= entries.size()) {
          ++f.transition;
          f.entry = 0;
          continue;
        }
        const std::uint32_t next = entries[f.entry++].process.index;
        if (mark[next] == Mark::unvisited) {
          mark[next] = Mark::active;
          stack.push_back({next});
          descended = true;
          break;
        }
      }
      if (descended) continue;

      // All successors are finished or on the stack; a successor on the stack closes a cycle.
      const std::uint32_t s = f.process;
      std::optional<std::size_t> d = 0;
      for (const auto& t : ts) {
        for (const auto& e : t.target.entries()) {
          const auto q = e.process.index;
          if (mark[q] == Mark::active || !depth[q]) {
            d.reset();
            break;
          }
          d = std::max(*d, *depth[q] + 1);
        }
        if (!d) break;
      }
      depth[s] = d;
      mark[s] = Mark::done;
      stack.pop_back();
    }
  }
  return depth;
}

inline std::optional<std::size_t> depth(const Pts& pts, ProcessId s) {
  pts.check(s);
  return depths(pts)[s.index];
}

inline bool is_finite_process(const Pts& pts, ProcessId s) { return depth(pts, s).has_value(); }

/// Maximum depth over all processes. Throws NotFiniteProcess on the first cyclic one.
inline std::size_t max_depth(const Pts& pts) {
  std::size_t best = 0;
  auto ds = depths(pts);
  for (auto s : pts.processes()) {
    if (!ds[s.index]) throw NotFiniteProcess(pts.name(s));
    best = std::max(best, *ds[s.index]);
  }
  return best;
}

}  // namespace probmetric
