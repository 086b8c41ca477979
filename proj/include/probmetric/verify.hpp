#pragma once

#include "probmetric/formula_metric.hpp"
#include "probmetric/logic.hpp"
#include "probmetric/metrics.hpp"
#include "probmetric/mimicking.hpp"
#include "probmetric/relations.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace probmetric {

struct CheckResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// First failing instance; empty while the check passes.
  std::string witness;

  bool passed() const { return failures == 0; }
};

class VerificationReport {
 public:
  /// Counts one instance of check `name`; `describe` is called only for the first failure.
  template <class Describe>
  void record(const std::string& name, bool ok, Describe&& describe) {
    auto& c = slot(name);
    ++c.instances;
    if (!ok) {
      if (c.failures == 0) c.witness = describe();
      ++c.failures;
    }
  }

  void merge(const VerificationReport& other) {
    for (const auto& c : other.checks_) {
      auto& mine = slot(c.name);
      mine.instances += c.instances;
      if (mine.failures == 0 && c.failures > 0) mine.witness = c.witness;
      mine.failures += c.failures;
    }
  }

  const std::vector<CheckResult>& checks() const { return checks_; }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks_) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  bool all_passed() const {
    for (const auto& c : checks_) {
      if (!c.passed()) return false;
    }
    return true;
  }

  std::string text() const {
    std::ostringstream out;
    for (const auto& c : checks_) {
      out << (c.passed() ? "PASS " : "FAIL ") << c.name << " (" << c.instances << " instances";
      if (!c.passed()) out << ", " << c.failures << " failed";
      out << ")\n";
      if (!c.passed()) out << "     witness: " << c.witness << '\n';
    }
    return out.str();
  }

 private:
  CheckResult& slot(const std::string& name) {
    for (auto& c : checks_) {
      if (c.name == name) return c;
    }
    checks_.push_back({name, 0, 0, {}});
    return checks_.back();
  }

  std::vector<CheckResult> checks_;
};

struct VerifyOptions {
  std::vector<Rational> discounts{Rational(1), Rational(1, 2), Rational(3, 4)};
  /// Up-to-k checks run for k <= max depth + extra_k.
  std::size_t extra_k = 2;
  /// Bound on k for systems with cycles, where only up-to-k checks apply.
  std::size_t cyclic_k = 3;
  std::string label;
};

namespace check_names {
inline const std::string main_upto = "main theorem: logical_distance_upto = upto_k_metric";
inline const std::string main_limit = "main theorem: logical_distance = bisimilarity_metric";
inline const std::string sat_self = "(a) s |= phi_s^k";
inline const std::string bisim_char = "(b) l_equiv(phi_s^k, phi_t^k) <=> s ~_k t";
inline const std::string ready_char = "(c) t |= phi_s^k <=> s <=r_k t";
inline const std::string sim_char = "(d) t |= theta_s^k <=> s <=_k t";
inline const std::string sim_sound = "(e) t |= phi_s^k => s <=_k t";
inline const std::string bisim_limit = "l_equiv(phi_s, phi_t) <=> s ~ t";
inline const std::string metric_kernel = "bisimilarity_metric(s,t) = 0 <=> s ~ t";
inline const std::string corollary = "l_equiv(phi_s, phi_t) <=> logical_distance(s,t) = 0";
inline const std::string metric_chain = "upto_k_metric monotone in k";
inline const std::string relation_chain = "up-to-k relations decreasing in k";
inline const std::string pseudometric = "upto_k_metric is a pseudometric";
inline const std::string stabilization = "phi_s^k = phi_s for k >= depth(s)+1";
inline const std::string depth_relation = "depth(phi_s) = depth(s)+1 = depth(theta_s)+1";
inline const std::string ready_implies_sim = "ready simulation included in simulation";
}  // namespace check_names

/// Cross-checks every theorem-level property on one system.
inline VerificationReport verify_system(const Pts& pts, const VerifyOptions& options = {}) {
  namespace names = check_names;
  VerificationReport report;
  const auto all_depths = depths(pts);
  bool finite = true;
  std::size_t deepest = 0;
  for (const auto& d : all_depths) {
    if (!d) finite = false;
    else deepest = std::max(deepest, *d);
  }
  const std::size_t k_max = finite ? deepest + options.extra_k : options.cyclic_k;
  const std::string& label = options.label;

  auto at = [&](ProcessId s, ProcessId t, std::size_t k) {
    std::ostringstream out;
    if (!label.empty()) out << label << ' ';
    out << "s=" << pts.name(s) << " t=" << pts.name(t) << " k=" << k;
    return out.str();
  };

  FormulaBuilder builder(pts);
  Satisfaction sat(pts);
  Normalizer normalizer;

  std::vector<Relation> bisim, sim, ready;
  for (std::size_t k = 0; k <= k_max; ++k) {
    bisim.push_back(upto_bisimulation(pts, k));
    sim.push_back(upto_simulation(pts, k));
    ready.push_back(upto_ready_simulation(pts, k));
  }

  for (std::size_t k = 0; k <= k_max; ++k) {
    std::vector<StateFormula> phi, theta, canonical;
    for (auto s : pts.processes()) {
      phi.push_back(builder.mimicking(s, k));
      theta.push_back(builder.sim_characteristic(s, k));
      canonical.push_back(normalizer.state(phi.back()));
    }
    for (auto s : pts.processes()) {
      report.record(names::sat_self, sat.state(s, phi[s.index]), [&] { return at(s, s, k); });
      for (auto t : pts.processes()) {
        const bool t_sat_phi = sat.state(t, phi[s.index]);
        const bool t_sat_theta = sat.state(t, theta[s.index]);
        const bool equiv = canonical[s.index] == canonical[t.index];
        report.record(names::bisim_char, equiv == bisim[k].contains(s, t), [&] {
          return at(s, t, k) + " l_equiv=" + (equiv ? "true" : "false");
        });
        report.record(names::ready_char, t_sat_phi == ready[k].contains(s, t), [&] {
          return at(s, t, k) + " t|=phi_s=" + (t_sat_phi ? "true" : "false");
        });
        report.record(names::sim_char, t_sat_theta == sim[k].contains(s, t), [&] {
          return at(s, t, k) + " t|=theta_s=" + (t_sat_theta ? "true" : "false");
        });
        report.record(names::sim_sound, !t_sat_phi || sim[k].contains(s, t), [&] { return at(s, t, k); });
      }
    }
    if (k > 0) {
      report.record(names::relation_chain,
                    bisim[k].subset_of(bisim[k - 1]) && sim[k].subset_of(sim[k - 1]) &&
                        ready[k].subset_of(ready[k - 1]),
                    [&] { return label + " k=" + std::to_string(k); });
    }
    report.record(names::ready_implies_sim, ready[k].subset_of(sim[k]),
                  [&] { return label + " k=" + std::to_string(k); });
  }

  for (const auto& q : options.discounts) {
    const Discount lambda(q);
    const std::string lam = " lambda=" + to_string(q);
    FormulaDistance distance(lambda);
    auto d = PseudometricTable::zero(pts.num_processes());
    for (std::size_t k = 0; k <= k_max; ++k) {
      if (k > 0) {
        auto next = metric_step(pts, lambda, d);
        report.record(names::metric_chain, d.below(next), [&] { return label + lam + " k=" + std::to_string(k); });
        d = std::move(next);
      }
      auto violation = d.pseudometric_violation();
      report.record(names::pseudometric, !violation, [&] { return label + lam + " k=" + std::to_string(k) + ": " + *violation; });
      for (auto s : pts.processes()) {
        for (auto t : pts.processes()) {
          if (t < s) continue;
          const Rational ell = distance.state(k, builder.mimicking(s, k), builder.mimicking(t, k));
          report.record(names::main_upto, ell == d.at(s, t), [&] {
            return at(s, t, k) + lam + " logical=" + to_string(ell) + " metric=" + to_string(d.at(s, t));
          });
        }
      }
    }

    if (!finite) continue;
    const auto limit = bisimilarity_metric(pts, lambda);
    const Relation bisimilar = greatest_relation(pts, RelationKind::bisimulation);
    for (auto s : pts.processes()) {
      for (auto t : pts.processes()) {
        if (t < s) continue;
        const StateFormula phi_s = builder.mimicking(s, *all_depths[s.index] + 1);
        const StateFormula phi_t = builder.mimicking(t, *all_depths[t.index] + 1);
        const Rational ell = detail::stabilized_state_distance(distance, phi_s, phi_t);
        report.record(names::main_limit, ell == limit.at(s, t), [&] {
          return at(s, t, 0) + lam + " logical=" + to_string(ell) + " metric=" + to_string(limit.at(s, t));
        });
        report.record(names::metric_kernel, (limit.at(s, t) == 0) == bisimilar.contains(s, t),
                      [&] { return at(s, t, 0) + lam; });
        const bool equiv = normalizer.state(phi_s) == normalizer.state(phi_t);
        report.record(names::corollary, equiv == (ell == 0), [&] { return at(s, t, 0) + lam; });
      }
    }
  }

  if (finite) {
    const Relation bisimilar = greatest_relation(pts, RelationKind::bisimulation);
    for (auto s : pts.processes()) {
      const std::size_t ds = *all_depths[s.index];
      const StateFormula phi_s = builder.mimicking(s, ds + 1);
      const StateFormula theta_s = builder.sim_characteristic(s, ds);
      for (std::size_t k = ds + 1; k <= ds + 1 + options.extra_k; ++k) {
        report.record(names::stabilization, builder.mimicking(s, k) == phi_s,
                      [&] { return at(s, s, k); });
      }
      report.record(names::depth_relation,
                    phi_s.modal_depth() == ds + 1 && theta_s.modal_depth() == ds,
                    [&] { return at(s, s, ds + 1); });
      for (auto t : pts.processes()) {
        const StateFormula phi_t = builder.mimicking(t, *all_depths[t.index] + 1);
        const bool equiv = normalizer.state(phi_s) == normalizer.state(phi_t);
        report.record(names::bisim_limit, equiv == bisimilar.contains(s, t), [&] { return at(s, t, 0); });
      }
    }
  }
  return report;
}

}  // namespace probmetric
