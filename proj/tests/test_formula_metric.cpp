#include "catch_amalgamated.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace probmetric;
using fixtures::formula;

namespace {

DistFormula dist(const std::string& text) {
  // "<a>(...)" carries the distribution formula we want.
  return parse_formula("<a>" + text).distribution();
}

}  // namespace

TEST_CASE("L^k(phi1, phi2)", "[formula_metric]") {
  const auto phi1 = formula(fixtures::phi1);
  const auto phi2 = formula(fixtures::phi2);
  for (const auto& q : {Rational(1), Rational(1, 2)}) {
    const Discount lambda(q);
    CHECK(state_distance_upto(lambda, 0, phi1, phi2) == 0);
    CHECK(state_distance_upto(lambda, 1, phi1, phi2) == 0);
    for (std::size_t k = 2; k <= 5; ++k) CHECK(state_distance_upto(lambda, k, phi1, phi2) == Rational(3, 4) * q);
    CHECK(state_distance(lambda, phi1, phi2) == Rational(3, 4) * q);
  }
}

TEST_CASE("distribution distances and matchings", "[formula_metric]") {
  const Discount lambda(Rational(1));
  const auto psi1 = dist(fixtures::psi1);
  const auto psi2 = dist(fixtures::psi2);
  const auto psi3 = dist(fixtures::psi3);

  FormulaDistance distance(lambda);
  const auto m12 = distance.matching(1, psi1, psi2);
  CHECK(m12.cost == Rational(3, 4));
  REQUIRE(m12.entries.size() == 2);
  for (const auto& e : m12.entries) {
    CHECK(e.left == formula(fixtures::phi_b));
    CHECK(e.mass == (e.right == formula(fixtures::phi_bc) ? Rational(3, 4) : Rational(1, 4)));
  }

  const auto m13 = distance.matching(3, psi1, psi3);
  CHECK(m13.cost == Rational(1, 2));
  REQUIRE(m13.entries.size() == 2);
  CHECK(m13.entries[0].mass == Rational(1, 2));
  CHECK(m13.entries[1].mass == Rational(1, 2));
  CHECK(dist_distance(lambda, psi1, psi3) == Rational(1, 2));
  CHECK(dist_distance_upto(lambda, 2, psi2, psi2) == 0);
}

TEST_CASE("simple distances", "[formula_metric]") {
  const Discount lambda(Rational(1, 2));
  CHECK(state_distance(lambda, formula("<a>T"), formula("<b>T")) == 1);
  CHECK(state_distance(lambda, formula("<a>T"), formula("~<a>T")) == 1);
  CHECK(state_distance(lambda, formula("<a><b>T"), formula("<a><c>T")) == Rational(1, 2));
  CHECK(state_distance(lambda, formula("~<a><b>T"), formula("~<a><c>T")) == Rational(1, 2));
  CHECK(state_distance_upto(lambda, 1, formula("<a><b>T"), formula("<a><c>T")) == 0);
  // One-member conjunctions are compared as conjunctions, not as their member.
  CHECK(state_distance(lambda, formula("& <a>T"), formula("<a>T")) == 1);
}

TEST_CASE("logical distance on fig1 and fig2", "[formula_metric]") {
  const auto fig1 = fixtures::fig1();
  const auto fig2 = fixtures::fig2();
  for (const auto& q : {Rational(1), Rational(1, 2), Rational(3, 4)}) {
    const Discount lambda(q);
    const auto s = fig2.process("s"), sp = fig2.process("s'");
    CHECK(logical_distance_upto(fig2, lambda, 0, s, sp) == 0);
    CHECK(logical_distance_upto(fig2, lambda, 1, s, sp) == 0);
    for (std::size_t k = 2; k <= 5; ++k) CHECK(logical_distance_upto(fig2, lambda, k, s, sp) == Rational(3, 4) * q);
    CHECK(logical_distance(fig2, lambda, s, sp) == Rational(3, 4) * q);
    CHECK(logical_distance(fig2, lambda, s, s) == 0);
    CHECK(logical_distance(fig1, lambda, fig1.process("s"), fig1.process("t")) == 0);
  }
}

TEST_CASE("distribution distance matches vertex enumeration", "[formula_metric]") {
  oracle::Rng rng(43);
  oracle::FormulaShape shape;
  for (int round = 0; round < 200; ++round) {
    const Discount lambda(Rational(static_cast<long>(oracle::pick(rng, 1, 4)), 4L));
    const auto x = oracle::random_dist_formula(rng, shape, 2, 4);
    const auto y = oracle::random_dist_formula(rng, shape, 2, 4);
    const std::size_t k = oracle::pick(rng, 1, 3);
    FormulaDistance distance(lambda);
    std::vector<Rational> supply, demand, costs;
    for (const auto& t : x.terms()) supply.push_back(t.weight);
    for (const auto& t : y.terms()) demand.push_back(t.weight);
    for (const auto& a : x.terms()) {
      for (const auto& b : y.terms()) costs.push_back(distance.state(k, a.formula, b.formula));
    }
    CHECK(distance.distribution(k, x, y) == oracle::min_transport_cost(supply, demand, costs));
  }
}

TEST_CASE("pseudometric axioms and monotonicity", "[formula_metric]") {
  oracle::Rng rng(47);
  oracle::FormulaShape shape;
  shape.actions = {"a"};
  const Discount lambda(Rational(3, 4));
  for (int round = 0; round < 150; ++round) {
    const auto x = oracle::random_formula(rng, shape, 2, 5);
    const auto y = oracle::random_formula(rng, shape, 2, 5);
    const auto z = oracle::random_formula(rng, shape, 2, 5);
    FormulaDistance d(lambda);
    for (std::size_t k = 0; k <= 4; ++k) {
      CHECK(d.state(k, x, x) == 0);
      CHECK(d.state(k, x, y) == d.state(k, y, x));
      CHECK(d.state(k, x, z) <= d.state(k, x, y) + d.state(k, y, z));
      CHECK(d.state(k, x, y) >= 0);
      CHECK(d.state(k, x, y) <= 1);
      CHECK(d.state(k, x, y) <= d.state(k + 1, x, y));
    }
  }
}

TEST_CASE("distances ignore L-equivalent rewriting of nesting-free formulas", "[formula_metric]") {
  oracle::Rng rng(53);
  oracle::FormulaShape shape;
  shape.flat = true;
  const Discount lambda(Rational(1, 2));
  for (int round = 0; round < 300; ++round) {
    const auto x = oracle::random_formula(rng, shape, 2, 5);
    const auto y = oracle::random_formula(rng, shape, 2, 5);
    FormulaDistance d(lambda);
    const auto nx = normalize(x);
    INFO(format_formula(x) << "  vs  " << format_formula(y));
    for (std::size_t k = 0; k <= 3; ++k) CHECK(d.state(k, x, y) == d.state(k, nx, y));
    CHECK((state_distance(lambda, x, y) == 0) == l_equiv(x, y));
  }
}

TEST_CASE("nested conjunctions break invariance under L-equivalence", "[formula_metric]") {
  // A & (B & C) is L-equivalent to A & B & C, yet the conjunct B of the
  // second formula has no partner at distance below 1 in the first.
  const auto nested = formula("<a>T & (<b>T & <c>T)");
  const auto flat = formula("<a>T & <b>T & <c>T");
  const Discount lambda(Rational(1));
  CHECK(l_equiv(nested, flat));
  CHECK(state_distance_upto(lambda, 0, nested, flat) == 0);
  for (std::size_t k = 1; k <= 3; ++k) CHECK(state_distance_upto(lambda, k, nested, flat) == 1);
  CHECK(state_distance(lambda, nested, flat) == 1);
}

TEST_CASE("main theorem on random systems", "[formula_metric]") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto pts = generate_random_pts(seed);
    INFO("seed " << seed);
    for (const auto& q : {Rational(1), Rational(1, 2)}) {
      const Discount lambda(q);
      for (std::size_t k = 0; k <= max_depth(pts) + 2; ++k) {
        const auto d = upto_k_metric(pts, lambda, k);
        for (auto s : pts.processes()) {
          for (auto t : pts.processes()) CHECK(logical_distance_upto(pts, lambda, k, s, t) == d.at(s, t));
        }
      }
      const auto limit = bisimilarity_metric(pts, lambda);
      for (auto s : pts.processes()) {
        for (auto t : pts.processes()) CHECK(logical_distance(pts, lambda, s, t) == limit.at(s, t));
      }
    }
  }
}
