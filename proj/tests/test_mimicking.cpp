#include "catch_amalgamated.hpp"
#include "support/fixtures.hpp"

using namespace probmetric;
using fixtures::formula;

TEST_CASE("mimicking formula of fig1's s", "[mimicking]") {
  const auto pts = fixtures::fig1();
  const auto s = pts.process("s");
  const auto expected = formula("<a>(" + fixtures::phi_b + ") & ~<b>T & ~<c>T");
  CHECK(mimicking(pts, s) == expected);
  CHECK(format_formula(mimicking(pts, s)) ==
        "<a>(<b>(~<a>T & ~<b>T & ~<c>T) & ~<a>T & ~<c>T) & ~<b>T & ~<c>T");
  CHECK(satisfies(pts, s, mimicking(pts, s)));
}

TEST_CASE("mimicking formula of fig1's t", "[mimicking]") {
  const auto pts = fixtures::fig1();
  // t1 is drawn with two b-edges; both give the same conjunct.
  const std::string t1 = fixtures::b_then_nil + " & " + fixtures::b_then_nil + " & ~<a>T & ~<c>T";
  const auto drawn = formula("<a>(3/4 (" + t1 + ") (+) 1/4 (" + fixtures::phi_b + ")) & <a>(" + fixtures::phi_b +
                             ") & ~<b>T & ~<c>T");
  const auto phi_t = mimicking(pts, pts.process("t"));
  CHECK(l_equiv(phi_t, drawn));
  CHECK(phi_t.conjuncts().size() == 4);
  CHECK(l_equiv(phi_t, mimicking(pts, pts.process("s"))));
}

TEST_CASE("mimicking formula of fig2's s'", "[mimicking]") {
  const auto pts = fixtures::fig2();
  const auto expected = formula("<a>" + fixtures::psi2 + " & <a>" + fixtures::psi3 + " & ~<b>T & ~<c>T");
  CHECK(mimicking(pts, pts.process("s'")) == expected);
}

TEST_CASE("base cases", "[mimicking]") {
  const auto pts = fixtures::fig1();
  for (auto s : pts.processes()) {
    CHECK(mimicking_upto(pts, s, 0) == StateFormula::top());
    CHECK(sim_characteristic_upto(pts, s, 0) == StateFormula::top());
  }
  const auto nil = pts.process("nil");
  CHECK(mimicking(pts, nil) == formula(fixtures::nil_f));
  for (std::size_t k = 0; k <= 4; ++k) CHECK(sim_characteristic_upto(pts, nil, k) == StateFormula::top());
  CHECK(sim_characteristic(pts, nil) == StateFormula::top());
}

TEST_CASE("simulation characteristic formula of fig1's s", "[mimicking]") {
  const auto pts = fixtures::fig1();
  const auto s = pts.process("s");
  const auto theta = sim_characteristic(pts, s);
  // theta_s conjoins over the transitions of s, of which there is one.
  CHECK(theta == formula("& <a>(& <b>T)"));
  CHECK(modal_depth(mimicking(pts, s)) == 3);
  CHECK(modal_depth(theta) == 2);
  for (auto p : pts.processes()) CHECK(satisfies(pts, p, theta) == satisfies(pts, p, formula("<a><b>T")));
  CHECK(satisfies(pts, pts.process("t"), theta));
}

TEST_CASE("infinite processes are rejected", "[mimicking]") {
  const auto pts = parse_pts("alphabet a\nx -a-> { x: 1 }\n");
  CHECK_THROWS_AS(mimicking(pts, pts.process("x")), NotFiniteProcess);
  CHECK_THROWS_AS(sim_characteristic(pts, pts.process("x")), NotFiniteProcess);
  CHECK(satisfies(pts, pts.process("x"), mimicking_upto(pts, pts.process("x"), 4)));
}

TEST_CASE("characterization theorems on random systems", "[mimicking]") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto pts = generate_random_pts(seed);
    INFO("seed " << seed);
    FormulaBuilder builder(pts);
    const std::size_t top = max_depth(pts) + 2;
    for (std::size_t k = 0; k <= top; ++k) {
      const auto bisim = upto_bisimulation(pts, k);
      const auto sim = upto_simulation(pts, k);
      const auto ready = upto_ready_simulation(pts, k);
      for (auto s : pts.processes()) {
        const auto phi_s = builder.mimicking(s, k);
        const auto theta_s = builder.sim_characteristic(s, k);
        CHECK(satisfies(pts, s, phi_s));
        for (auto t : pts.processes()) {
          const bool t_phi = satisfies(pts, t, phi_s);
          CHECK(t_phi == ready.contains(s, t));
          CHECK(satisfies(pts, t, theta_s) == sim.contains(s, t));
          if (t_phi) CHECK(sim.contains(s, t));
          CHECK(l_equiv(phi_s, builder.mimicking(t, k)) == bisim.contains(s, t));
        }
      }
    }
    const auto bisim = greatest_relation(pts, RelationKind::bisimulation);
    for (auto s : pts.processes()) {
      const auto d = *depth(pts, s);
      CHECK(mimicking(pts, s) == mimicking_upto(pts, s, d + 3));
      CHECK(sim_characteristic(pts, s) == sim_characteristic_upto(pts, s, d + 2));
      CHECK(modal_depth(mimicking(pts, s)) == modal_depth(sim_characteristic(pts, s)) + 1);
      for (auto t : pts.processes()) CHECK(l_equiv(mimicking(pts, s), mimicking(pts, t)) == bisim.contains(s, t));
    }
  }
}

TEST_CASE("mutually similar processes have different mimicking formulae", "[mimicking]") {
  const auto pts = parse_pts(
      "alphabet a b\n"
      "u -a-> { ub: 1 }\nu -a-> { nil: 1 }\nub -b-> { nil: 1 }\n"
      "v -a-> { vb: 1 }\nvb -b-> { nil: 1 }\n");
  const auto u = pts.process("u"), v = pts.process("v");
  CHECK(upto_mutual_simulation(pts, 3).contains(u, v));
  CHECK_FALSE(l_equiv(mimicking(pts, u), mimicking(pts, v)));
  CHECK_FALSE(upto_bisimulation(pts, 3).contains(u, v));
}
