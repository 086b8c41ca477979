#include "catch_amalgamated.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <fstream>
#include <sstream>

using namespace probmetric;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("data files match the fixtures", "[io]") {
  CHECK(parse_pts(slurp(PROBMETRIC_DATA_DIR "/fig1.pts")) == fixtures::fig1());
  CHECK(parse_pts(slurp(PROBMETRIC_DATA_DIR "/fig2.pts")) == fixtures::fig2());
}

TEST_CASE("system parsing", "[io]") {
  const auto one = parse_pts("alphabet a\nprocess s\n");
  CHECK(one.num_processes() == 1);
  CHECK(max_depth(one) == 0);

  const auto pts = parse_pts("# comment\nalphabet a b   # trailing\n\nx -a-> { y: 1/3, z: 2/3 }\nalphabet c\ny -c-> {x:1}\n");
  CHECK(pts.num_actions() == 3);
  CHECK(pts.num_processes() == 3);
  CHECK(pts.transitions(pts.process("x"))[0].target.mass(pts.process("z")) == Rational(2, 3));
}

TEST_CASE("system parsing errors", "[io]") {
  CHECK_THROWS_AS(parse_pts("alphabet a\nx -a-> { y: 3/4, z: 1/3 }\n"), SemanticError);
  CHECK_THROWS_AS(parse_pts("alphabet a\nx -b-> { y: 1 }\n"), SemanticError);
  CHECK_THROWS_AS(parse_pts("alphabet a\nx -a-> { y: 1/2, y: 1/2 }\n"), SemanticError);
  CHECK_THROWS_AS(parse_pts("alphabet a\nx -a-> { y: 0, z: 1 }\n"), SemanticError);
  try {
    parse_pts("alphabet a\n\nx -a-> { y 1 }\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
  }
  CHECK_THROWS_AS(parse_pts("alphabet a\nx -a-> { y: 1 } extra\n"), ParseError);
  CHECK_THROWS_AS(parse_pts("alphabet a\nx -a-> { y: 1/0 }\n"), ParseError);
  CHECK_THROWS_AS(parse_pts("alphabet\n"), ParseError);
}

TEST_CASE("formula parsing", "[io]") {
  using fixtures::formula;
  const auto ab = formula("<a><b>T");
  CHECK(ab == StateFormula::diamond("a", DistFormula::dirac(StateFormula::diamond("b", DistFormula::dirac(StateFormula::top())))));
  CHECK(formula("T") == StateFormula::top());
  const auto ex = formula("<a>(3/4 (<b>T & <b>T) (+) 1/4 <b>T)");
  const auto bt = StateFormula::diamond("b", StateFormula::top());
  CHECK(ex == StateFormula::diamond("a", DistFormula({{Rational(3, 4), StateFormula::conjunction({bt, bt})},
                                                     {Rational(1, 4), bt}})));
  CHECK(formula("~<a>T & <b>T").kind() == StateFormula::Kind::conjunction);
  CHECK(formula("~(<a>T & <b>T)").kind() == StateFormula::Kind::negation);
  CHECK(formula("& T").conjuncts().size() == 1);
  CHECK(formula("<a>(T)") == formula("<a>T"));
  CHECK(formula("<a>(1 T)") == formula("<a>T"));

  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("<a>"), ParseError);
  CHECK_THROWS_AS(parse_formula("T &"), ParseError);
  CHECK_THROWS_AS(parse_formula("<a>(1/2 T (+) 1/4 T)"), ParseError);
  CHECK_THROWS_AS(parse_formula("T T"), ParseError);
  CHECK_THROWS_AS(parse_formula("Tx"), ParseError);
}

TEST_CASE("round trips", "[io]") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto pts = generate_random_pts(seed);
    CHECK(parse_pts(format_pts(pts)) == pts);
  }
  CHECK(parse_pts(format_pts(fixtures::fig2())) == fixtures::fig2());

  oracle::Rng rng(59);
  oracle::FormulaShape shape;
  for (int round = 0; round < 500; ++round) {
    const auto phi = oracle::random_formula(rng, shape, 3, 6);
    INFO(format_formula(phi));
    CHECK(parse_formula(format_formula(phi)) == phi);
  }
}

TEST_CASE("dot export", "[io]") {
  const auto dot = to_dot(fixtures::fig2());
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("[label=\"a\"]") != std::string::npos);
  CHECK(dot.find("style=dashed, label=\"3/4\"") != std::string::npos);
}

TEST_CASE("random systems", "[io]") {
  CHECK(generate_random_pts(7) == generate_random_pts(7));
  RandomPtsParams flat;
  flat.max_depth = 0;
  CHECK(generate_random_pts(3, flat).num_transitions() == 0);

  const RandomPtsParams params;
  std::size_t nontrivial = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto pts = generate_random_pts(seed, params);
    INFO("seed " << seed);
    CHECK(pts.num_processes() <= params.max_states);
    CHECK(max_depth(pts) <= params.max_depth);
    for (auto s : pts.processes()) {
      CHECK(pts.transitions(s).size() <= params.max_fanout);
      for (const auto& t : pts.transitions(s)) {
        CHECK(t.target.support_size() <= params.max_support);
        Rational total = 0;
        for (const auto& e : t.target.entries()) {
          CHECK(denominator_of(e.weight) <= params.denominator_bound);
          total += e.weight;
        }
        CHECK(total == 1);
      }
    }
    nontrivial += max_depth(pts) >= 2;
  }
  CHECK(nontrivial > 300);
}
