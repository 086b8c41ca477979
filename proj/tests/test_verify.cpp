#include "catch_amalgamated.hpp"
#include "support/fixtures.hpp"

using namespace probmetric;

TEST_CASE("fig1 and fig2 pass every check", "[verify]") {
  for (const auto& pts : {fixtures::fig1(), fixtures::fig2()}) {
    const auto report = verify_system(pts);
    INFO(report.text());
    CHECK(report.all_passed());
    const auto* main = report.find(check_names::main_upto);
    REQUIRE(main != nullptr);
    CHECK(main->instances > 0);
  }
}

TEST_CASE("cyclic systems get up-to-k checks only", "[verify]") {
  const auto pts = parse_pts("alphabet a b\nx -a-> { x: 1/2, y: 1/2 }\ny -b-> { x: 1 }\nz -a-> { y: 1 }\n");
  const auto report = verify_system(pts);
  INFO(report.text());
  CHECK(report.all_passed());
  CHECK(report.find(check_names::main_upto) != nullptr);
  CHECK(report.find(check_names::main_limit) == nullptr);
}

TEST_CASE("random systems pass every check", "[verify]") {
  VerificationReport total;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    VerifyOptions options;
    options.label = "seed=" + std::to_string(seed);
    total.merge(verify_system(generate_random_pts(seed), options));
  }
  INFO(total.text());
  CHECK(total.all_passed());
}

TEST_CASE("report bookkeeping", "[verify]") {
  VerificationReport a, b;
  a.record("x", true, [] { return std::string("unused"); });
  b.record("x", false, [] { return std::string("first"); });
  b.record("x", false, [] { return std::string("second"); });
  a.merge(b);
  const auto* x = a.find("x");
  REQUIRE(x != nullptr);
  CHECK(x->instances == 3);
  CHECK(x->failures == 2);
  CHECK(x->witness == "first");
  CHECK_FALSE(a.all_passed());
  CHECK(a.text().find("FAIL x") != std::string::npos);
}
