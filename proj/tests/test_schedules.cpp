#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "kmlab/errors.hpp"
#include "kmlab/schedule.hpp"
#include "kmlab/summability.hpp"

using namespace kmlab;
using nlohmann::json;

namespace {
const auto half_alpha = [](int) { return 0.5; };
}

TEST_SUITE("schedules") {

TEST_CASE("formula families evaluate correctly") {
  const ScalarFormula geo = parse_formula(json{{"kind", "geometric"}, {"base", 1.0}, {"ratio", 0.5}}, "t");
  CHECK(geo(0) == 1.0);
  CHECK(geo(3) == doctest::Approx(0.125));

  const ScalarFormula harm = parse_formula(json{{"kind", "harmonic"}, {"scale", 2.0}, {"power", 2.0}}, "t");
  CHECK(harm(0) == 2.0);
  CHECK(harm(1) == doctest::Approx(0.5));

  const ScalarFormula ramp = parse_formula(
      json{{"kind", "affine"}, {"intercept", 1.0}, {"slope", 0.01}, {"cap", 10.0}}, "t");
  CHECK(ramp(0) == 1.0);
  CHECK(ramp(100) == doctest::Approx(2.0));
  CHECK(ramp(5000) == 10.0);

  const ScalarFormula pw = parse_formula(
      json{{"kind", "piecewise"},
           {"pieces", {{{"from", 0}, {"formula", 1.5}}, {{"from", 10}, {"formula", 0.5}}}}},
      "t");
  CHECK(pw(0) == 1.5);
  CHECK(pw(9) == 1.5);
  CHECK(pw(10) == 0.5);
  CHECK(pw(99) == 0.5);

  CHECK_THROWS_AS(parse_formula(json{{"kind", "mystery"}}, "t"), config_error);
}

TEST_CASE("geometric error magnitude gives a valid schedule") {
  const Schedule s = make_schedule(
      json{{"lambda", 1.0}, {"c", 1.0},
           {"eta", json{{"kind", "geometric"}, {"base", 1.0}, {"ratio", 0.5}}},
           {"declared", {"sum-eta-e-finite"}}},
      1, 42);
  CHECK(s.lambda_at(7) == 1.0);
  CHECK(s.c_at(7) == 1.0);
  CHECK(s.eta_at(3) == doctest::Approx(0.125));
  CHECK(s.declared.count("sum-eta-e-finite") == 1);
}

TEST_CASE("nonpositive c formula is a config error") {
  CHECK_THROWS_AS(make_schedule(json{{"lambda", 1.0}, {"c", 0.0}}, 1, 0), config_error);
  CHECK_THROWS_AS(
      make_schedule(json{{"lambda", 1.0},
                         {"c", json{{"kind", "affine"}, {"intercept", 1.0}, {"slope", -0.1}}}},
                    1, 0),
      config_error);
}

TEST_CASE("error directions are reproducible unit vectors") {
  const Schedule s = make_schedule(
      json{{"lambda", 1.0}, {"c", 1.0}, {"eta", 0.5},
           {"error", json{{"direction", "random"}}}},
      4, 1234);
  const Point e5 = s.error_at(5);
  CHECK(e5.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // Same seed, any access order -> identical sequence.
  const Point e5_again = s.error_at(5);
  CHECK((e5 - e5_again).norm() == 0.0);
  const Schedule s2 = make_schedule(s.spec, 4, 1234);
  CHECK((s2.error_at(5) - e5).norm() == 0.0);
  const Schedule s3 = make_schedule(s.spec, 4, 999);
  CHECK((s3.error_at(5) - e5).norm() != 0.0);
}

TEST_CASE("fixed error directions are normalized") {
  const Schedule s = make_schedule(
      json{{"lambda", 1.0}, {"c", 1.0}, {"eta", 1.0},
           {"error", json{{"direction", "fixed"}, {"vector", {3.0, 4.0}}}}},
      2, 0);
  CHECK(s.error_at(0).norm() == doctest::Approx(1.0));
  CHECK(s.error_at(0)[0] == doctest::Approx(0.6));
}

TEST_CASE("unknown declared flag is rejected") {
  CHECK_THROWS_AS(
      make_schedule(json{{"lambda", 1.0}, {"c", 1.0}, {"declared", {"sum-of-everything"}}}, 1, 0),
      config_error);
}

TEST_CASE("probe: constant lambda gives a divergent weighted series") {
  // lambda = 1, alpha = 1/2: sum lambda(2 - lambda) over 0..100 = 101.
  const Schedule s = make_schedule(json{{"lambda", 1.0}, {"c", 1.0}}, 1, 0);
  const SummabilityReport r = summability_probe(s, half_alpha, 100);
  CHECK(r.partial_sums.at("lambda_two_minus") == doctest::Approx(101.0));
  CHECK(r.trends.at("lambda_two_minus") == "divergent-trend");
  CHECK(r.verdicts.at("gppa-a2").status == HypothesisStatus::satisfied_so_far);
}

TEST_CASE("probe: geometric error series is summable so far") {
  const Schedule s = make_schedule(
      json{{"lambda", 1.0}, {"c", 1.0},
           {"eta", json{{"kind", "geometric"}, {"base", 1.0}, {"ratio", 0.5}}}},
      1, 0);
  const SummabilityReport r = summability_probe(s, half_alpha, 50);
  CHECK(r.partial_sums.at("eta_e") < 2.0);
  CHECK(r.trends.at("eta_e") == "convergent-trend");
  CHECK(r.verdicts.at("sum-eta-e-finite").status == HypothesisStatus::satisfied_so_far);
}

TEST_CASE("probe: c = 1/(k+1) has convergent c^2 series (A1 evidence)") {
  const Schedule s = make_schedule(
      json{{"lambda", 1.0}, {"c", json{{"kind", "harmonic"}, {"scale", 1.0}}}}, 1, 0);
  const SummabilityReport r = summability_probe(s, half_alpha, 1000);
  CHECK(r.partial_sums.at("c_squared") == doctest::Approx(1.6439).epsilon(1e-3));
  CHECK(r.trends.at("c_squared") == "convergent-trend");
  CHECK(r.verdicts.at("ppa-a1").status == HypothesisStatus::inconclusive);
  CHECK_FALSE(r.c_nondecreasing);
}

TEST_CASE("probe: harmonic error magnitude violates a declared summability flag") {
  const Schedule s = make_schedule(
      json{{"lambda", 1.0}, {"c", 1.0},
           {"eta", json{{"kind", "harmonic"}, {"scale", 1.0}}},
           {"declared", {"sum-eta-e-finite"}}},
      1, 0);
  const SummabilityReport r = summability_probe(s, half_alpha, 1000);
  CHECK(r.verdicts.at("declared:sum-eta-e-finite").status == HypothesisStatus::violated);
  // Partial sums track log growth: sum_{k<=1000} 1/(k+1) ~ log(1001) + gamma.
  CHECK(r.partial_sums.at("eta_e") ==
        doctest::Approx(std::log(1002.0) + 0.5772).epsilon(1e-2));
}

TEST_CASE("probe: lambda out of the admissible interval is a hard violation") {
  const Schedule s = make_schedule(json{{"lambda", 2.5}, {"c", 1.0}}, 1, 0);
  const SummabilityReport r = summability_probe(s, half_alpha, 10);
  CHECK_FALSE(r.lambda_in_interval);
  CHECK(r.verdicts.at("lambda-in-interval").status == HypothesisStatus::violated);
  CHECK(r.verdicts.at("lambda-in-interval").k == 0);
}

TEST_CASE("probe determinism and monotone partial sums") {
  const json spec{{"lambda", 1.0}, {"c", 1.0},
                  {"eta", json{{"kind", "harmonic"}, {"scale", 1.0}}},
                  {"error", json{{"direction", "random"}}}};
  const Schedule s1 = make_schedule(spec, 3, 77);
  const Schedule s2 = make_schedule(spec, 3, 77);
  const SummabilityReport r1 = summability_probe(s1, half_alpha, 200);
  const SummabilityReport r2 = summability_probe(s2, half_alpha, 200);
  CHECK(r1.partial_sums.at("eta_e") == r2.partial_sums.at("eta_e"));

  const auto& curve = r1.partial_sum_curves.at("eta_e");
  for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k] >= curve[k - 1]);
}

TEST_CASE("probe: exact schedules report a zero error sum") {
  const Schedule s = make_schedule(json{{"lambda", 1.0}, {"c", 1.0}}, 1, 0);
  const SummabilityReport r = summability_probe(s, half_alpha, 100);
  CHECK(r.partial_sums.at("eta_e") == 0.0);
  CHECK(r.trends.at("eta_e") == "zero");
}

TEST_CASE("probe: nondecreasing capped c ramp satisfies A2 requirements") {
  const Schedule s = make_schedule(
      json{{"lambda", 1.5},
           {"c", json{{"kind", "affine"}, {"intercept", 1.0}, {"slope", 0.01}, {"cap", 10.0}}}},
      1, 0);
  const SummabilityReport r = summability_probe(s, half_alpha, 2000);
  CHECK(r.c_nondecreasing);
  CHECK(r.verdicts.at("gppa-a2").status == HypothesisStatus::satisfied_so_far);
  CHECK(r.partial_sums.at("max_c") == doctest::Approx(10.0));
}

}  // TEST_SUITE
