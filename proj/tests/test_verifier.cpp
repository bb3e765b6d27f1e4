#include <doctest.h>

#include <algorithm>

#include "chebias/verifier.hpp"

using namespace chebias;

namespace {

std::shared_ptr<const SieveTables> tables() {
  static auto t = SieveTables::build(1100000);
  return t;
}

SummatorySeries series(const char* spec) { return SummatorySeries(tables(), SemigroupSpec::parse(spec)); }

const SubClaim* find_claim(const PipelineReport& r, const std::string& id) {
  const auto it = std::find_if(r.claims.begin(), r.claims.end(), [&](const SubClaim& c) { return c.id == id; });
  return it == r.claims.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("metric names round trip") {
  for (auto m : {Metric::pi, Metric::theta_pp, Metric::psi, Metric::N, Metric::lambda, Metric::mu}) {
    CHECK(parse_metric(metric_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_metric("zeta"), std::invalid_argument);
}

TEST_CASE("race pairs") {
  CHECK(parse_pair("4,3:4,1").name() == "4,3:4,1");
  CHECK(parse_pair("g_3_2:g_3_1").name() == "3,2:3,1");
  CHECK(theorem_pairs().size() == 4);
  CHECK_THROWS_AS(parse_pair("3,1:3,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pair("4,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pair("x:y"), std::invalid_argument);
}

TEST_CASE("lambda race for 4,3 against 4,1") {
  const auto l = series("g_4_3"), r = series("g_4_1");
  const BiasVerdict ok = race(Metric::lambda, l, r, 7, 1100000);
  CHECK(ok.holds);
  CHECK_FALSE(ok.first_violation);
  const BiasVerdict early = race(Metric::lambda, l, r, 1, 6);
  CHECK_FALSE(early.holds);
  CHECK(*early.first_violation == 5);
  CHECK(*early.last_violation == 6);
}

TEST_CASE("prime races") {
  const auto g31 = series("g_3_1"), g32 = series("g_3_2");
  CHECK(race(Metric::pi, g32, g31, 1, 1000000).holds);
  const BiasVerdict rev = race(Metric::pi, g31, g32, 1, 1000);
  CHECK_FALSE(rev.holds);
  CHECK(*rev.first_violation == 2);
  CHECK(rev.left_value == "0");
  CHECK(rev.right_value == "1");
  CHECK(race(Metric::theta_pp, g32, g31, 2, 100000).holds);
  CHECK_THROWS(race(Metric::pi, series("b1"), g31, 1, 100));
  CHECK_THROWS(race(Metric::N, g32, g31, 1, 2000000));
}

TEST_CASE("N races for the four pairs up to 1e6") {
  for (const auto& p : theorem_pairs()) {
    const SummatorySeries l(tables(), SemigroupSpec::residue_class(p.d_left, p.a_left));
    const SummatorySeries r(tables(), SemigroupSpec::residue_class(p.d_right, p.a_right));
    CHECK_MESSAGE(race(Metric::N, l, r, 1, 1000000).holds, p.name());
  }
}

TEST_CASE("race verdicts are invariant under subdivision") {
  const auto l = series("g_4_3"), r = series("g_4_1");
  for (Metric m : {Metric::psi, Metric::pi, Metric::mu}) {
    const BiasVerdict whole = race(m, l, r, 1, 200000);
    const BiasVerdict a = race(m, l, r, 1, 80000);
    const BiasVerdict b = race(m, l, r, 70000, 200000);
    CHECK(whole.holds == (a.holds && b.holds));
    if (!whole.holds) {
      CHECK(*whole.first_violation == (a.holds ? *b.first_violation : *a.first_violation));
      CHECK(*whole.last_violation == (b.holds ? *a.last_violation : *b.last_violation));
    }
    const BiasVerdict serial = race(m, l, r, 1, 200000, kernels::Exec::serial);
    CHECK(serial.holds == whole.holds);
    CHECK(serial.first_violation == whole.first_violation);
    CHECK(serial.last_violation == whole.last_violation);
  }
}

TEST_CASE("transfer from primes to products") {
  const TransferReport t = transfer_check(tables(), 3, 2, 1, 100000);
  CHECK(t.hypothesis_holds);
  REQUIRE(t.conclusions.size() == 2);
  CHECK(t.conclusions[0].holds);
  CHECK(t.conclusions[1].holds);

  const TransferReport f = transfer_check(tables(), 4, 3, 1, 100000);
  CHECK_FALSE(f.hypothesis_holds);
  CHECK(*f.hypothesis.first_violation == 26861);
  CHECK(f.conclusions.empty());
}

TEST_CASE("psi crossing for 3,2 against 3,1") {
  const Corollary2Report below = corollary2_check(tables(), 3, 2, 1, 196698);
  CHECK(below.hypotheses_hold);
  CHECK(below.lambda_conclusion.holds);
  const Corollary2Report at = corollary2_check(tables(), 3, 2, 1, 196699);
  CHECK(at.pi_hypothesis.holds);
  CHECK_FALSE(at.psi_hypothesis.holds);
  CHECK(*at.psi_hypothesis.first_violation == 196699);
  CHECK_FALSE(at.hypotheses_hold);
  CHECK(at.lambda_conclusion.holds);
}

TEST_CASE("end-to-end certificate for the four pairs") {
  for (const auto& p : theorem_pairs()) {
    const PipelineReport r = theorem2_pipeline(tables(), p, 1100000);
    CHECK_MESSAGE(r.ok(), p.name());
    for (const char* id : {"lambda-range", "psi-upper", "psi-lower", "propagation", "N-race", "N-identity",
                           "final-bound"}) {
      const SubClaim* c = find_claim(r, id);
      REQUIRE_MESSAGE(c, id);
      CHECK_MESSAGE(c->status != "failed", id);
      CHECK_MESSAGE(c->status != "not-certified", id);
    }
  }
}

TEST_CASE("certificate at a range too short for the propagation step") {
  const PipelineReport r = theorem2_pipeline(tables(), parse_pair("4,3:3,1"), 100000);
  CHECK_FALSE(r.ok());
  const SubClaim* c = find_claim(r, "propagation");
  REQUIRE(c);
  CHECK(c->status == "not-certified");
  CHECK_THROWS(theorem2_pipeline(tables(), parse_pair("3,2:3,1"), 2000000));
}
