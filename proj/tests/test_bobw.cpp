#include "doctest.h"
#include "mmskit/bobw.hpp"
#include "mmskit/bounds.hpp"
#include "mmskit/verify.hpp"
#include "support/random_instances.hpp"

using namespace mmskit;
using mmskit::testing::Rng;
using mmskit::testing::uniform_int;

namespace {

Rational q(long p, long r = 1) { return make_rational(p, r); }

}  // namespace

TEST_CASE("rotated rankings") {
  CHECK(rotated_ranking(4, 0) == PriorityRanking::identity(4));
  CHECK(rotated_ranking(4, 1).ranks() == std::vector<int>{1, 2, 3, 0});
  CHECK(rotated_ranking(3, 2).ranks() == std::vector<int>{2, 0, 1});
  CHECK_THROWS_AS(rotated_ranking(3, 3), InputError);
  CHECK_THROWS_AS(rotated_ranking(0, 0), InputError);
  // every agent sees every rank once
  for (int n = 1; n <= 7; ++n) {
    for (AgentId a = 0; a < n; ++a) {
      std::vector<int> seen(n, 0);
      for (int k = 0; k < n; ++k) ++seen[rotated_ranking(n, k).rank_of(a)];
      CHECK(seen == std::vector<int>(n, 1));
    }
  }
}

TEST_CASE("single agent gets everything in the only outcome") {
  auto inst = Instance::from_rows({{q(1, 2), q(1, 3), q(1, 6)}});
  auto d = cyclic_rotation_distribution(inst, thresholds_thm46(1));
  REQUIRE(d.support.size() == 1);
  CHECK(d.probability == 1);
  CHECK(d.ex_ante == d.ex_post_min);
  CHECK(d.ex_ante[0] >= 1);
}

TEST_CASE("identical agents") {
  // 3 agents, each good worth 1/2 to everyone: v(M) = 3
  std::vector<Rational> row(6, q(1, 2));
  auto inst = Instance::from_rows({row, row, row});
  auto taus = thresholds_thm46(3);
  auto d = cyclic_rotation_distribution(inst, taus);
  CHECK(d.support.size() == 3);
  for (const auto& o : d.support) {
    o.allocation.validate(inst.goods());
    CHECK(is_T_mms(inst, o.allocation, o.ranking, taus, d.mms_values));
  }
  for (AgentId a = 0; a < 3; ++a) CHECK(d.ex_post_min[a] >= taus.at_rank(2));
  CHECK(d.ex_ante[0] == d.ex_ante[1]);
  CHECK(d.ex_ante[1] == d.ex_ante[2]);
}

TEST_CASE("expectation matches the mean threshold on random instances") {
  Rng rng(301);
  for (int t = 0; t < 60; ++t) {
    const int n = uniform_int(rng, 1, 5);
    auto s = testing::random_normalized(rng, n, uniform_int(rng, n, 3 * n + 3), n);
    auto taus = thresholds_thm46(n);
    auto serial = cyclic_rotation_distribution(s.instance, taus, {.check_normalized = false}, Execution::Serial);
    auto par = cyclic_rotation_distribution(s.instance, taus, {.check_normalized = false}, Execution::Parallel);
    CHECK(serial == par);
    const Rational gamma = mean_threshold(taus);
    CHECK(gamma == gamma_lower_bound(n).exact);
    for (AgentId a = 0; a < n; ++a) {
      CHECK(serial.ex_ante[a] >= gamma);
      CHECK(serial.ex_post_min[a] >= taus.at_rank(n - 1));
    }
    Rational total = 0;
    for (size_t k = 0; k < serial.support.size(); ++k) total += serial.probability;
    CHECK(total == 1);
  }
}

TEST_CASE("pipeline on arbitrary instances") {
  Rng rng(302);
  for (int t = 0; t < 25; ++t) {
    const int n = uniform_int(rng, 1, 4);
    auto inst = testing::random_integer_instance(rng, n, uniform_int(rng, n, 8), 0, 9);
    auto taus = thresholds_thm46(n);
    auto d = cyclic_rotation_pipeline(inst, taus, {}, Execution::Serial);
    CHECK(d == cyclic_rotation_pipeline(inst, taus, {}, Execution::Parallel));
    const Rational gamma = mean_threshold(taus);
    for (const auto& o : d.support) {
      o.allocation.validate(inst.goods());
      CHECK(is_T_mms(inst, o.allocation, o.ranking, taus, d.mms_values));
    }
    for (AgentId a = 0; a < n; ++a) {
      CHECK(d.ex_ante[a] >= gamma * d.mms_values[a]);
      CHECK(d.ex_post_min[a] >= taus.at_rank(n - 1) * d.mms_values[a]);
    }
  }
}

TEST_CASE("seeded draws") {
  CHECK(draw_shift(5, 42) == draw_shift(5, 42));
  CHECK(draw_shift(1, 7) == 0);
  std::vector<int> hits(4, 0);
  for (std::uint64_t s = 0; s < 400; ++s) {
    int k = draw_shift(4, s);
    REQUIRE(k >= 0);
    REQUIRE(k < 4);
    ++hits[k];
  }
  for (int h : hits) CHECK(h > 0);
  CHECK_THROWS_AS(draw_shift(0, 1), InputError);
}
