#include <algorithm>

#include "doctest.h"
#include "mmskit/ordinal.hpp"
#include "support/random_instances.hpp"

using namespace mmskit;
using mmskit::testing::Rng;
using mmskit::testing::uniform_int;

namespace {

// Identical agents, u(j) = 2/3 - ceil(j/2)/(3n) for j <= 2n, 1/3 after, m = 2n+1+3(d-n).
Instance tight_by_hand(int n, int d) {
  const int m = 2 * n + 1 + 3 * (d - n);
  std::vector<Rational> row;
  for (int j = 1; j <= m; ++j)
    row.push_back(j <= 2 * n ? make_rational(2, 3) - make_rational((j + 1) / 2, 3 * n) : make_rational(1, 3));
  return Instance::from_rows(std::vector<std::vector<Rational>>(n, row));
}

}  // namespace

TEST_CASE("tight family n=5 leaves a bag at 14/15") {
  Instance inst = tight_by_hand(5, 6);
  REQUIRE(inst.goods() == 14);
  auto [alloc, run] = run_ordinal(inst, {.d = 6, .strict = false});
  CHECK(run.terminated_early);
  bool seen = false;
  for (AgentId i = 0; i < 5; ++i) seen = seen || inst.bundle_value(i, alloc.bundles[i]) == make_rational(14, 15);
  CHECK(seen);
  // The first m - 2n = 4 bags take one 1/3 good each.
  CHECK(run.fill_order == std::vector<FillEvent>{{0, 10}, {1, 11}, {2, 12}, {3, 13}});
  CHECK_THROWS_AS(run_ordinal(inst, {.d = 6, .strict = true}), InternalError);
}

TEST_CASE("bags already worth 1 need no filling") {
  // 3 agents, d = 4, goods 1/2 each: v(M) = 4 needs 8 goods.
  Instance inst = Instance::from_rows(std::vector<std::vector<Rational>>(3, std::vector<Rational>(8, make_rational(1, 2))));
  auto [alloc, run] = run_ordinal(inst);
  CHECK(run.fill_order.empty());
  CHECK_FALSE(run.terminated_early);
  CHECK(run.initial_bags == std::vector<GoodSet>{{0, 5}, {1, 4}, {2, 3}});
  CHECK(run.owner == std::vector<AgentId>{0, 1, 2});
  CHECK(run.leftover == GoodSet{6, 7});
  CHECK(alloc.bundles[2] == GoodSet{2, 3, 6, 7});
}

TEST_CASE("input validation") {
  Instance unordered = Instance::from_integer_rows({{1, 2, 1, 0, 0, 0}, {2, 1, 1, 0, 0, 0}, {2, 1, 1, 0, 0, 0}});
  CHECK_THROWS_AS(run_ordinal(unordered), InputError);
  Instance short_goods = Instance::from_integer_rows({{2, 2}, {2, 2}, {2, 2}});
  CHECK_THROWS_AS(run_ordinal(short_goods), InputError);
  // ordered, total 4, but no 4 parts worth 1
  Instance lumpy = Instance::from_integer_rows({{2, 1, 1, 0, 0, 0}, {1, 1, 1, 1, 0, 0}, {1, 1, 1, 1, 0, 0}});
  CHECK_THROWS_AS(run_ordinal(lumpy), InputError);
}

TEST_CASE("pipeline small cases") {
  SUBCASE("one agent gets everything") {
    auto r = run_1_out_of_d(Instance::from_integer_rows({{3, 1, 4, 1, 5}}));
    CHECK(r.allocation.bundles[0] == iota_set(5));
    CHECK(r.allocation.unallocated.empty());
  }
  SUBCASE("two agents, two unit goods") {
    auto r = run_1_out_of_d(Instance::from_integer_rows({{1, 1}, {1, 1}}));
    CHECK(r.mms_values == std::vector<Rational>{0, 0});
    CHECK(r.allocation.bundles[0].size() == 1);
    CHECK(r.allocation.bundles[1].size() == 1);
  }
}

TEST_CASE("pipeline meets MMS^{4ceil(n/3)} on random instances") {
  Rng rng(7);
  for (int t = 0; t < 120; ++t) {
    const int n = uniform_int(rng, 1, 6);
    const int m = uniform_int(rng, n, 10);
    auto inst = testing::random_integer_instance(rng, n, m, 0, 10);
    auto r = run_1_out_of_d(inst, {}, Execution::Serial);
    r.allocation.validate(m);
    CHECK(r.allocation.missing(m).empty());
    CHECK(r.allocation.unallocated.empty());
    CHECK_FALSE(r.run.terminated_early);
    const int d = default_bundle_count(n);
    for (AgentId i = 0; i < n; ++i) {
      CHECK(r.mms_values[i] == mms(inst, i, d).value);
      CHECK(inst.bundle_value(i, r.allocation.bundles[i]) >= r.mms_values[i]);
    }
  }
}

TEST_CASE("run properties on ordered normalized inputs") {
  Rng rng(8);
  for (int t = 0; t < 150; ++t) {
    const int n = 3 * uniform_int(rng, 1, 2);
    const int d = default_bundle_count(n);
    auto s = testing::random_normalized(rng, n, uniform_int(rng, std::max(d, 2 * n), 2 * n + 6), d);
    const Instance& v = s.instance;
    auto [alloc, run] = run_ordinal(v, {.check_normalized = false});
    CHECK_FALSE(run.terminated_early);
    CHECK(run == run_ordinal(v, {.check_normalized = false}).second);
    for (std::size_t e = 1; e < run.fill_order.size(); ++e) CHECK(run.fill_order[e].good == run.fill_order[e - 1].good + 1);
    for (int k = 0; k < n; ++k) {
      const AgentId owner = run.owner[k];
      CHECK(v.bundle_value(owner, alloc.bundles[owner]) >= 1);
      // the bag value before leftovers is already enough
      GoodSet filled = set_difference(run.final_bags[k], run.leftover);
      CHECK(v.bundle_value(owner, filled) >= 1);
    }
    // a bag some still-unassigned agent likes as initialized receives no fill goods
    for (int k = 0; k < n; ++k) {
      bool liked = false;
      for (AgentId i = 0; i < n; ++i) {
        const bool earlier = std::find(run.owner.begin(), run.owner.begin() + k, i) != run.owner.begin() + k;
        liked = liked || (!earlier && v.bundle_value(i, run.initial_bags[k]) >= 1);
      }
      if (!liked) continue;
      for (const auto& e : run.fill_order) CHECK(e.bag != k);
    }
  }
}

TEST_CASE("pipeline with an explicit bundle count") {
  Instance inst = tight_by_hand(5, 6);
  OneOutOfDOptions opts;
  opts.d = 6;
  opts.strict = false;
  opts.exec = Execution::Serial;
  auto r = run_1_out_of_d(inst, opts);
  CHECK(r.d == 6);
  CHECK(r.mms_values == std::vector<Rational>(5, 1));
  Rational worst = 1;
  for (AgentId i = 0; i < 5; ++i) worst = std::min<Rational>(worst, inst.bundle_value(i, r.allocation.bundles[i]));
  CHECK(worst == make_rational(14, 15));
  opts.strict = true;
  CHECK_THROWS_AS(run_1_out_of_d(inst, opts), InternalError);
  opts.d = 0;
  auto ok = run_1_out_of_d(inst, opts);
  CHECK(ok.d == 8);
  for (AgentId i = 0; i < 5; ++i) CHECK(inst.bundle_value(i, ok.allocation.bundles[i]) >= ok.mms_values[i]);
}
