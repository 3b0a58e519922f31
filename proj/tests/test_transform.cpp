#include "doctest.h"
#include "mmskit/transform.hpp"
#include "support/random_instances.hpp"

using namespace mmskit;
using mmskit::testing::Rng;
using mmskit::testing::uniform_int;

namespace {

Rational q(long p, long r = 1) { return make_rational(p, r); }

std::vector<Rational> row_of(const Instance& inst, AgentId i) {
  auto r = inst.row(i);
  return {r.begin(), r.end()};
}

}  // namespace

TEST_CASE("agent padding") {
  SUBCASE("three agents stay") {
    auto inst = Instance::from_integer_rows({{1}, {2}, {3}});
    auto p = pad_agents_to_multiple_of_3(inst);
    CHECK(p.instance == inst);
    CHECK(p.duplication.empty());
  }
  SUBCASE("four agents become six, agent 0 copied twice") {
    auto inst = Instance::from_integer_rows({{1, 2}, {3, 4}, {5, 6}, {7, 8}});
    auto p = pad_agents_to_multiple_of_3(inst);
    REQUIRE(p.instance.agents() == 6);
    CHECK(p.duplication.clones[0] == std::vector<AgentId>{4, 5});
    CHECK(row_of(p.instance, 4) == row_of(inst, 0));
    CHECK(row_of(p.instance, 5) == row_of(inst, 0));
    CHECK(p.duplication.origin_of(5) == 0);
    CHECK(p.duplication.origin_of(2) == 2);
  }
  SUBCASE("five agents get one clone") {
    auto inst = Instance::from_integer_rows({{1}, {2}, {3}, {4}, {5}});
    auto p = pad_agents_to_multiple_of_3(inst);
    CHECK(p.instance.agents() == 6);
    CHECK(p.duplication.clones[0].size() == 1);
  }
}

TEST_CASE("good padding") {
  auto inst = Instance::from_integer_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(pad_goods(inst, 3).instance == inst);
  CHECK(pad_goods(inst, 2).dummies.empty());
  auto p = pad_goods(inst, 8);
  CHECK(p.dummies == GoodSet{3, 4, 5, 6, 7});
  CHECK(p.instance.goods() == 8);
  for (AgentId i = 0; i < 2; ++i) {
    for (GoodId g : p.dummies) CHECK(p.instance.value(i, g) == 0);
    CHECK(p.instance.total_value(i) == inst.total_value(i));
  }
}

TEST_CASE("normalization") {
  SUBCASE("two goods of value 2") {
    auto n = normalize(Instance::from_integer_rows({{2, 2}}), 2);
    CHECK(row_of(n.instance, 0) == std::vector<Rational>{1, 1});
    CHECK(n.dropped.empty());
  }
  SUBCASE("zero agent is dropped and gets the stand-in row") {
    auto n = normalize(Instance::from_integer_rows({{3, 1, 2}, {0, 0, 0}}), 2);
    CHECK(n.dropped == std::vector<AgentId>{1});
    CHECK(n.stand_in == 0);
    CHECK(row_of(n.instance, 1) == row_of(n.instance, 0));
    CHECK(row_of(n.instance, 0) == std::vector<Rational>{1, q(1, 3), q(2, 3)});
  }
  SUBCASE("every agent dropped") {
    auto n = normalize(Instance::from_integer_rows({{0, 5}, {0, 0}}), 2);
    CHECK(n.dropped.size() == 2);
    CHECK(n.stand_in == -1);
  }
  SUBCASE("already normalized stays put") {
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
      auto s = testing::random_normalized(rng, 2, uniform_int(rng, 4, 9), 3);
      auto n = normalize(s.instance, 3);
      CHECK(n.instance == s.instance);
    }
  }
  SUBCASE("parts worth exactly 1, total d") {
    Rng rng(12);
    for (int t = 0; t < 60; ++t) {
      const int d = uniform_int(rng, 2, 4);
      auto inst = testing::random_integer_instance(rng, 2, uniform_int(rng, d, 9), 0, 12);
      auto n = normalize(inst, d, {}, Execution::Serial);
      for (AgentId i = 0; i < inst.agents(); ++i) {
        if (n.mms_values[i] == 0) continue;
        CHECK(n.instance.total_value(i) == d);
        for (const auto& part : n.partitions[i].parts) CHECK(n.instance.bundle_value(i, part) == 1);
        // v(S) >= v'(S) * MMS
        for (GoodId g = 0; g < inst.goods(); ++g)
          CHECK(inst.value(i, g) >= n.instance.value(i, g) * n.mms_values[i]);
      }
    }
  }
  SUBCASE("serial and parallel agree") {
    Rng rng(13);
    auto inst = testing::random_integer_instance(rng, 5, 9, 0, 20);
    auto a = normalize(inst, 3, {}, Execution::Serial);
    auto b = normalize(inst, 3, {}, Execution::Parallel);
    CHECK(a.instance == b.instance);
    CHECK(a.partitions == b.partitions);
  }
}

TEST_CASE("ordering") {
  auto o = order(Instance::from_rows({{q(1, 3), q(1), q(1, 2)}}));
  CHECK(row_of(o.instance, 0) == std::vector<Rational>{1, q(1, 2), q(1, 3)});
  CHECK(o.sorted[0] == std::vector<GoodId>{1, 2, 0});

  auto ties = order(Instance::from_integer_rows({{2, 5, 2, 5}}));
  CHECK(ties.sorted[0] == std::vector<GoodId>{1, 3, 0, 2});

  auto sorted = Instance::from_integer_rows({{4, 3, 3, 1}, {9, 9, 0, 0}});
  auto same = order(sorted);
  CHECK(same.instance == sorted);
  CHECK(same.sorted[0] == std::vector<GoodId>{0, 1, 2, 3});

  Rng rng(21);
  auto inst = testing::random_integer_instance(rng, 4, 10, 0, 9);
  auto r = order(inst);
  for (AgentId i = 0; i < 4; ++i) {
    CHECK(r.instance.total_value(i) == inst.total_value(i));
    for (int p = 1; p < 10; ++p) CHECK(r.instance.value(i, p - 1) >= r.instance.value(i, p));
  }
}

TEST_CASE("ordered normalized bounds on the pair bags") {
  // C_k = {k, 2d-k+1}: top good, C_d and good d+1 bounded; suffix sums of C_k bounded.
  Rng rng(31);
  for (int t = 0; t < 80; ++t) {
    const int d = uniform_int(rng, 2, 5);
    auto inst = testing::random_integer_instance(rng, 3, uniform_int(rng, d, 2 * d + 3), 0, 15);
    auto rec = prepare(inst, d, {.pad_agents = false, .min_goods = 2 * d});
    const Instance& v = rec.ordered;
    for (AgentId i = 0; i < v.agents(); ++i) {
      if (rec.all_dropped()) break;
      auto pair = [&](int k) -> Rational { return v.value(i, k - 1) + v.value(i, 2 * d - k); };
      CHECK(v.value(i, 0) <= 1);
      CHECK(pair(d) <= 1);
      CHECK(v.value(i, d) <= q(1, 2));
      Rational suffix = 0;
      for (int k = d; k >= 1; --k) {
        suffix += pair(k);
        CHECK(suffix <= d - k + 1);
      }
    }
  }
}

TEST_CASE("unpick") {
  SUBCASE("single agent keeps everything she was assigned") {
    auto rec = prepare(Instance::from_integer_rows({{1, 5, 3}}), 1, {.pad_agents = false});
    Allocation x{{{0, 1, 2}}, {}};
    auto y = unpick(x, rec);
    CHECK(y.bundles[0] == GoodSet{0, 1, 2});
  }
  SUBCASE("ordered input keeps per-agent values") {
    auto inst = Instance::from_integer_rows({{5, 4, 3, 2}, {8, 1, 1, 0}});
    auto rec = prepare(inst, 2, {.pad_agents = false});
    Allocation x{{{0, 3}, {1, 2}}, {}};
    auto y = unpick(x, rec);
    for (AgentId i = 0; i < 2; ++i)
      CHECK(rec.normalized.bundle_value(i, y.bundles[i]) == rec.ordered.bundle_value(i, x.bundles[i]));
  }
  SUBCASE("random three agents, six goods") {
    Rng rng(41);
    for (int t = 0; t < 200; ++t) {
      auto inst = testing::random_integer_instance(rng, 3, 6, 0, 10);
      auto rec = prepare(inst, 2, {.pad_agents = false, .exec = Execution::Serial});
      auto x = testing::random_allocation(rng, 3, 6, true);
      auto y = unpick(x, rec);
      y.validate(6);
      CHECK(y.missing(6).empty());
      for (AgentId i = 0; i < 3; ++i)
        CHECK(rec.normalized.bundle_value(i, y.bundles[i]) >= rec.ordered.bundle_value(i, x.bundles[i]));
    }
  }
  SUBCASE("dummy positions are skipped") {
    auto rec = prepare(Instance::from_integer_rows({{2, 1}, {1, 2}}), 1, {.pad_agents = false, .min_goods = 4});
    Allocation x{{{0, 2}, {1, 3}}, {}};
    auto y = unpick(x, rec);
    CHECK(y.bundles[0] == GoodSet{0});
    CHECK(y.bundles[1] == GoodSet{1});
  }
  SUBCASE("wrong shape is rejected") {
    auto rec = prepare(Instance::from_integer_rows({{2, 1}}), 1, {.pad_agents = false});
    CHECK_THROWS_AS(unpick(Allocation{{{0}, {1}}, {}}, rec), InputError);
    CHECK_THROWS_AS(unpick(Allocation{{{0, 0}}, {}}, rec), InputError);
  }
}

TEST_CASE("reinstate") {
  SUBCASE("no clones, no dummies") {
    auto inst = Instance::from_integer_rows({{1, 2, 3}, {3, 2, 1}, {1, 1, 1}});
    auto rec = prepare(inst, 2, {.pad_agents = true});
    Allocation a{{{0}, {1}, {2}}, {}};
    CHECK(reinstate(a, rec) == a);
  }
  SUBCASE("clone bundle is discarded, original keeps hers") {
    auto inst = Instance::from_integer_rows({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}});
    auto rec = prepare(inst, 2, {.min_goods = 6});
    REQUIRE(rec.duplicated.agents() == 6);
    Allocation a{{{0}, {1}, {2}, {3}, {4}, {5}}, {}};
    auto r = reinstate(a, rec);
    CHECK(r.bundles == std::vector<GoodSet>{{0}, {1}, {2}, {3}});
    CHECK(r.unallocated.empty());
  }
  SUBCASE("dummy-only bundle becomes empty") {
    auto inst = Instance::from_integer_rows({{1, 1}, {1, 1}, {1, 1}});
    auto rec = prepare(inst, 1, {.min_goods = 5});
    Allocation a{{{0, 1}, {2, 3}, {4}}, {}};
    auto r = reinstate(a, rec);
    CHECK(r.bundles == std::vector<GoodSet>{{0, 1}, {}, {}});
  }
  SUBCASE("dropped agent gets nothing") {
    auto inst = Instance::from_integer_rows({{1, 1, 1}, {0, 0, 0}, {1, 1, 1}});
    auto rec = prepare(inst, 2);
    REQUIRE(rec.dropped == std::vector<AgentId>{1});
    auto r = reinstate(Allocation{{{0}, {1}, {2}}, {}}, rec);
    CHECK(r.bundles[1].empty());
    CHECK(r.unallocated == GoodSet{1});
  }
}

TEST_CASE("completion by picking") {
  auto inst = Instance::from_integer_rows({{1, 5, 3, 2}, {4, 4, 4, 4}});
  auto a = complete_by_picking(inst, Allocation{{{}, {}}, {0, 1, 2, 3}});
  CHECK(a.bundles[0] == GoodSet{1, 2});
  CHECK(a.bundles[1] == GoodSet{0, 3});
  CHECK(a.unallocated.empty());
}
