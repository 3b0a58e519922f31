#include "mmskit/bobw.hpp"

#include <random>

#include "mmskit/transform.hpp"

namespace mmskit {

PriorityRanking rotated_ranking(int n, int shift) {
  if (n < 1) throw InputError("rotation needs at least one agent");
  if (shift < 0 || shift >= n) throw InputError("rotation shift out of range");
  std::vector<int> rank(n);
  for (int a = 0; a < n; ++a) rank[a] = (a + shift) % n;
  return PriorityRanking(rank);
}

namespace {

template <class RunOne>
AllocationDistribution rotate(const Instance& inst, Execution exec, std::vector<Rational> mms_values,
                              RunOne&& run_one) {
  const int n = inst.agents();
  AllocationDistribution dist;
  dist.support.resize(n);
  for_each_index(n, exec, [&](long k) {
    auto& o = dist.support[k];
    o.shift = static_cast<int>(k);
    o.ranking = rotated_ranking(n, o.shift);
    o.allocation = run_one(o.ranking);
    o.values.resize(n);
    for (AgentId a = 0; a < n; ++a) o.values[a] = inst.bundle_value(a, o.allocation.bundles[a]);
  });
  dist.probability = make_rational(1, n);
  dist.ex_ante.assign(n, 0);
  dist.ex_post_min.resize(n);
  for (AgentId a = 0; a < n; ++a) {
    dist.ex_post_min[a] = dist.support[0].values[a];
    for (const auto& o : dist.support) {
      dist.ex_ante[a] += o.values[a];
      if (o.values[a] < dist.ex_post_min[a]) dist.ex_post_min[a] = o.values[a];
    }
    dist.ex_ante[a] *= dist.probability;
  }
  dist.mms_values = std::move(mms_values);
  return dist;
}

}  // namespace

AllocationDistribution cyclic_rotation_distribution(const Instance& inst, const ThresholdList& taus,
                                                    const RbfOptions& opts, Execution exec) {
  const int n = inst.agents();
  if (n < 1) throw InputError("instance has no agents");
  // Validate once; the rotated runs then skip the oracle.
  run_rbf(inst, taus, PriorityRanking::identity(n), opts);
  RbfOptions inner = opts;
  inner.check_normalized = false;
  return rotate(inst, exec, std::vector<Rational>(n, 1),
                [&](const PriorityRanking& r) { return run_rbf(inst, taus, r, inner).allocation; });
}

AllocationDistribution cyclic_rotation_pipeline(const Instance& inst, const ThresholdList& taus,
                                                const RbfOptions& opts, Execution exec) {
  const int n = inst.agents();
  if (n < 1) throw InputError("instance has no agents");
  if (taus.size() != n) throw InputError("threshold list length differs from the number of agents");
  auto record = prepare(inst, n, {.pad_agents = false, .min_goods = 0, .oracle = opts.oracle, .exec = exec});
  RbfOptions inner = opts;
  inner.check_normalized = false;
  return rotate(inst, exec, record.mms_values, [&](const PriorityRanking& r) {
    if (record.all_dropped()) {
      Allocation a = Allocation::empty(n);
      a.unallocated = iota_set(inst.goods());
      return a;
    }
    return unpick(run_rbf(record.ordered, taus, r, inner).allocation, record);
  });
}

int draw_shift(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("rotation needs at least one agent");
  std::mt19937_64 rng(seed);
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

Rational mean_threshold(const ThresholdList& taus) {
  if (taus.size() == 0) throw InputError("empty threshold list");
  Rational s = 0;
  for (const auto& t : taus.values()) s += t;
  return s / taus.size();
}

}  // namespace mmskit
