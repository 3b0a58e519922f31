#include "support/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace mmskit::testing {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Instance random_integer_instance(Rng& rng, int agents, int goods, int lo, int hi) {
  Instance inst(agents, goods);
  for (int i = 0; i < agents; ++i)
    for (int g = 0; g < goods; ++g) inst.set_value(i, g, uniform_int(rng, lo, hi));
  return inst;
}

NormalizedSample random_normalized(Rng& rng, int agents, int goods, int d) {
  if (goods < d) throw InputError("random_normalized needs goods >= d");
  NormalizedSample out{Instance(agents, goods), {}};
  for (int i = 0; i < agents; ++i) {
    std::vector<int> perm(goods);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> part_of(goods);
    for (int k = 0; k < goods; ++k) part_of[perm[k]] = k < d ? k : uniform_int(rng, 0, d - 1);

    const int profile = uniform_int(rng, 0, 3);
    std::vector<long> weight(goods);
    for (int g = 0; g < goods; ++g) {
      switch (profile) {
        case 0: weight[g] = uniform_int(rng, 1, 10); break;
        case 1: weight[g] = uniform_int(rng, 0, 10); break;
        case 2: weight[g] = uniform_int(rng, 0, 3) == 0 ? uniform_int(rng, 20, 60) : uniform_int(rng, 1, 6); break;
        default: weight[g] = 1L << uniform_int(rng, 0, 5); break;
      }
    }
    std::vector<long> part_total(d, 0);
    for (int g = 0; g < goods; ++g) part_total[part_of[g]] += weight[g];
    for (int g = 0; g < goods; ++g) {
      if (part_total[part_of[g]] == 0) {  // every good of this part drew zero
        weight[g] = 1;
        part_total[part_of[g]] = 1;
      }
    }

    std::vector<Rational> row(goods);
    for (int g = 0; g < goods; ++g) row[g] = weight[g] == 0 ? Rational(0) : make_rational(weight[g], part_total[part_of[g]]);

    // Sort the row non-increasingly; position p holds original good sorted[p].
    std::vector<int> sorted(goods);
    std::iota(sorted.begin(), sorted.end(), 0);
    std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) { return row[a] > row[b]; });
    Partition witness;
    witness.parts.assign(d, GoodSet{});
    for (int p = 0; p < goods; ++p) {
      out.instance.set_value(i, p, row[sorted[p]]);
      witness.parts[part_of[sorted[p]]].push_back(p);
    }
    out.witnesses.push_back(std::move(witness));
  }
  return out;
}

Allocation random_allocation(Rng& rng, int agents, int goods, bool allow_unallocated) {
  Allocation a = Allocation::empty(agents);
  for (int g = 0; g < goods; ++g) {
    int who = uniform_int(rng, allow_unallocated ? -1 : 0, agents - 1);
    (who < 0 ? a.unallocated : a.bundles[who]).push_back(g);
  }
  return a;
}

}  // namespace mmskit::testing
