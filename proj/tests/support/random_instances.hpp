#pragma once

#include <random>
#include <vector>

#include "mmskit/core.hpp"

namespace mmskit::testing {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);

/// Integer valuations drawn uniformly from [lo, hi].
Instance random_integer_instance(Rng& rng, int agents, int goods, int lo, int hi);

struct NormalizedSample {
  Instance instance;                 // ordered and d-normalized
  std::vector<Partition> witnesses;  // one all-ones d-partition per agent
};

/// Ordered d-normalized instance built from a random d-partition per agent
/// (goods >= d). Weight profiles vary between agents so that singleton
/// parts, heavy tops and long tails all show up.
NormalizedSample random_normalized(Rng& rng, int agents, int goods, int d);

/// Uniformly random (possibly partial) allocation of `goods` to `agents`.
Allocation random_allocation(Rng& rng, int agents, int goods, bool allow_unallocated);

}  // namespace mmskit::testing
