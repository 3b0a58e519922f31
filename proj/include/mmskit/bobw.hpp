#pragma once

#include <cstdint>
#include <vector>

#include "mmskit/core.hpp"
#include "mmskit/parallel.hpp"
#include "mmskit/rbf.hpp"

namespace mmskit {

/// Agent a gets rank (a + shift) mod n.
PriorityRanking rotated_ranking(int n, int shift);

struct RotationOutcome {
  int shift = 0;
  PriorityRanking ranking;
  Allocation allocation;
  std::vector<Rational> values;  // v_a(A_a) under the instance the caller passed

  bool operator==(const RotationOutcome&) const = default;
};

/// Uniform distribution over the n rotations.
struct AllocationDistribution {
  std::vector<RotationOutcome> support;
  Rational probability;  // 1/n for every outcome
  std::vector<Rational> ex_ante;      // exact expectation per agent
  std::vector<Rational> ex_post_min;  // worst outcome per agent
  /// MMS^n per agent; all ones on a normalized instance.
  std::vector<Rational> mms_values;

  bool operator==(const AllocationDistribution&) const = default;
};

/// One RBF run per rotation of an ordered instance with MMS^n = 1 for every
/// agent (same preconditions as run_rbf). Runs are independent and go in
/// parallel under Execution::Parallel.
AllocationDistribution cyclic_rotation_distribution(const Instance& inst, const ThresholdList& taus,
                                                    const RbfOptions& opts = {},
                                                    Execution exec = Execution::Parallel);

/// Same for an arbitrary instance: normalize and order once, then every
/// rotation runs RBF and is picked back to the original goods. Values are
/// in the original valuations; compare against tau * mms_values.
AllocationDistribution cyclic_rotation_pipeline(const Instance& inst, const ThresholdList& taus,
                                                const RbfOptions& opts = {},
                                                Execution exec = Execution::Parallel);

/// Shift in [0, n) drawn from mt19937_64 seeded with `seed`.
int draw_shift(int n, std::uint64_t seed);

/// (1/n) sum of the thresholds: the ex-ante guarantee of the rotation scheme.
Rational mean_threshold(const ThresholdList& taus);

}  // namespace mmskit
