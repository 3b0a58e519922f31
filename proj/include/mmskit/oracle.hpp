#pragma once

#include <cstdint>

#include "mmskit/core.hpp"
#include "mmskit/parallel.hpp"

namespace mmskit {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

struct OracleOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct MmsResult {
  Rational value;
  Partition witness;
  std::uint64_t nodes = 0;
};

/// Exact MMS_agent^d(goods) with a witnessing d-partition.
///
/// Branch and bound over the agent's values scaled to a common integer
/// denominator. Goods are placed in non-increasing value order, each into an
/// existing part or the first empty one; a node is cut when the water-filling
/// level of the current loads plus the remaining value cannot beat the
/// incumbent. The incumbent is seeded with the largest-first greedy partition,
/// so ties resolve to the first partition reached in that order.
/// Throws BudgetExceeded rather than returning an unproven value.
MmsResult mms(const Instance& inst, AgentId agent, int d, const GoodSet& goods, const OracleOptions& opts = {});

/// MMS over all goods of the instance.
MmsResult mms(const Instance& inst, AgentId agent, int d, const OracleOptions& opts = {});

/// MMS^d over all goods for every agent, one oracle call per agent.
std::vector<MmsResult> mms_all_agents(const Instance& inst, int d, const OracleOptions& opts = {},
                                      Execution exec = Execution::Parallel);

inline constexpr int kNaiveMaxGoods = 12;

/// Reference enumerator over every set partition of `goods` into at most d
/// blocks (padded with empty parts). Test oracle only; |goods| <= 12.
MmsResult mms_naive(const Instance& inst, AgentId agent, int d, const GoodSet& goods);

}  // namespace mmskit
