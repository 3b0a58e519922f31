#pragma once

#include <vector>

#include "mmskit/core.hpp"
#include "mmskit/oracle.hpp"
#include "mmskit/parallel.hpp"

namespace mmskit {

/// clones[a] lists the indices of agents added as copies of original agent a.
struct AgentDuplication {
  int original_agents = 0;
  std::vector<std::vector<AgentId>> clones;

  bool empty() const;
  /// Original agent behind index `agent` (itself for non-clones).
  AgentId origin_of(AgentId agent) const;

  bool operator==(const AgentDuplication&) const = default;
};

struct AgentPadding {
  Instance instance;
  AgentDuplication duplication;
};

/// Grows n to 3*ceil(n/3) by appending copies of agent 0.
AgentPadding pad_agents_to_multiple_of_3(const Instance& inst);

struct GoodPadding {
  Instance instance;
  GoodSet dummies;
};

/// Appends zero-valued goods until there are at least `min_goods`.
GoodPadding pad_goods(const Instance& inst, int min_goods);

struct Normalization {
  Instance instance;
  /// Witness d-partition per agent; dropped agents carry the stand-in's.
  std::vector<Partition> partitions;
  /// MMS^d of each input agent.
  std::vector<Rational> mms_values;
  std::vector<AgentId> dropped;
  /// First surviving agent; -1 when every agent was dropped.
  AgentId stand_in = -1;
};

/// Rescales every good by the value of the witness part containing it, so each
/// part of the agent's MMS partition is worth exactly 1. Agents with MMS^d = 0
/// are dropped and their rows replaced by the stand-in's normalized row.
Normalization normalize(const Instance& inst, int d, const OracleOptions& opts = {},
                        Execution exec = Execution::Parallel);

struct Ordering {
  Instance instance;
  /// sorted[i][p] = original good at sorted position p for agent i.
  std::vector<std::vector<GoodId>> sorted;
};

/// Sorts each row non-increasingly (ties by good index).
Ordering order(const Instance& inst);

/// Everything needed to map an allocation of the ordered instance back.
struct PipelineRecord {
  Instance original;
  int d = 0;
  AgentDuplication duplication;
  Instance duplicated;
  Instance normalized;
  Instance ordered;  // includes dummy goods
  GoodSet dummies;
  std::vector<std::vector<GoodId>> sorted;
  std::vector<Partition> mms_partitions;
  std::vector<Rational> mms_values;  // per agent of `duplicated`
  std::vector<AgentId> dropped;

  bool all_dropped() const { return static_cast<int>(dropped.size()) == duplicated.agents(); }
};

struct PipelineOptions {
  bool pad_agents = true;
  int min_goods = 0;
  OracleOptions oracle;
  Execution exec = Execution::Parallel;
};

/// Duplicate agents, normalize to d, order, pad goods.
PipelineRecord prepare(const Instance& inst, int d, const PipelineOptions& opts = {});

/// Picking procedure: positions of the ordered instance are visited in
/// increasing index and the owner of each takes her most valuable remaining
/// real good under the normalized valuation (ties by lowest index). Throws
/// InternalError if some agent ends up below her ordered bundle value.
Allocation unpick(const Allocation& ordered_alloc, const PipelineRecord& record);

/// Maps an allocation over the duplicated agents back to the original ones.
/// Clone and dropped-agent bundles are moved to `unallocated`, dummy goods
/// disappear.
Allocation reinstate(const Allocation& alloc, const PipelineRecord& record);

/// Hands out `alloc.unallocated` round-robin: agents in index order each take
/// their most valuable remaining good (ties by lowest index).
Allocation complete_by_picking(const Instance& inst, Allocation alloc);

}  // namespace mmskit
