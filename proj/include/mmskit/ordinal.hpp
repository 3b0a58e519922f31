#pragma once

#include <utility>
#include <vector>

#include "mmskit/core.hpp"
#include "mmskit/oracle.hpp"
#include "mmskit/transform.hpp"

namespace mmskit {

struct FillEvent {
  int bag;
  GoodId good;
  bool operator==(const FillEvent&) const = default;
};

/// Trace of one bag-filling run. Bags are 0-based: bag k starts as {k, 2n-1-k}.
struct OrdinalRun {
  std::vector<GoodSet> initial_bags;
  std::vector<GoodSet> final_bags;
  std::vector<AgentId> owner;  // owner[bag]
  std::vector<FillEvent> fill_order;
  GoodSet leftover;            // never-consumed suffix, appended to the last bag
  bool terminated_early = false;

  bool operator==(const OrdinalRun&) const = default;
};

struct OrdinalOptions {
  int d = 0;                     // 0 means 4*ceil(n/3)
  bool strict = true;            // early termination throws InternalError
  bool check_normalized = true;  // confirm an all-ones d-partition per agent with the oracle
  OracleOptions oracle;
};

int default_bundle_count(int agents);

/// Bag filling on an ordered d-normalized instance with m >= 2n. Each round
/// appends goods 2n, 2n+1, ... to the current bag until an unassigned agent
/// values it at 1 or more; the lowest such agent index receives it.
/// When goods run out mid-round the run is flagged, the remaining bags go to
/// the remaining agents in index order, and (if strict) InternalError is thrown.
std::pair<Allocation, OrdinalRun> run_ordinal(const Instance& inst, const OrdinalOptions& opts = {});

struct OneOutOfDResult {
  int d = 0;
  Allocation allocation;  // over the original instance, every good handed out
  OrdinalRun run;         // empty when every agent has MMS 0
  PipelineRecord record;
  std::vector<Rational> mms_values;  // MMS^d per original agent
};

/// Full pipeline for an arbitrary instance: agents padded to a multiple of 3,
/// normalized to d = 4*ceil(n/3), ordered, goods padded to 2n', bag filling,
/// picking back, clone removal, then leftovers handed out by picking.
/// Throws InternalError if some agent ends below MMS^d.
OneOutOfDResult run_1_out_of_d(const Instance& inst, const OracleOptions& oracle = {},
                               Execution exec = Execution::Parallel);

struct OneOutOfDOptions {
  int d = 0;           // 0 means 4*ceil(n/3)
  bool strict = true;  // throw InternalError on early termination or an agent below MMS^d
  OracleOptions oracle;
  Execution exec = Execution::Parallel;
};

/// Same pipeline with any bundle count. Agents are padded to a multiple of 3
/// only for d = 4*ceil(n/3); other d run on the n agents as given, and
/// nothing is promised (use strict = false to inspect failures).
OneOutOfDResult run_1_out_of_d(const Instance& inst, const OneOutOfDOptions& opts);

}  // namespace mmskit
