#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "mmskit/core.hpp"
#include "mmskit/oracle.hpp"
#include "mmskit/transform.hpp"

namespace mmskit {

enum class QueryPhase { Reduction, BagFill };

struct QueryContext {
  QueryPhase phase = QueryPhase::Reduction;
  int reduction_type = 0;  // 1..4 during reductions
  int bag = -1;            // bag index during bag filling
};

/// Answers value queries v_agent(goods). The engine reads valuations only
/// through this interface, so a scripted adversary can stand in for any agent.
class ValueResponder {
 public:
  virtual ~ValueResponder() = default;
  virtual Rational value(AgentId agent, const GoodSet& goods, const QueryContext& ctx) = 0;
};

class TruthfulResponder : public ValueResponder {
 public:
  explicit TruthfulResponder(Instance inst) : inst_(std::move(inst)) {}
  Rational value(AgentId agent, const GoodSet& goods, const QueryContext&) override {
    return inst_.bundle_value(agent, goods);
  }
  const Instance& instance() const { return inst_; }

 private:
  Instance inst_;
};

/// responders[i] answers for agent i.
using ResponderSet = std::vector<std::shared_ptr<ValueResponder>>;

ResponderSet truthful_responders(const Instance& inst);

/// Picks which open bag receives the next good. `open_bags` is sorted.
using BagChooser = std::function<int(std::span<const int> open_bags)>;

/// {j-th smallest element of s : j in positions, j <= |s|}, positions 1-based.
GoodSet ord_st(const GoodSet& s, std::span<const int> positions);

struct ReductionEvent {
  int type = 0;
  GoodSet bundle;
  AgentId agent = -1;
  int agents_before = 0;
  int goods_before = 0;

  bool operator==(const ReductionEvent&) const = default;
};

struct BagEvent {
  enum class Kind { Fill, Assign, Forced };
  Kind kind = Kind::Fill;
  int bag = -1;
  GoodId good = -1;
  AgentId agent = -1;

  bool operator==(const BagEvent&) const = default;
};

struct Transcript {
  std::vector<ReductionEvent> reductions;
  GoodSet final_goods;               // goods left when reductions stop
  std::vector<AgentId> final_agents; // agents left when reductions stop
  std::vector<GoodSet> initial_bags;
  std::vector<BagEvent> bag_events;
  bool ran_out_of_goods = false;

  bool operator==(const Transcript&) const = default;
};

struct RbfOptions {
  /// Throw InternalError if fewer than 2|N| goods remain once type-1
  /// reductions are over.
  bool strict = true;
  /// Instance overload only: confirm every agent has MMS^n = 1 with the oracle.
  bool check_normalized = true;
  OracleOptions oracle;
  BagChooser choose_bag;  // empty: lowest open bag
};

struct RbfResult {
  Allocation allocation;
  Transcript transcript;
  /// Agent liked her bundle when it was handed to her.
  std::vector<bool> satisfied;

  bool operator==(const RbfResult&) const = default;
};

/// Reductions then bag filling over goods 0..m-1 (0 the most valuable).
/// Ties between agents go to the smallest rank, ties between bags and between
/// goods to the smallest index.
RbfResult run_rbf(const ResponderSet& responders, int goods, const ThresholdList& taus,
                  const PriorityRanking& ranking, const RbfOptions& opts = {});

/// Truthful run on an ordered instance with v_i(M) = n for every agent.
RbfResult run_rbf(const Instance& inst, const ThresholdList& taus, const PriorityRanking& ranking,
                  const RbfOptions& opts = {});

/// tau_i = max(2n/(2n+i-1), 3/4 + 1/(12n)) for ranks i = 1..n.
ThresholdList thresholds_thm46(int n);

struct RbfPipelineResult {
  Allocation allocation;  // over the original goods; may leave goods unallocated
  RbfResult run;
  PipelineRecord record;
};

/// Normalizes an arbitrary instance to d = n, orders it, runs RBF and maps the
/// result back by picking. Agents then get at least tau_rank * MMS^n.
RbfPipelineResult run_rbf_pipeline(const Instance& inst, const ThresholdList& taus, const PriorityRanking& ranking,
                                   const RbfOptions& opts = {}, Execution exec = Execution::Parallel);

}  // namespace mmskit
