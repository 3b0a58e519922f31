#pragma once

#include <string>
#include <vector>

#include "mmskit/core.hpp"
#include "mmskit/oracle.hpp"
#include "mmskit/rbf.hpp"

namespace mmskit {

struct AgentCheck {
  Rational value;   // v_i(X_i)
  Rational target;  // what she must reach
  bool ok = false;
};

struct GuaranteeReport {
  std::vector<AgentCheck> agents;
  bool all_ok() const;
};

/// v_i(X_i) >= MMS_i^d(M) for every agent, MMS from the oracle.
GuaranteeReport check_1_out_of_d(const Instance& inst, const Allocation& alloc, int d, const OracleOptions& opts = {},
                                 Execution exec = Execution::Parallel);

/// v_i(X_i) >= tau_rank(i) * MMS_i^n(M) for every agent.
GuaranteeReport check_t_mms(const Instance& inst, const Allocation& alloc, const PriorityRanking& ranking,
                            const ThresholdList& taus, const OracleOptions& opts = {},
                            Execution exec = Execution::Parallel);

struct TranscriptReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// True iff the type sequence lies in 1*2*4*(32*4*)*.
bool reduction_order_ok(const std::vector<int>& types);

/// Structural checks of a truthful RBF run: reduction order, at least
/// 2|N| goods left once single-good reductions stop, and goods taken by
/// pair and triple reductions all ranked before the |N_f|-th and 2|N_f|-th
/// smallest surviving good respectively.
TranscriptReport check_transcript(const Transcript& tr);

struct Expansion {
  Instance instance;
  ThresholdList taus;
};

/// Adds d-n agents valuing everything at 0 and T = (1,...,1,0,...,0).
/// An allocation is T-MMS for the expansion (under the identity ranking, with
/// MMS^d) iff its restriction to the first n agents is 1-out-of-d MMS.
Expansion equivalence_expand(const Instance& inst, int d);

}  // namespace mmskit
