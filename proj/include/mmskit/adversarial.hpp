#pragma once

#include <string>
#include <vector>

#include "mmskit/core.hpp"
#include "mmskit/rbf.hpp"

namespace mmskit {

enum class HardFamily { OrdinalTight, Hard1, Hard2 };

std::string to_string(HardFamily family);
HardFamily parse_family(std::string_view name);

/// Parameters of one hard instance. `rank` is the 1-based rank i of the
/// agent the construction targets (hard1, hard2 only).
struct HardInstanceSpec {
  HardFamily family = HardFamily::OrdinalTight;
  int n = 0;
  int rank = 0;
  int k1 = 0, k2 = 0, t = 3;  // hard2 only

  /// Throws InputError on inadmissible parameters.
  void validate() const;
  bool operator==(const HardInstanceSpec&) const = default;
};

// Bag filling with too few bundles: every agent shares the valuation
// 2/3 - ceil(j/2)/(3n) on goods 1..2n and 1/3 after that.

struct TightInstance {
  Instance instance;
  int d = 0;  // floor((4n-2)/3)
  Partition witness;  // all parts worth 1
};

TightInstance gen_ordinal_tight(int n);

// Threshold ceiling alpha_i = 3n/(3n+i-2) for rank i: agents 1..i value
// good j at (2n - ceil(j/2)) delta for j <= 2n, n delta up to 2n+i-1 and 0
// beyond, delta = 1/(3n+i-2); the rest value 1/q goods at 1/q each.

struct Hard1Instance {
  Instance instance;
  Rational alpha;
  Rational eps;  // 1/q, q the least integer with 1/q < tau_last/3
  Partition witness;  // for agents 0..i-1
};

Rational hard1_alpha(int n, int rank);
Hard1Instance gen_hard1(int n, int rank, const Rational& tau_last);
/// tau_last taken from thresholds_thm46(n).
Hard1Instance gen_hard1(int n, int rank);

// Oblivious adversary. The target agent (rank i, identity ranking) sees
// k1+k2 goods worth alpha, 2n-k1-2k2 worth 1/3, k2 worth 1-alpha and
// (n-k1-k2)^2 t worth eps, alpha = 1 - k1/(3(n-k2)), eps = 1/(3t(n-k2)).
// Everyone else is scripted: no reduction bundle is ever liked, the k1+k2
// best-ranked agents claim the bags holding an alpha good, and the rest only
// take a bag once it holds more than (n-k1-k2)t+2 eps goods.

struct Hard2Setup {
  int n = 0;
  int goods = 0;
  AgentId target = -1;
  Rational alpha, eps;
  Instance target_valuation;  // one row
  Partition witness;          // the four bundle groups, every part worth 1
  ResponderSet responders;
  /// Round robin over the open bags. Stateful: one run per setup.
  BagChooser choose_bag;
};

/// (k1, k2) giving the strongest bound for rank i.
std::pair<int, int> hard2_parameters(int n, int rank);
Hard2Setup gen_hard2_responders(int n, int rank, int k1, int k2, int t = 3);

/// Value the target rank cannot be promised: alpha_i (hard1), alpha of the
/// given k1, k2 (hard2; max(5/6, 1 - (i-1)/(3n)) under hard2_parameters),
/// 1 = MMS^d for the tight family.
Rational family_bound(const HardInstanceSpec& spec);

struct FailureReport {
  HardInstanceSpec spec;
  AgentId agent = -1;   // an agent left short
  int rank = -1;        // her 0-based rank (tight family: -1)
  Rational value;       // what she got
  Rational target;      // what she needed
  /// hard2: best value to the target agent of any bag handed to an agent
  /// outside the k1+k2 claimers (including her own).
  Rational best_available;
  Allocation allocation;
  Transcript transcript;  // empty for the tight family
  std::string summary;
};

/// Runs bag filling (tight family, d = floor((4n-2)/3)) or RBF (hard1,
/// hard2) and reports an agent left below her target. For hard1 and hard2
/// `taus` must put the target rank strictly above the family's bound (hard2:
/// above alpha + 2 eps). Ignored for the tight family. Throws InternalError
/// if every agent is satisfied.
FailureReport demonstrate_failure(const HardInstanceSpec& spec, const ThresholdList& taus = {});

/// The truthful RBF run on a hard1 instance, without any verdict.
RbfResult run_hard1(int n, int rank, const ThresholdList& taus);

}  // namespace mmskit
