#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmskit {

/// Exact rational. Always kept canonical (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;

using AgentId = int;
using GoodId = int;

/// Sorted, duplicate-free list of good indices.
using GoodSet = std::vector<GoodId>;

// Error hierarchy. The CLI maps these onto exit codes 1, 2 and 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A search ran past its node budget. Never accompanied by a partial answer.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t budget, const std::string& what)
      : Error(what + " (node budget " + std::to_string(budget) + " exhausted)"),
        budget_(budget) {}
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

/// A proven guarantee failed to hold. Indicates a bug, not a data condition.
class InternalError : public Error {
 public:
  using Error::Error;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational make_rational(long num, long den = 1);

GoodSet make_good_set(std::vector<GoodId> goods);
GoodSet set_union(const GoodSet& a, const GoodSet& b);
GoodSet set_difference(const GoodSet& a, const GoodSet& b);
GoodSet iota_set(int count, int first = 0);

/// n x m matrix of non-negative rational values, v_i(g) = value(i, g).
class Instance {
 public:
  Instance() = default;
  Instance(int agents, int goods);
  Instance(int agents, int goods, std::vector<Rational> values);
  static Instance from_rows(const std::vector<std::vector<Rational>>& rows);
  static Instance from_integer_rows(const std::vector<std::vector<long>>& rows);

  int agents() const noexcept { return agents_; }
  int goods() const noexcept { return goods_; }

  const Rational& value(AgentId agent, GoodId good) const;
  void set_value(AgentId agent, GoodId good, Rational v);
  std::span<const Rational> row(AgentId agent) const;

  Rational bundle_value(AgentId agent, const GoodSet& bundle) const;
  Rational total_value(AgentId agent) const;

  bool operator==(const Instance&) const = default;

 private:
  void check_agent(AgentId agent) const;
  void check_good(GoodId good) const;

  int agents_ = 0;
  int goods_ = 0;
  std::vector<Rational> values_;
};

/// Free-function form of Instance::bundle_value.
Rational bundle_value(const Instance& inst, AgentId agent, const GoodSet& bundle);

struct Allocation {
  std::vector<GoodSet> bundles;
  GoodSet unallocated;

  static Allocation empty(int agents) { return Allocation{std::vector<GoodSet>(agents), {}}; }

  /// Throws InputError unless bundles and unallocated are disjoint subsets of [goods).
  void validate(int goods) const;
  /// Goods not mentioned anywhere.
  GoodSet missing(int goods) const;

  bool operator==(const Allocation&) const = default;
};

struct Partition {
  std::vector<GoodSet> parts;

  int size() const noexcept { return static_cast<int>(parts.size()); }
  /// True if the parts are disjoint and cover exactly `ground`.
  bool partitions(const GoodSet& ground) const;
  Rational min_part_value(const Instance& inst, AgentId agent) const;

  bool operator==(const Partition&) const = default;
};

/// Non-increasing per-rank targets 1 >= tau_0 >= ... >= tau_{n-1} >= 0.
class ThresholdList {
 public:
  ThresholdList() = default;
  explicit ThresholdList(std::vector<Rational> taus);
  static ThresholdList constant(int n, const Rational& tau);

  int size() const noexcept { return static_cast<int>(taus_.size()); }
  const Rational& at_rank(int rank) const { return taus_.at(rank); }
  const std::vector<Rational>& values() const noexcept { return taus_; }

  bool operator==(const ThresholdList&) const = default;

 private:
  std::vector<Rational> taus_;
};

/// Bijection agent -> rank, 0 = highest priority.
class PriorityRanking {
 public:
  PriorityRanking() = default;
  explicit PriorityRanking(std::vector<int> rank_of);
  static PriorityRanking identity(int n);

  int size() const noexcept { return static_cast<int>(rank_of_.size()); }
  int rank_of(AgentId agent) const { return rank_of_.at(agent); }
  AgentId agent_at(int rank) const { return agent_at_.at(rank); }
  const std::vector<int>& ranks() const noexcept { return rank_of_; }

  bool operator==(const PriorityRanking& o) const { return rank_of_ == o.rank_of_; }

 private:
  std::vector<int> rank_of_;
  std::vector<AgentId> agent_at_;
};

/// True iff v_i(X_i) >= tau_{rank(i)} * mms[i] for every agent.
bool is_T_mms(const Instance& inst, const Allocation& alloc, const PriorityRanking& ranking,
              const ThresholdList& taus, std::span<const Rational> mms_values);

/// Per-agent verdicts behind is_T_mms.
std::vector<bool> t_mms_verdicts(const Instance& inst, const Allocation& alloc,
                                 const PriorityRanking& ranking, const ThresholdList& taus,
                                 std::span<const Rational> mms_values);

}  // namespace mmskit
