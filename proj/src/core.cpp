#include "mmskit/core.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace mmskit {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw InputError("not a rational literal: '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

GoodSet make_good_set(std::vector<GoodId> goods) {
  std::sort(goods.begin(), goods.end());
  goods.erase(std::unique(goods.begin(), goods.end()), goods.end());
  return goods;
}

GoodSet set_union(const GoodSet& a, const GoodSet& b) {
  GoodSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

GoodSet set_difference(const GoodSet& a, const GoodSet& b) {
  GoodSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

GoodSet iota_set(int count, int first) {
  GoodSet out(static_cast<std::size_t>(std::max(count, 0)));
  std::iota(out.begin(), out.end(), first);
  return out;
}

// ---------------------------------------------------------------- Instance

Instance::Instance(int agents, int goods)
    : Instance(agents, goods, std::vector<Rational>(static_cast<std::size_t>(agents) * std::max(goods, 0))) {}

Instance::Instance(int agents, int goods, std::vector<Rational> values)
    : agents_(agents), goods_(goods), values_(std::move(values)) {
  if (agents < 1) throw InputError("instance needs at least one agent");
  if (goods < 0) throw InputError("negative good count");
  if (values_.size() != static_cast<std::size_t>(agents) * goods) {
    throw InputError("valuation matrix has " + std::to_string(values_.size()) + " entries, expected " +
                     std::to_string(static_cast<long>(agents) * goods));
  }
  for (auto& v : values_) {
    v.canonicalize();
    if (v < 0) throw InputError("negative valuation " + to_string(v));
  }
}

Instance Instance::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) throw InputError("instance needs at least one agent");
  const int m = static_cast<int>(rows.front().size());
  std::vector<Rational> flat;
  flat.reserve(rows.size() * m);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != m) throw InputError("valuation matrix is not rectangular");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Instance(static_cast<int>(rows.size()), m, std::move(flat));
}

Instance Instance::from_integer_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> q;
  q.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (long v : r) row.emplace_back(v);
    q.push_back(std::move(row));
  }
  return from_rows(q);
}

void Instance::check_agent(AgentId agent) const {
  if (agent < 0 || agent >= agents_) {
    throw InputError("agent index " + std::to_string(agent) + " out of range [0," + std::to_string(agents_) + ")");
  }
}

void Instance::check_good(GoodId good) const {
  if (good < 0 || good >= goods_) {
    throw InputError("good index " + std::to_string(good) + " out of range [0," + std::to_string(goods_) + ")");
  }
}

const Rational& Instance::value(AgentId agent, GoodId good) const {
  check_agent(agent);
  check_good(good);
  return values_[static_cast<std::size_t>(agent) * goods_ + good];
}

void Instance::set_value(AgentId agent, GoodId good, Rational v) {
  check_agent(agent);
  check_good(good);
  v.canonicalize();
  if (v < 0) throw InputError("negative valuation " + to_string(v));
  values_[static_cast<std::size_t>(agent) * goods_ + good] = std::move(v);
}

std::span<const Rational> Instance::row(AgentId agent) const {
  check_agent(agent);
  return {values_.data() + static_cast<std::size_t>(agent) * goods_, static_cast<std::size_t>(goods_)};
}

Rational Instance::bundle_value(AgentId agent, const GoodSet& bundle) const {
  check_agent(agent);
  Rational sum = 0;
  for (GoodId g : bundle) {
    check_good(g);
    sum += values_[static_cast<std::size_t>(agent) * goods_ + g];
  }
  return sum;
}

Rational Instance::total_value(AgentId agent) const {
  Rational sum = 0;
  for (const auto& v : row(agent)) sum += v;
  return sum;
}

Rational bundle_value(const Instance& inst, AgentId agent, const GoodSet& bundle) {
  return inst.bundle_value(agent, bundle);
}

// -------------------------------------------------------------- Allocation

void Allocation::validate(int goods) const {
  std::vector<char> seen(static_cast<std::size_t>(std::max(goods, 0)), 0);
  auto mark = [&](const GoodSet& s) {
    for (GoodId g : s) {
      if (g < 0 || g >= goods) throw InputError("allocation mentions good " + std::to_string(g) + " outside [0," +
                                                std::to_string(goods) + ")");
      if (seen[g]++) throw InputError("good " + std::to_string(g) + " allocated twice");
    }
  };
  for (const auto& b : bundles) mark(b);
  mark(unallocated);
}

GoodSet Allocation::missing(int goods) const {
  std::vector<char> seen(static_cast<std::size_t>(std::max(goods, 0)), 0);
  for (const auto& b : bundles)
    for (GoodId g : b) seen.at(g) = 1;
  for (GoodId g : unallocated) seen.at(g) = 1;
  GoodSet out;
  for (int g = 0; g < goods; ++g)
    if (!seen[g]) out.push_back(g);
  return out;
}

// --------------------------------------------------------------- Partition

bool Partition::partitions(const GoodSet& ground) const {
  GoodSet all;
  std::size_t count = 0;
  for (const auto& p : parts) {
    if (!std::is_sorted(p.begin(), p.end())) return false;
    count += p.size();
    all = set_union(all, p);
  }
  return count == all.size() && all == ground;
}

Rational Partition::min_part_value(const Instance& inst, AgentId agent) const {
  if (parts.empty()) throw InputError("partition has no parts");
  Rational best = inst.bundle_value(agent, parts.front());
  for (std::size_t j = 1; j < parts.size(); ++j) {
    Rational v = inst.bundle_value(agent, parts[j]);
    if (v < best) best = v;
  }
  return best;
}

// ------------------------------------------------------------ Thresholds

ThresholdList::ThresholdList(std::vector<Rational> taus) : taus_(std::move(taus)) {
  for (std::size_t r = 0; r < taus_.size(); ++r) {
    taus_[r].canonicalize();
    if (taus_[r] < 0 || taus_[r] > 1) {
      throw InputError("threshold " + to_string(taus_[r]) + " at rank " + std::to_string(r) + " outside [0,1]");
    }
    if (r > 0 && taus_[r] > taus_[r - 1]) {
      throw InputError("thresholds must be non-increasing (rank " + std::to_string(r) + ")");
    }
  }
}

ThresholdList ThresholdList::constant(int n, const Rational& tau) {
  return ThresholdList(std::vector<Rational>(static_cast<std::size_t>(n), tau));
}

// --------------------------------------------------------------- Ranking

PriorityRanking::PriorityRanking(std::vector<int> rank_of) : rank_of_(std::move(rank_of)) {
  const int n = static_cast<int>(rank_of_.size());
  agent_at_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    int r = rank_of_[a];
    if (r < 0 || r >= n || agent_at_[r] != -1) throw InputError("ranking is not a permutation of [0,n)");
    agent_at_[r] = a;
  }
}

PriorityRanking PriorityRanking::identity(int n) {
  std::vector<int> r(static_cast<std::size_t>(n));
  std::iota(r.begin(), r.end(), 0);
  return PriorityRanking(std::move(r));
}

// ------------------------------------------------------------------ T-MMS

std::vector<bool> t_mms_verdicts(const Instance& inst, const Allocation& alloc, const PriorityRanking& ranking,
                                 const ThresholdList& taus, std::span<const Rational> mms_values) {
  const int n = inst.agents();
  if (static_cast<int>(alloc.bundles.size()) != n || ranking.size() != n || taus.size() != n ||
      static_cast<int>(mms_values.size()) != n) {
    throw InputError("dimension mismatch: instance has " + std::to_string(n) + " agents");
  }
  std::vector<bool> ok(n);
  for (AgentId i = 0; i < n; ++i) {
    ok[i] = inst.bundle_value(i, alloc.bundles[i]) >= taus.at_rank(ranking.rank_of(i)) * mms_values[i];
  }
  return ok;
}

bool is_T_mms(const Instance& inst, const Allocation& alloc, const PriorityRanking& ranking,
              const ThresholdList& taus, std::span<const Rational> mms_values) {
  auto v = t_mms_verdicts(inst, alloc, ranking, taus, mms_values);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

}  // namespace mmskit
