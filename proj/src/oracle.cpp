#include "mmskit/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <type_traits>

namespace mmskit {

namespace {

void validate_query(const Instance& inst, AgentId agent, int d, const GoodSet& goods) {
  if (d < 1) throw InputError("bundle count d must be >= 1");
  if (agent < 0 || agent >= inst.agents()) throw InputError("agent index " + std::to_string(agent) + " out of range");
  for (std::size_t k = 0; k < goods.size(); ++k) {
    if (goods[k] < 0 || goods[k] >= inst.goods()) throw InputError("good index " + std::to_string(goods[k]) + " out of range");
    if (k > 0 && goods[k] <= goods[k - 1]) throw InputError("good set must be sorted and duplicate-free");
  }
}

template <class T>
T floor_div(const T& a, long b) {
  if constexpr (std::is_same_v<T, mpz_class>) {
    mpz_class q;
    mpz_fdiv_q_ui(q.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(b));
    return q;
  } else {
    return a / b;  // operands are non-negative
  }
}

// Max-min multiway partition of positive integer values (sorted non-increasing).
template <class T>
class PartitionSearch {
 public:
  PartitionSearch(std::vector<T> values, int parts, std::uint64_t budget)
      : vals_(std::move(values)), d_(parts), budget_(budget) {
    const std::size_t n = vals_.size();
    suffix_.assign(n + 1, T(0));
    for (std::size_t k = n; k-- > 0;) suffix_[k] = suffix_[k + 1] + vals_[k];
    ceiling_ = floor_div(suffix_[0], d_);
    load_.assign(d_, T(0));
    assign_.assign(n, -1);
  }

  T run() {
    seed_greedy();
    if (best_ < ceiling_) dfs(0);
    return best_;
  }

  const std::vector<int>& best_assignment() const { return best_assign_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void seed_greedy() {
    std::vector<T> load(d_, T(0));
    std::vector<int> assign(vals_.size());
    for (std::size_t k = 0; k < vals_.size(); ++k) {
      int p = static_cast<int>(std::min_element(load.begin(), load.end()) - load.begin());
      load[p] += vals_[k];
      assign[k] = p;
    }
    best_ = *std::min_element(load.begin(), load.end());
    best_assign_ = std::move(assign);
  }

  T water_level(const T& remaining) const {
    std::vector<T> sorted(load_);
    std::sort(sorted.begin(), sorted.end());
    T prefix(0);
    for (int j = 1; j <= d_; ++j) {
      prefix += sorted[j - 1];
      T level = floor_div(T(remaining + prefix), j);
      if (j == d_ || level <= sorted[j]) return level;
    }
    return T(0);
  }

  void dfs(std::size_t k) {
    if (done_) return;
    if (++nodes_ > budget_) throw BudgetExceeded(budget_, "MMS branch and bound");

    if (k == vals_.size()) {
      T lo = opened_ < d_ ? T(0) : *std::min_element(load_.begin(), load_.end());
      if (lo > best_) {
        best_ = lo;
        best_assign_ = assign_;
        if (best_ >= ceiling_) done_ = true;
      }
      return;
    }
    if (d_ - opened_ > static_cast<int>(vals_.size() - k)) return;  // some part stays empty
    if (water_level(suffix_[k]) <= best_) return;

    std::vector<int> order;
    for (int p = 0; p < opened_; ++p) order.push_back(p);
    if (opened_ < d_) order.push_back(opened_);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return load_[a] < load_[b]; });

    for (std::size_t c = 0; c < order.size() && !done_; ++c) {
      const int p = order[c];
      if (c > 0 && load_[order[c - 1]] == load_[p]) continue;  // interchangeable parts
      const bool opens = p == opened_;
      load_[p] += vals_[k];
      assign_[k] = p;
      if (opens) ++opened_;
      dfs(k + 1);
      if (opens) --opened_;
      load_[p] -= vals_[k];
    }
  }

  std::vector<T> vals_;
  std::vector<T> suffix_;
  int d_;
  std::uint64_t budget_;
  std::vector<T> load_;
  std::vector<int> assign_;
  std::vector<int> best_assign_;
  int opened_ = 0;
  T best_{0};
  T ceiling_{0};
  bool done_ = false;
  std::uint64_t nodes_ = 0;
};

template <class T>
std::pair<T, std::vector<int>> solve(std::vector<T> values, int d, std::uint64_t budget, std::uint64_t& nodes) {
  PartitionSearch<T> search(std::move(values), d, budget);
  T best = search.run();
  nodes = search.nodes();
  return {best, search.best_assignment()};
}

}  // namespace

MmsResult mms(const Instance& inst, AgentId agent, int d, const GoodSet& goods, const OracleOptions& opts) {
  validate_query(inst, agent, d, goods);
  MmsResult result;
  result.witness.parts.assign(d, GoodSet{});

  if (d == 1) {
    result.value = inst.bundle_value(agent, goods);
    result.witness.parts[0] = goods;
    return result;
  }

  // Positive goods in non-increasing value order, ties by index.
  std::vector<GoodId> positive;
  GoodSet zeros;
  for (GoodId g : goods) (inst.value(agent, g) > 0 ? positive : zeros).push_back(g);
  std::stable_sort(positive.begin(), positive.end(),
                   [&](GoodId a, GoodId b) { return inst.value(agent, a) > inst.value(agent, b); });

  if (static_cast<int>(positive.size()) < d) {
    result.value = 0;
    result.witness.parts[0] = goods;
    return result;
  }

  mpz_class scale = 1;
  for (GoodId g : positive) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), inst.value(agent, g).get_den_mpz_t());
  std::vector<mpz_class> scaled;
  scaled.reserve(positive.size());
  mpz_class total = 0;
  for (GoodId g : positive) {
    const Rational& v = inst.value(agent, g);
    scaled.push_back(v.get_num() * (scale / v.get_den()));
    total += scaled.back();
  }

  std::vector<int> assign;
  mpz_class best;
  if (total.fits_slong_p() && total < mpz_class(std::numeric_limits<long>::max() / 4)) {
    std::vector<long> small;
    small.reserve(scaled.size());
    for (const auto& z : scaled) small.push_back(z.get_si());
    auto [b, a] = solve<long>(std::move(small), d, opts.node_budget, result.nodes);
    best = b;
    assign = std::move(a);
  } else {
    auto [b, a] = solve<mpz_class>(std::move(scaled), d, opts.node_budget, result.nodes);
    best = b;
    assign = std::move(a);
  }

  result.value = Rational(best, scale);
  result.value.canonicalize();
  for (std::size_t k = 0; k < positive.size(); ++k) result.witness.parts[assign[k]].push_back(positive[k]);
  for (GoodId g : zeros) result.witness.parts[0].push_back(g);
  for (auto& p : result.witness.parts) std::sort(p.begin(), p.end());
  return result;
}

MmsResult mms(const Instance& inst, AgentId agent, int d, const OracleOptions& opts) {
  return mms(inst, agent, d, iota_set(inst.goods()), opts);
}

std::vector<MmsResult> mms_all_agents(const Instance& inst, int d, const OracleOptions& opts, Execution exec) {
  std::vector<MmsResult> out(inst.agents());
  for_each_index(inst.agents(), exec, [&](long i) { out[i] = mms(inst, static_cast<AgentId>(i), d, opts); });
  return out;
}

// ------------------------------------------------------------------ naive

namespace {

struct NaiveEnumerator {
  const Instance& inst;
  AgentId agent;
  int d;
  const GoodSet& goods;
  std::vector<Rational> sums{};
  std::vector<int> block{};
  int used = 0;
  bool have_best = false;
  Rational best{};
  std::vector<int> best_block{};
  std::uint64_t leaves = 0;

  void run(std::size_t k) {
    if (k == goods.size()) {
      ++leaves;
      Rational lo = used < d ? Rational(0) : *std::min_element(sums.begin(), sums.end());
      if (!have_best || lo > best) {
        have_best = true;
        best = lo;
        best_block = block;
      }
      return;
    }
    const Rational& v = inst.value(agent, goods[k]);
    const int limit = std::min(used + 1, d);
    for (int b = 0; b < limit; ++b) {
      const bool opens = b == used;
      sums[b] += v;
      block[k] = b;
      if (opens) ++used;
      run(k + 1);
      if (opens) --used;
      sums[b] -= v;
    }
  }
};

}  // namespace

MmsResult mms_naive(const Instance& inst, AgentId agent, int d, const GoodSet& goods) {
  validate_query(inst, agent, d, goods);
  if (static_cast<int>(goods.size()) > kNaiveMaxGoods) {
    throw InputError("naive enumerator is capped at " + std::to_string(kNaiveMaxGoods) + " goods");
  }
  NaiveEnumerator e{inst, agent, d, goods};
  e.sums.assign(d, Rational(0));
  e.block.assign(goods.size(), 0);
  e.run(0);

  MmsResult result;
  result.value = e.best;
  result.nodes = e.leaves;
  result.witness.parts.assign(d, GoodSet{});
  for (std::size_t k = 0; k < goods.size(); ++k) result.witness.parts[e.best_block[k]].push_back(goods[k]);
  return result;
}

}  // namespace mmskit
