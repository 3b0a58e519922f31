#include "mmskit/rbf.hpp"

#include <algorithm>

namespace mmskit {

ResponderSet truthful_responders(const Instance& inst) {
  auto shared = std::make_shared<TruthfulResponder>(inst);
  return ResponderSet(inst.agents(), shared);
}

GoodSet ord_st(const GoodSet& s, std::span<const int> positions) {
  GoodSet out;
  for (int j : positions)
    if (j >= 1 && j <= static_cast<int>(s.size())) out.push_back(s[j - 1]);
  return make_good_set(std::move(out));
}

namespace {

class Engine {
 public:
  Engine(const ResponderSet& responders, int goods, const ThresholdList& taus, const PriorityRanking& ranking,
         const RbfOptions& opts)
      : responders_(responders), m_(goods), taus_(taus), ranking_(ranking), opts_(opts) {
    const int n = static_cast<int>(responders.size());
    if (n < 1) throw InputError("RBF needs at least one agent");
    if (taus.size() != n || ranking.size() != n) {
      throw InputError("thresholds and ranking must have one entry per agent (" + std::to_string(n) + ")");
    }
    for (int r = 0; r < n; ++r) {
      if (taus.at_rank(r) <= 0) throw InputError("threshold at rank " + std::to_string(r) + " must be positive");
    }
    for (const auto& p : responders)
      if (!p) throw InputError("missing value responder");
    if (goods < 0) throw InputError("negative good count");
  }

  RbfResult run() {
    const int n = static_cast<int>(responders_.size());
    result_.allocation = Allocation::empty(n);
    result_.satisfied.assign(n, false);
    alive_.assign(n, true);
    remaining_ = n;
    goods_ = iota_set(m_);
    reductions();
    bag_fill();
    return std::move(result_);
  }

 private:
  bool likes(AgentId a, const GoodSet& s, const QueryContext& ctx) {
    return responders_[a]->value(a, s, ctx) >= taus_.at_rank(ranking_.rank_of(a));
  }

  void check_enough_goods(const std::string& where) {
    if (opts_.strict && static_cast<int>(goods_.size()) < 2 * remaining_) {
      throw InternalError("fewer than 2|N| goods " + where + ": |M| = " + std::to_string(goods_.size()) +
                          ", |N| = " + std::to_string(remaining_));
    }
  }

  void reductions() {
    const int n = static_cast<int>(responders_.size());
    while (remaining_ > 0 && !goods_.empty()) {
      const int k = remaining_;
      const std::vector<int> shapes[4] = {{1}, {k, k + 1}, {2 * k - 1, 2 * k, 2 * k + 1}, {1, 2 * k + 1}};
      int type = 0;
      AgentId winner = -1;
      GoodSet bundle;
      for (int t = 0; t < 4 && winner < 0; ++t) {
        bundle = ord_st(goods_, shapes[t]);
        if (bundle.empty()) continue;
        for (int r = 0; r < n && winner < 0; ++r) {
          const AgentId a = ranking_.agent_at(r);
          if (alive_[a] && likes(a, bundle, {QueryPhase::Reduction, t + 1, -1})) {
            winner = a;
            type = t + 1;
          }
        }
      }
      if (winner < 0) break;

      result_.transcript.reductions.push_back(
          {type, bundle, winner, remaining_, static_cast<int>(goods_.size())});
      result_.allocation.bundles[winner] = bundle;
      result_.satisfied[winner] = true;
      alive_[winner] = false;
      --remaining_;
      goods_ = set_difference(goods_, bundle);
      if (type != 1) check_enough_goods("after a type-" + std::to_string(type) + " reduction");
    }
  }

  void bag_fill() {
    const int n = static_cast<int>(responders_.size());
    Transcript& tr = result_.transcript;
    tr.final_goods = goods_;
    for (int r = 0; r < n; ++r)
      if (alive_[ranking_.agent_at(r)]) tr.final_agents.push_back(ranking_.agent_at(r));
    check_enough_goods("when bag filling starts");

    const int k = remaining_;
    const int size = static_cast<int>(goods_.size());
    std::vector<GoodSet> bags(k);
    for (int b = 0; b < k; ++b) {
      if (b < size) bags[b].push_back(goods_[b]);
      if (2 * k - 1 - b < size) bags[b].push_back(goods_[2 * k - 1 - b]);
      std::sort(bags[b].begin(), bags[b].end());
    }
    tr.initial_bags = bags;
    std::vector<GoodId> pool;
    for (int p = 2 * k; p < size; ++p) pool.push_back(goods_[p]);
    std::size_t next = 0;

    std::vector<AgentId> waiting = tr.final_agents;  // rank order
    std::vector<int> open(k);
    for (int b = 0; b < k; ++b) open[b] = b;

    while (!waiting.empty()) {
      if (waiting.size() != open.size()) throw InternalError("bag filling lost track of bags");
      AgentId taker = -1;
      int bag = -1;
      for (std::size_t w = 0; w < waiting.size() && taker < 0; ++w) {
        for (int b : open) {
          if (likes(waiting[w], bags[b], {QueryPhase::BagFill, 0, b})) {
            taker = waiting[w];
            bag = b;
            break;
          }
        }
      }
      if (taker >= 0) {
        give(taker, bag, bags[bag], true, BagEvent::Kind::Assign);
        waiting.erase(std::find(waiting.begin(), waiting.end(), taker));
        open.erase(std::find(open.begin(), open.end(), bag));
      } else if (next < pool.size()) {
        const GoodId g = pool[next++];
        int b = opts_.choose_bag ? opts_.choose_bag(open) : open.front();
        if (std::find(open.begin(), open.end(), b) == open.end()) {
          throw InputError("bag chooser picked bag " + std::to_string(b) + ", which is not open");
        }
        bags[b].push_back(g);
        tr.bag_events.push_back({BagEvent::Kind::Fill, b, g, -1});
      } else {
        tr.ran_out_of_goods = true;
        for (std::size_t w = 0; w < waiting.size(); ++w)
          give(waiting[w], open[w], bags[open[w]], false, BagEvent::Kind::Forced);
        waiting.clear();
      }
    }
    for (; next < pool.size(); ++next) result_.allocation.unallocated.push_back(pool[next]);
  }

  void give(AgentId a, int bag, const GoodSet& goods, bool liked, BagEvent::Kind kind) {
    result_.allocation.bundles[a] = make_good_set(goods);
    result_.satisfied[a] = liked;
    result_.transcript.bag_events.push_back({kind, bag, -1, a});
  }

  const ResponderSet& responders_;
  int m_;
  const ThresholdList& taus_;
  const PriorityRanking& ranking_;
  const RbfOptions& opts_;
  RbfResult result_;
  std::vector<bool> alive_;
  int remaining_ = 0;
  GoodSet goods_;
};

}  // namespace

RbfResult run_rbf(const ResponderSet& responders, int goods, const ThresholdList& taus,
                  const PriorityRanking& ranking, const RbfOptions& opts) {
  return Engine(responders, goods, taus, ranking, opts).run();
}

RbfResult run_rbf(const Instance& inst, const ThresholdList& taus, const PriorityRanking& ranking,
                  const RbfOptions& opts) {
  const int n = inst.agents();
  for (AgentId i = 0; i < n; ++i) {
    for (GoodId g = 1; g < inst.goods(); ++g) {
      if (inst.value(i, g) > inst.value(i, g - 1)) {
        throw InputError("instance is not ordered (agent " + std::to_string(i) + ", good " + std::to_string(g) + ")");
      }
    }
    if (inst.total_value(i) != n) {
      throw InputError("agent " + std::to_string(i) + " has total value " + to_string(inst.total_value(i)) +
                       ", expected " + std::to_string(n));
    }
    if (opts.check_normalized && mms(inst, i, n, opts.oracle).value != 1) {
      throw InputError("agent " + std::to_string(i) + " is not " + std::to_string(n) + "-normalized");
    }
  }
  return run_rbf(truthful_responders(inst), inst.goods(), taus, ranking, opts);
}

ThresholdList thresholds_thm46(int n) {
  if (n < 1) throw InputError("threshold list needs n >= 1");
  const Rational floor = make_rational(3, 4) + make_rational(1, 12L * n);
  std::vector<Rational> taus;
  for (int i = 1; i <= n; ++i) taus.push_back(std::max(make_rational(2L * n, 2L * n + i - 1), floor));
  return ThresholdList(std::move(taus));
}

RbfPipelineResult run_rbf_pipeline(const Instance& inst, const ThresholdList& taus, const PriorityRanking& ranking,
                                   const RbfOptions& opts, Execution exec) {
  const int n = inst.agents();
  RbfPipelineResult out;
  out.record = prepare(inst, n, {.pad_agents = false, .min_goods = 0, .oracle = opts.oracle, .exec = exec});
  if (out.record.all_dropped()) {
    out.allocation = Allocation::empty(n);
    out.allocation.unallocated = iota_set(inst.goods());
    return out;
  }
  RbfOptions inner = opts;
  inner.check_normalized = false;
  out.run = run_rbf(out.record.ordered, taus, ranking, inner);
  out.allocation = unpick(out.run.allocation, out.record);
  return out;
}

}  // namespace mmskit
