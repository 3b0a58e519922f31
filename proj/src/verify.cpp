#include "mmskit/verify.hpp"

#include <algorithm>

namespace mmskit {

bool GuaranteeReport::all_ok() const {
  return std::all_of(agents.begin(), agents.end(), [](const AgentCheck& a) { return a.ok; });
}

GuaranteeReport check_1_out_of_d(const Instance& inst, const Allocation& alloc, int d, const OracleOptions& opts,
                                 Execution exec) {
  if (static_cast<int>(alloc.bundles.size()) != inst.agents()) throw InputError("allocation does not match agent count");
  alloc.validate(inst.goods());
  auto mms_values = mms_all_agents(inst, d, opts, exec);
  GuaranteeReport report;
  for (AgentId i = 0; i < inst.agents(); ++i) {
    AgentCheck c{inst.bundle_value(i, alloc.bundles[i]), mms_values[i].value};
    c.ok = c.value >= c.target;
    report.agents.push_back(std::move(c));
  }
  return report;
}

GuaranteeReport check_t_mms(const Instance& inst, const Allocation& alloc, const PriorityRanking& ranking,
                            const ThresholdList& taus, const OracleOptions& opts, Execution exec) {
  const int n = inst.agents();
  if (static_cast<int>(alloc.bundles.size()) != n || ranking.size() != n || taus.size() != n) {
    throw InputError("dimension mismatch: instance has " + std::to_string(n) + " agents");
  }
  alloc.validate(inst.goods());
  auto mms_values = mms_all_agents(inst, n, opts, exec);
  GuaranteeReport report;
  for (AgentId i = 0; i < n; ++i) {
    AgentCheck c{inst.bundle_value(i, alloc.bundles[i]), taus.at_rank(ranking.rank_of(i)) * mms_values[i].value};
    c.ok = c.value >= c.target;
    report.agents.push_back(std::move(c));
  }
  return report;
}

bool reduction_order_ok(const std::vector<int>& types) {
  // 0: inside 1*, 1: inside 2* (also right after a 3), 2: inside 4*
  int state = 0;
  for (int t : types) {
    switch (t) {
      case 1:
        if (state != 0) return false;
        break;
      case 2:
        if (state == 2) return false;
        state = 1;
        break;
      case 3:
        state = 1;
        break;
      case 4:
        state = 2;
        break;
      default:
        return false;
    }
  }
  return true;
}

TranscriptReport check_transcript(const Transcript& tr) {
  TranscriptReport report;
  std::vector<int> types;
  for (const auto& e : tr.reductions) types.push_back(e.type);
  if (!reduction_order_ok(types)) {
    std::string seq;
    for (int t : types) seq += std::to_string(t);
    report.violations.push_back("reduction types " + seq + " not in 1*2*4*(32*4*)*");
  }

  bool past_singles = false;
  for (std::size_t e = 0; e < tr.reductions.size(); ++e) {
    const auto& r = tr.reductions[e];
    past_singles = past_singles || r.type != 1;
    if (!past_singles) continue;
    const int goods_after = r.goods_before - static_cast<int>(r.bundle.size());
    if (goods_after < 2 * (r.agents_before - 1)) {
      report.violations.push_back("after reduction " + std::to_string(e) + " only " + std::to_string(goods_after) +
                                  " goods remain for " + std::to_string(r.agents_before - 1) + " agents");
    }
  }
  const int nf = static_cast<int>(tr.final_agents.size());
  const int mf = static_cast<int>(tr.final_goods.size());
  if (mf < 2 * nf) {
    report.violations.push_back("bag filling starts with " + std::to_string(mf) + " goods for " + std::to_string(nf) +
                                " agents");
  }

  if (nf > 0) {
    auto check = [&](int type, int position) {
      if (position > mf) return;
      const GoodId bar = tr.final_goods[position - 1];
      for (const auto& r : tr.reductions) {
        if (r.type != type) continue;
        for (GoodId g : r.bundle) {
          if (g <= bar) {
            report.violations.push_back("type-" + std::to_string(type) + " reduction took good " + std::to_string(g) +
                                        ", not beyond the " + std::to_string(position) +
                                        "-th smallest surviving good " + std::to_string(bar));
          }
        }
      }
    };
    check(2, nf);
    check(3, 2 * nf);
  }
  return report;
}

Expansion equivalence_expand(const Instance& inst, int d) {
  const int n = inst.agents();
  if (d < n) throw InputError("expansion needs d >= n");
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(d) * inst.goods());
  for (AgentId i = 0; i < n; ++i) {
    auto row = inst.row(i);
    values.insert(values.end(), row.begin(), row.end());
  }
  values.resize(static_cast<std::size_t>(d) * inst.goods(), Rational(0));
  std::vector<Rational> taus(d, Rational(0));
  std::fill(taus.begin(), taus.begin() + n, Rational(1));
  return {Instance(d, inst.goods(), std::move(values)), ThresholdList(std::move(taus))};
}

}  // namespace mmskit
