#include "mmskit/transform.hpp"

#include <algorithm>
#include <numeric>

namespace mmskit {

bool AgentDuplication::empty() const {
  return std::all_of(clones.begin(), clones.end(), [](const auto& c) { return c.empty(); });
}

AgentId AgentDuplication::origin_of(AgentId agent) const {
  if (agent < original_agents) return agent;
  for (std::size_t a = 0; a < clones.size(); ++a) {
    if (std::find(clones[a].begin(), clones[a].end(), agent) != clones[a].end()) return static_cast<AgentId>(a);
  }
  throw InputError("agent " + std::to_string(agent) + " is neither original nor a clone");
}

AgentPadding pad_agents_to_multiple_of_3(const Instance& inst) {
  const int n = inst.agents();
  const int target = 3 * ((n + 2) / 3);
  AgentPadding out{inst, {n, std::vector<std::vector<AgentId>>(n)}};
  if (target == n) return out;

  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(target) * inst.goods());
  for (AgentId a = 0; a < target; ++a) {
    auto row = inst.row(a < n ? a : 0);
    values.insert(values.end(), row.begin(), row.end());
    if (a >= n) out.duplication.clones[0].push_back(a);
  }
  out.instance = Instance(target, inst.goods(), std::move(values));
  return out;
}

GoodPadding pad_goods(const Instance& inst, int min_goods) {
  const int m = inst.goods();
  if (min_goods <= m) return {inst, {}};
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(inst.agents()) * min_goods);
  for (AgentId a = 0; a < inst.agents(); ++a) {
    auto row = inst.row(a);
    values.insert(values.end(), row.begin(), row.end());
    values.resize(values.size() + (min_goods - m), Rational(0));
  }
  return {Instance(inst.agents(), min_goods, std::move(values)), iota_set(min_goods - m, m)};
}

Normalization normalize(const Instance& inst, int d, const OracleOptions& opts, Execution exec) {
  const int n = inst.agents();
  const int m = inst.goods();
  auto results = mms_all_agents(inst, d, opts, exec);

  Normalization out;
  out.instance = Instance(n, m);
  out.partitions.resize(n);
  out.mms_values.resize(n);
  for (AgentId i = 0; i < n; ++i) {
    out.mms_values[i] = results[i].value;
    if (results[i].value == 0) {
      out.dropped.push_back(i);
      continue;
    }
    if (out.stand_in < 0) out.stand_in = i;
    out.partitions[i] = results[i].witness;
    for (const auto& part : results[i].witness.parts) {
      const Rational part_value = inst.bundle_value(i, part);
      for (GoodId g : part) out.instance.set_value(i, g, inst.value(i, g) / part_value);
    }
  }
  if (out.stand_in >= 0) {
    for (AgentId i : out.dropped) {
      out.partitions[i] = out.partitions[out.stand_in];
      for (GoodId g = 0; g < m; ++g) out.instance.set_value(i, g, out.instance.value(out.stand_in, g));
    }
  }
  return out;
}

Ordering order(const Instance& inst) {
  const int n = inst.agents();
  const int m = inst.goods();
  Ordering out{Instance(n, m), std::vector<std::vector<GoodId>>(n)};
  for (AgentId i = 0; i < n; ++i) {
    auto& perm = out.sorted[i];
    perm.resize(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](GoodId a, GoodId b) { return inst.value(i, a) > inst.value(i, b); });
    for (int p = 0; p < m; ++p) out.instance.set_value(i, p, inst.value(i, perm[p]));
  }
  return out;
}

PipelineRecord prepare(const Instance& inst, int d, const PipelineOptions& opts) {
  if (d < 1) throw InputError("bundle count d must be >= 1");
  PipelineRecord rec;
  rec.original = inst;
  rec.d = d;
  if (opts.pad_agents) {
    auto padded = pad_agents_to_multiple_of_3(inst);
    rec.duplicated = std::move(padded.instance);
    rec.duplication = std::move(padded.duplication);
  } else {
    rec.duplicated = inst;
    rec.duplication = {inst.agents(), std::vector<std::vector<AgentId>>(inst.agents())};
  }

  auto norm = normalize(rec.duplicated, d, opts.oracle, opts.exec);
  rec.normalized = std::move(norm.instance);
  rec.mms_partitions = std::move(norm.partitions);
  rec.mms_values = std::move(norm.mms_values);
  rec.dropped = std::move(norm.dropped);

  auto ord = order(rec.normalized);
  rec.sorted = std::move(ord.sorted);
  auto goods = pad_goods(ord.instance, opts.min_goods);
  rec.ordered = std::move(goods.instance);
  rec.dummies = std::move(goods.dummies);
  return rec;
}

Allocation unpick(const Allocation& ordered_alloc, const PipelineRecord& record) {
  const int n = record.ordered.agents();
  const int m = record.normalized.goods();
  if (static_cast<int>(ordered_alloc.bundles.size()) != n) {
    throw InputError("allocation has " + std::to_string(ordered_alloc.bundles.size()) + " bundles, expected " +
                     std::to_string(n));
  }
  ordered_alloc.validate(record.ordered.goods());

  std::vector<AgentId> owner(m, -1);
  for (AgentId i = 0; i < n; ++i)
    for (GoodId p : ordered_alloc.bundles[i])
      if (p < m) owner[p] = i;

  const Instance& v = record.normalized;
  std::vector<char> taken(m, 0);
  Allocation out = Allocation::empty(n);
  for (int p = 0; p < m; ++p) {
    const AgentId i = owner[p];
    if (i < 0) continue;
    GoodId best = -1;
    for (GoodId g = 0; g < m; ++g) {
      if (taken[g]) continue;
      if (best < 0 || v.value(i, g) > v.value(i, best)) best = g;
    }
    taken[best] = 1;
    out.bundles[i].push_back(best);
  }
  for (GoodId g = 0; g < m; ++g)
    if (!taken[g]) out.unallocated.push_back(g);
  for (auto& b : out.bundles) std::sort(b.begin(), b.end());

  for (AgentId i = 0; i < n; ++i) {
    const Rational got = v.bundle_value(i, out.bundles[i]);
    const Rational had = record.ordered.bundle_value(i, ordered_alloc.bundles[i]);
    if (got < had) {
      throw InternalError("picking left agent " + std::to_string(i) + " with " + to_string(got) + " < " +
                          to_string(had));
    }
  }
  return out;
}

Allocation reinstate(const Allocation& alloc, const PipelineRecord& record) {
  const int n = record.original.agents();
  const int m = record.original.goods();
  if (static_cast<int>(alloc.bundles.size()) != record.duplicated.agents()) {
    throw InputError("allocation does not match the duplicated agent count");
  }
  auto real = [m](const GoodSet& s) {
    GoodSet r;
    for (GoodId g : s)
      if (g < m) r.push_back(g);
    return r;
  };

  Allocation out = Allocation::empty(n);
  GoodSet spare = real(alloc.unallocated);
  for (AgentId i = 0; i < static_cast<AgentId>(alloc.bundles.size()); ++i) {
    GoodSet b = real(alloc.bundles[i]);
    const bool dropped = std::find(record.dropped.begin(), record.dropped.end(), i) != record.dropped.end();
    if (i < n && !dropped) {
      out.bundles[i] = std::move(b);
    } else {
      spare = set_union(spare, b);
    }
  }
  out.unallocated = std::move(spare);
  return out;
}

Allocation complete_by_picking(const Instance& inst, Allocation alloc) {
  const int n = inst.agents();
  if (static_cast<int>(alloc.bundles.size()) != n) throw InputError("allocation does not match the agent count");
  GoodSet pool = std::move(alloc.unallocated);
  alloc.unallocated.clear();
  for (AgentId i = 0; !pool.empty(); i = (i + 1) % n) {
    auto best = pool.begin();
    for (auto it = pool.begin(); it != pool.end(); ++it)
      if (inst.value(i, *it) > inst.value(i, *best)) best = it;
    alloc.bundles[i] = set_union(alloc.bundles[i], GoodSet{*best});
    pool.erase(best);
  }
  return alloc;
}

}  // namespace mmskit
