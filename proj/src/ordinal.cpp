#include "mmskit/ordinal.hpp"

#include <algorithm>

namespace mmskit {

int default_bundle_count(int agents) { return 4 * ((agents + 2) / 3); }

namespace {

void validate_ordinal_input(const Instance& inst, int d, const OrdinalOptions& opts) {
  const int n = inst.agents();
  const int m = inst.goods();
  if (m < 2 * n) throw InputError("bag filling needs at least 2n = " + std::to_string(2 * n) + " goods, got " +
                                  std::to_string(m));
  for (AgentId i = 0; i < n; ++i) {
    for (GoodId g = 1; g < m; ++g) {
      if (inst.value(i, g) > inst.value(i, g - 1)) {
        throw InputError("instance is not ordered: agent " + std::to_string(i) + " values good " + std::to_string(g) +
                         " above good " + std::to_string(g - 1));
      }
    }
    if (inst.total_value(i) != d) {
      throw InputError("agent " + std::to_string(i) + " has total value " + to_string(inst.total_value(i)) +
                       ", expected " + std::to_string(d));
    }
    if (opts.check_normalized && mms(inst, i, d, opts.oracle).value != 1) {
      throw InputError("agent " + std::to_string(i) + " has no " + std::to_string(d) + "-partition into parts worth 1");
    }
  }
}

}  // namespace

std::pair<Allocation, OrdinalRun> run_ordinal(const Instance& inst, const OrdinalOptions& opts) {
  const int n = inst.agents();
  const int m = inst.goods();
  const int d = opts.d > 0 ? opts.d : default_bundle_count(n);
  validate_ordinal_input(inst, d, opts);

  OrdinalRun run;
  for (int k = 0; k < n; ++k) run.initial_bags.push_back({k, 2 * n - 1 - k});
  run.final_bags = run.initial_bags;
  run.owner.assign(n, -1);

  std::vector<char> assigned(n, 0);
  std::vector<Rational> bag_value(n);
  GoodId next = 2 * n;
  for (int k = 0; k < n && !run.terminated_early; ++k) {
    GoodSet& bag = run.final_bags[k];
    for (AgentId i = 0; i < n; ++i) bag_value[i] = inst.bundle_value(i, bag);
    for (;;) {
      AgentId taker = -1;
      for (AgentId i = 0; i < n && taker < 0; ++i)
        if (!assigned[i] && bag_value[i] >= 1) taker = i;
      if (taker >= 0) {
        run.owner[k] = taker;
        assigned[taker] = 1;
        break;
      }
      if (next >= m) {
        run.terminated_early = true;
        break;
      }
      bag.push_back(next);
      run.fill_order.push_back({k, next});
      for (AgentId i = 0; i < n; ++i) bag_value[i] += inst.value(i, next);
      ++next;
    }
  }

  const auto unclaimed = std::count(run.owner.begin(), run.owner.end(), -1);
  if (run.terminated_early) {
    AgentId a = 0;
    for (int k = 0; k < n; ++k) {
      if (run.owner[k] >= 0) continue;
      while (assigned[a]) ++a;
      run.owner[k] = a;
      assigned[a] = 1;
    }
  }
  run.leftover = iota_set(m - next, next);
  run.final_bags[n - 1] = set_union(run.final_bags[n - 1], run.leftover);

  Allocation alloc = Allocation::empty(n);
  for (int k = 0; k < n; ++k) alloc.bundles[run.owner[k]] = make_good_set(run.final_bags[k]);

  if (run.terminated_early && opts.strict) {
    throw InternalError("bag filling ran out of goods with " +
                        std::to_string(unclaimed) +
                        " bags unclaimed on a supposedly valid input");
  }
  return {std::move(alloc), std::move(run)};
}

OneOutOfDResult run_1_out_of_d(const Instance& inst, const OracleOptions& oracle, Execution exec) {
  OneOutOfDOptions opts;
  opts.oracle = oracle;
  opts.exec = exec;
  return run_1_out_of_d(inst, opts);
}

OneOutOfDResult run_1_out_of_d(const Instance& inst, const OneOutOfDOptions& opts) {
  const int n = inst.agents();
  if (n < 1) throw InputError("instance has no agents");
  const int d = opts.d == 0 ? default_bundle_count(n) : opts.d;
  if (d < 1) throw InputError("bundle count must be positive");
  const bool pad = d == default_bundle_count(n);
  const int padded_agents = pad ? 3 * ((n + 2) / 3) : n;

  OneOutOfDResult out;
  out.d = d;
  out.record = prepare(inst, d,
                       {.pad_agents = pad, .min_goods = 2 * padded_agents, .oracle = opts.oracle, .exec = opts.exec});
  const PipelineRecord& rec = out.record;
  out.mms_values.assign(rec.mms_values.begin(), rec.mms_values.begin() + n);

  Allocation dup;
  if (rec.all_dropped()) {
    dup = Allocation::empty(rec.duplicated.agents());
    dup.unallocated = iota_set(inst.goods());
  } else {
    auto [ordered_alloc, run] =
        run_ordinal(rec.ordered, {.d = d, .strict = opts.strict, .check_normalized = false, .oracle = opts.oracle});
    out.run = std::move(run);
    dup = unpick(ordered_alloc, rec);
  }
  out.allocation = complete_by_picking(inst, reinstate(dup, rec));

  if (!opts.strict) return out;
  for (AgentId i = 0; i < n; ++i) {
    const Rational got = inst.bundle_value(i, out.allocation.bundles[i]);
    if (got < out.mms_values[i]) {
      throw InternalError("agent " + std::to_string(i) + " received " + to_string(got) + " < MMS^" +
                          std::to_string(d) + " = " + to_string(out.mms_values[i]));
    }
  }
  return out;
}

}  // namespace mmskit
