#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mmskit/adversarial.hpp"
#include "mmskit/bobw.hpp"
#include "mmskit/io.hpp"
#include "mmskit/oracle.hpp"
#include "mmskit/ordinal.hpp"
#include "mmskit/rbf.hpp"
#include "mmskit/verify.hpp"

using namespace mmskit;

namespace {

enum Exit { kOk = 0, kInput = 1, kBudget = 2, kViolation = 3 };

struct Common {
  std::string output;
  std::uint64_t node_budget = 0;  // 0: environment or built-in default
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return parse_json(read_text(path), path == "-" ? "<stdin>" : path); }

Instance read_instance(const std::string& path) { return json_as<Instance>(read_json(path), "instance file " + path); }

OracleOptions oracle_options(const Common& c) {
  OracleOptions o;
  if (c.node_budget > 0) {
    o.node_budget = c.node_budget;
  } else if (const char* env = std::getenv("MMSKIT_NODE_BUDGET")) {
    try {
      std::size_t used = 0;
      o.node_budget = std::stoull(env, &used);
      if (used != std::string(env).size() || o.node_budget == 0) throw std::invalid_argument(env);
    } catch (const std::logic_error&) {
      throw InputError(std::string("MMSKIT_NODE_BUDGET must be a positive integer, got '") + env + "'");
    }
  }
  return o;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

/// "thm46", a comma list of rationals, or a JSON array.
ThresholdList parse_thresholds(const std::string& text, int n) {
  if (text == "thm46") return thresholds_thm46(n);
  if (!text.empty() && text.front() == '[') return json_as<ThresholdList>(parse_json(text, "--thresholds"), "--thresholds");
  std::vector<Rational> v;
  for (const auto& item : split(text, ',')) v.push_back(parse_rational(item));
  ThresholdList t(std::move(v));
  if (t.size() != n) throw InputError("--thresholds needs " + std::to_string(n) + " entries");
  return t;
}

/// "identity", "rotate:k", or a comma list of ranks (agent order).
PriorityRanking parse_ranking(const std::string& text, int n) {
  if (text == "identity") return PriorityRanking::identity(n);
  if (text.rfind("rotate:", 0) == 0) return rotated_ranking(n, std::stoi(text.substr(7)));
  std::vector<int> ranks;
  for (const auto& item : split(text, ',')) {
    try {
      ranks.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw InputError("bad rank '" + item + "' in --ranking");
    }
  }
  if (static_cast<int>(ranks.size()) != n) throw InputError("--ranking needs " + std::to_string(n) + " entries");
  return PriorityRanking(std::move(ranks));
}

void emit(const Json& j, const Common& c) {
  const std::string text = j.dump(2) + "\n";
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw InputError("cannot write " + c.output);
  out << text;
}

int cmd_mms(const std::string& file, int d, int agent, const Common& c) {
  Instance inst = read_instance(file);
  if (d == 0) d = inst.agents();
  if (d < 1) throw InputError("--d must be positive");
  const auto opts = oracle_options(c);
  std::vector<MmsResult> results;
  std::vector<AgentId> agents;
  if (agent >= 0) {
    if (agent >= inst.agents()) throw InputError("--agent out of range");
    results.push_back(mms(inst, agent, d, opts));
    agents.push_back(agent);
  } else {
    results = mms_all_agents(inst, d, opts);
    for (AgentId a = 0; a < inst.agents(); ++a) agents.push_back(a);
  }
  Json out{{"d", d}, {"agents", Json::array()}};
  for (std::size_t k = 0; k < results.size(); ++k) {
    out["agents"].push_back({{"agent", agents[k]},
                             {"value", rational_to_json(results[k].value)},
                             {"partition", results[k].witness},
                             {"nodes", results[k].nodes}});
  }
  emit(out, c);
  return kOk;
}

int cmd_ordinal(const std::string& file, int d, const Common& c) {
  Instance inst = read_instance(file);
  if (inst.agents() < 1) throw InputError("instance has no agents");
  const int guaranteed = default_bundle_count(inst.agents());
  OneOutOfDOptions opts;
  opts.d = d;
  opts.strict = false;
  opts.oracle = oracle_options(c);
  auto r = run_1_out_of_d(inst, opts);
  auto report = check_1_out_of_d(inst, r.allocation, r.d, opts.oracle);
  Json out{{"d", r.d},
           {"guaranteed_d", guaranteed},
           {"allocation", r.allocation},
           {"run", r.run},
           {"check", report}};
  emit(out, c);
  const bool promised = r.d == guaranteed;
  return promised && (!report.all_ok() || r.run.terminated_early) ? kViolation : kOk;
}

int cmd_rbf(const std::string& file, const std::string& thresholds, const std::string& ranking_text,
            const Common& c) {
  Instance inst = read_instance(file);
  const int n = inst.agents();
  if (n < 1) throw InputError("instance has no agents");
  auto taus = parse_thresholds(thresholds, n);
  auto ranking = parse_ranking(ranking_text, n);
  RbfOptions opts;
  opts.oracle = oracle_options(c);
  opts.strict = false;
  auto r = run_rbf_pipeline(inst, taus, ranking, opts);
  auto check = check_t_mms(inst, r.allocation, ranking, taus, opts.oracle);
  auto structure = check_transcript(r.run.transcript);
  Json out{{"thresholds", taus},
           {"ranking", ranking},
           {"allocation", r.allocation},
           {"transcript", r.run.transcript},
           {"check", check},
           {"transcript_check", structure}};
  emit(out, c);
  const bool promised = thresholds == "thm46";
  return !structure.ok() || (promised && !check.all_ok()) ? kViolation : kOk;
}

int cmd_bobw(const std::string& file, const std::string& thresholds, std::optional<std::uint64_t> seed,
             const Common& c) {
  Instance inst = read_instance(file);
  const int n = inst.agents();
  if (n < 1) throw InputError("instance has no agents");
  auto taus = parse_thresholds(thresholds, n);
  RbfOptions opts;
  opts.oracle = oracle_options(c);
  opts.strict = false;
  auto dist = cyclic_rotation_pipeline(inst, taus, opts);
  const Rational mean = mean_threshold(taus);
  bool ex_ante_ok = true, ex_post_ok = true;
  for (AgentId a = 0; a < n; ++a) {
    ex_ante_ok = ex_ante_ok && dist.ex_ante[a] >= mean * dist.mms_values[a];
    ex_post_ok = ex_post_ok && dist.ex_post_min[a] >= taus.at_rank(n - 1) * dist.mms_values[a];
  }
  Json out{{"thresholds", taus},
           {"distribution", dist},
           {"summary",
            {{"mean_threshold", rational_to_json(mean)},
             {"ex_ante_ok", ex_ante_ok},
             {"ex_post_ok", ex_post_ok}}}};
  if (seed) {
    const int k = draw_shift(n, *seed);
    out["draw"] = {{"seed", *seed}, {"shift", k}, {"allocation", dist.support[k].allocation}};
  }
  emit(out, c);
  const bool promised = thresholds == "thm46";
  return promised && !(ex_ante_ok && ex_post_ok) ? kViolation : kOk;
}

int cmd_gen(const std::string& family, int n, int rank, int k1, int k2, int t, const std::string& thresholds,
            const Common& c) {
  HardInstanceSpec spec{parse_family(family), n, rank, k1, k2, t};
  Json out;
  switch (spec.family) {
    case HardFamily::OrdinalTight: {
      spec.validate();
      auto g = gen_ordinal_tight(n);
      out = g.instance;
      out["d"] = g.d;
      out["witness"] = g.witness;
      break;
    }
    case HardFamily::Hard1: {
      spec.validate();
      auto g = thresholds.empty() ? gen_hard1(n, rank) : gen_hard1(n, rank, parse_thresholds(thresholds, n).at_rank(n - 1));
      out = g.instance;
      out["alpha"] = rational_to_json(g.alpha);
      out["eps"] = rational_to_json(g.eps);
      out["witness"] = g.witness;
      break;
    }
    case HardFamily::Hard2: {
      if (spec.k1 == 0 && spec.k2 == 0) std::tie(spec.k1, spec.k2) = hard2_parameters(n, rank);
      spec.validate();
      auto g = gen_hard2_responders(n, rank, spec.k1, spec.k2, spec.t);
      out = g.target_valuation;  // the target agent only; the others are scripted
      out["target"] = g.target;
      out["alpha"] = rational_to_json(g.alpha);
      out["eps"] = rational_to_json(g.eps);
      out["witness"] = g.witness;
      break;
    }
  }
  out["spec"] = spec;
  emit(out, c);
  return kOk;
}

int cmd_verify(const std::string& file, const std::string& alloc_file, const std::string& mode, int d,
               const std::string& thresholds, const std::string& ranking_text, const Common& c) {
  Instance inst = read_instance(file);
  const Json doc = read_json(alloc_file);
  const Json& alloc_json = doc.contains("allocation") ? doc.at("allocation") : doc;
  auto alloc = json_as<Allocation>(alloc_json, "allocation file " + alloc_file);
  const auto oracle = oracle_options(c);
  Json out{{"mode", mode}};
  GuaranteeReport report;
  if (mode == "1ood") {
    if (d == 0 && doc.contains("d")) d = doc.at("d").get<int>();
    if (d < 1) throw InputError("--d is required for mode 1ood");
    report = check_1_out_of_d(inst, alloc, d, oracle);
    out["d"] = d;
  } else if (mode == "tmms") {
    const int n = inst.agents();
    ThresholdList taus = !thresholds.empty()       ? parse_thresholds(thresholds, n)
                         : doc.contains("thresholds") ? json_as<ThresholdList>(doc.at("thresholds"), "thresholds")
                                                      : throw InputError("--thresholds is required for mode tmms");
    PriorityRanking ranking = !ranking_text.empty()  ? parse_ranking(ranking_text, n)
                              : doc.contains("ranking") ? json_as<PriorityRanking>(doc.at("ranking"), "ranking")
                                                        : PriorityRanking::identity(n);
    report = check_t_mms(inst, alloc, ranking, taus, oracle);
    out["thresholds"] = taus;
    out["ranking"] = ranking;
  } else {
    throw InputError("--mode must be 1ood or tmms");
  }
  out["check"] = report;
  if (doc.contains("transcript")) {
    out["transcript_check"] = check_transcript(json_as<Transcript>(doc.at("transcript"), "transcript"));
  }
  emit(out, c);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximin share allocation toolkit"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", common.output, "Write JSON here instead of standard output");
    sub->add_option("--node-budget", common.node_budget, "Search node budget per MMS computation")
        ->check(CLI::PositiveNumber);
  };

  std::string file, alloc_file, thresholds = "thm46", ranking = "identity", mode, family;
  std::string verify_thresholds, verify_ranking, gen_thresholds;
  int d = 0, agent = -1, n = 0, rank = 0, k1 = 0, k2 = 0, t = 3;
  std::optional<std::uint64_t> seed;
  std::function<int()> run;

  auto* mms_cmd = app.add_subcommand("mms", "Maximin share values with witness partitions");
  mms_cmd->add_option("instance", file, "Instance file ('-' for standard input)")->required();
  mms_cmd->add_option("--d", d, "Number of bundles (default: number of agents)");
  mms_cmd->add_option("--agent", agent, "Only this agent");
  add_common(mms_cmd);
  mms_cmd->callback([&] { run = [&] { return cmd_mms(file, d, agent, common); }; });

  auto* ord_cmd = app.add_subcommand("ordinal", "1-out-of-d allocation by bag filling");
  ord_cmd->add_option("instance", file, "Instance file ('-' for standard input)")->required();
  ord_cmd->add_option("--d", d, "Number of bundles (default: 4*ceil(n/3))");
  add_common(ord_cmd);
  ord_cmd->callback([&] { run = [&] { return cmd_ordinal(file, d, common); }; });

  auto* rbf_cmd = app.add_subcommand("rbf", "Reductions and bag filling with per-rank thresholds");
  rbf_cmd->add_option("instance", file, "Instance file ('-' for standard input)")->required();
  rbf_cmd->add_option("--thresholds", thresholds, "'thm46' or comma-separated rationals");
  rbf_cmd->add_option("--ranking", ranking, "'identity', 'rotate:k' or comma-separated ranks");
  add_common(rbf_cmd);
  rbf_cmd->callback([&] { run = [&] { return cmd_rbf(file, thresholds, ranking, common); }; });

  auto* bobw_cmd = app.add_subcommand("bobw", "Distribution over the n cyclic rank rotations");
  bobw_cmd->add_option("instance", file, "Instance file ('-' for standard input)")->required();
  bobw_cmd->add_option("--thresholds", thresholds, "'thm46' or comma-separated rationals");
  bobw_cmd->add_option("--seed", seed, "Also draw one rotation with this seed");
  add_common(bobw_cmd);
  bobw_cmd->callback([&] { run = [&] { return cmd_bobw(file, thresholds, seed, common); }; });

  auto* gen_cmd = app.add_subcommand("gen", "Generate a hard instance");
  gen_cmd->add_option("family", family, "ordinalTight, hard1 or hard2")->required();
  gen_cmd->add_option("--n", n, "Number of agents")->required();
  gen_cmd->add_option("--rank", rank, "Target rank i (hard1, hard2)");
  gen_cmd->add_option("--k1", k1, "hard2 parameter (default from the rank)");
  gen_cmd->add_option("--k2", k2, "hard2 parameter");
  gen_cmd->add_option("--t", t, "hard2 eps-good multiplier");
  gen_cmd->add_option("--thresholds", gen_thresholds, "hard1: thresholds whose last entry sets eps");
  add_common(gen_cmd);
  gen_cmd->callback([&] { run = [&] { return cmd_gen(family, n, rank, k1, k2, t, gen_thresholds, common); }; });

  auto* verify_cmd = app.add_subcommand("verify", "Check an allocation against the oracle");
  verify_cmd->add_option("instance", file, "Instance file")->required();
  verify_cmd->add_option("allocation", alloc_file, "Allocation file or the output of another command")->required();
  verify_cmd->add_option("--mode", mode, "1ood or tmms")->required();
  verify_cmd->add_option("--d", d, "Bundle count for 1ood");
  verify_cmd->add_option("--thresholds", verify_thresholds, "Thresholds for tmms");
  verify_cmd->add_option("--ranking", verify_ranking, "Ranking for tmms");
  add_common(verify_cmd);
  verify_cmd->callback([&] {
    run = [&] { return cmd_verify(file, alloc_file, mode, d, verify_thresholds, verify_ranking, common); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    return run();
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const InternalError& e) {
    std::cerr << "guarantee violated: " << e.what() << "\n";
    return kViolation;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
