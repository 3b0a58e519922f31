#include "mmskit/io.hpp"

namespace mmskit {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  require(it != j.end(), std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_number_integer(), std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

GoodSet good_set(const Json& j) {
  require(j.is_array(), "expected an array of good indices");
  std::vector<GoodId> goods;
  for (const auto& g : j) {
    require(g.is_number_integer(), "good indices must be integers");
    goods.push_back(g.get<int>());
  }
  return make_good_set(std::move(goods));
}

std::vector<GoodSet> good_sets(const Json& j) {
  require(j.is_array(), "expected an array of bundles");
  std::vector<GoodSet> out;
  for (const auto& s : j) out.push_back(good_set(s));
  return out;
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(rational_to_json(q));
  return a;
}

const char* kind_name(BagEvent::Kind k) {
  switch (k) {
    case BagEvent::Kind::Fill: return "fill";
    case BagEvent::Kind::Assign: return "assign";
    case BagEvent::Kind::Forced: return "forced";
  }
  return "?";
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
  require(j.is_string(), "rational must be a \"p/q\" string or an integer, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

Json rational_to_json(const Rational& q) { return to_string(q); }

void to_json(Json& j, const Instance& inst) {
  Json rows = Json::array();
  for (AgentId a = 0; a < inst.agents(); ++a) {
    Json row = Json::array();
    for (const auto& v : inst.row(a)) row.push_back(rational_to_json(v));
    rows.push_back(std::move(row));
  }
  j = Json{{"agents", inst.agents()}, {"goods", inst.goods()}, {"valuations", std::move(rows)}};
}

void from_json(const Json& j, Instance& inst) {
  const int n = int_field(j, "agents");
  const int m = int_field(j, "goods");
  require(n >= 0 && m >= 0, "agents and goods must be non-negative");
  const Json& rows = field(j, "valuations");
  require(rows.is_array() && static_cast<int>(rows.size()) == n,
          "\"valuations\" must hold one row per agent (" + std::to_string(n) + ")");
  std::vector<Rational> values;
  for (int a = 0; a < n; ++a) {
    require(rows[a].is_array() && static_cast<int>(rows[a].size()) == m,
            "row " + std::to_string(a) + " must hold " + std::to_string(m) + " values");
    for (const auto& v : rows[a]) values.push_back(rational_from_json(v));
  }
  inst = Instance(n, m, std::move(values));
}

void to_json(Json& j, const Allocation& a) { j = Json{{"bundles", a.bundles}, {"unallocated", a.unallocated}}; }

void from_json(const Json& j, Allocation& a) {
  a.bundles = good_sets(field(j, "bundles"));
  a.unallocated = j.contains("unallocated") ? good_set(j.at("unallocated")) : GoodSet{};
}

void to_json(Json& j, const Partition& p) { j = p.parts; }
void from_json(const Json& j, Partition& p) { p.parts = good_sets(j); }

void to_json(Json& j, const ThresholdList& t) { j = rationals(t.values()); }

void from_json(const Json& j, ThresholdList& t) {
  require(j.is_array(), "thresholds must be an array");
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  t = ThresholdList(std::move(v));
}

void to_json(Json& j, const PriorityRanking& r) { j = r.ranks(); }

void from_json(const Json& j, PriorityRanking& r) {
  require(j.is_array(), "ranking must be an array of ranks, one per agent");
  std::vector<int> ranks;
  for (const auto& x : j) {
    require(x.is_number_integer(), "ranks must be integers");
    ranks.push_back(x.get<int>());
  }
  r = PriorityRanking(std::move(ranks));
}

void to_json(Json& j, const Transcript& t) {
  Json reds = Json::array();
  for (const auto& e : t.reductions) {
    reds.push_back({{"type", e.type}, {"bundle", e.bundle}, {"agent", e.agent},
                    {"agents_before", e.agents_before}, {"goods_before", e.goods_before}});
  }
  Json bags = Json::array();
  for (const auto& e : t.bag_events) {
    Json ev{{"kind", kind_name(e.kind)}, {"bag", e.bag}};
    if (e.good >= 0) ev["good"] = e.good;
    if (e.agent >= 0) ev["agent"] = e.agent;
    bags.push_back(std::move(ev));
  }
  j = Json{{"reductions", std::move(reds)},  {"final_goods", t.final_goods},
           {"final_agents", t.final_agents}, {"initial_bags", t.initial_bags},
           {"bag_events", std::move(bags)},  {"ran_out_of_goods", t.ran_out_of_goods}};
}

void from_json(const Json& j, Transcript& t) {
  t = Transcript{};
  for (const auto& e : field(j, "reductions")) {
    t.reductions.push_back({int_field(e, "type"), good_set(field(e, "bundle")), int_field(e, "agent"),
                            int_field(e, "agents_before"), int_field(e, "goods_before")});
  }
  t.final_goods = good_set(field(j, "final_goods"));
  for (const auto& a : field(j, "final_agents")) t.final_agents.push_back(a.get<int>());
  t.initial_bags = good_sets(field(j, "initial_bags"));
  for (const auto& e : field(j, "bag_events")) {
    const std::string kind = field(e, "kind").get<std::string>();
    BagEvent ev;
    if (kind == "fill") ev.kind = BagEvent::Kind::Fill;
    else if (kind == "assign") ev.kind = BagEvent::Kind::Assign;
    else if (kind == "forced") ev.kind = BagEvent::Kind::Forced;
    else throw InputError("unknown bag event kind '" + kind + "'");
    ev.bag = int_field(e, "bag");
    ev.good = e.contains("good") ? int_field(e, "good") : -1;
    ev.agent = e.contains("agent") ? int_field(e, "agent") : -1;
    t.bag_events.push_back(ev);
  }
  t.ran_out_of_goods = field(j, "ran_out_of_goods").get<bool>();
}

void to_json(Json& j, const HardInstanceSpec& s) {
  j = Json{{"family", to_string(s.family)}, {"n", s.n}};
  if (s.family != HardFamily::OrdinalTight) j["rank"] = s.rank;
  if (s.family == HardFamily::Hard2) {
    j["k1"] = s.k1;
    j["k2"] = s.k2;
    j["t"] = s.t;
  }
}

void from_json(const Json& j, HardInstanceSpec& s) {
  s = HardInstanceSpec{};
  s.family = parse_family(field(j, "family").get<std::string>());
  s.n = int_field(j, "n");
  if (j.contains("rank")) s.rank = int_field(j, "rank");
  if (j.contains("k1")) s.k1 = int_field(j, "k1");
  if (j.contains("k2")) s.k2 = int_field(j, "k2");
  if (j.contains("t")) s.t = int_field(j, "t");
}

void to_json(Json& j, const GuaranteeReport& r) {
  Json agents = Json::array();
  for (std::size_t a = 0; a < r.agents.size(); ++a) {
    const auto& c = r.agents[a];
    agents.push_back({{"agent", a}, {"value", rational_to_json(c.value)}, {"target", rational_to_json(c.target)},
                      {"ok", c.ok}});
  }
  j = Json{{"ok", r.all_ok()}, {"agents", std::move(agents)}};
}

void to_json(Json& j, const TranscriptReport& r) { j = Json{{"ok", r.ok()}, {"violations", r.violations}}; }

void to_json(Json& j, const OrdinalRun& r) {
  Json fills = Json::array();
  for (const auto& f : r.fill_order) fills.push_back({{"bag", f.bag}, {"good", f.good}});
  j = Json{{"initial_bags", r.initial_bags}, {"final_bags", r.final_bags},     {"owner", r.owner},
           {"fill_order", std::move(fills)}, {"leftover", r.leftover}, {"terminated_early", r.terminated_early}};
}

void to_json(Json& j, const AllocationDistribution& d) {
  Json support = Json::array();
  for (const auto& o : d.support) {
    support.push_back({{"shift", o.shift},
                       {"probability", rational_to_json(d.probability)},
                       {"ranking", o.ranking},
                       {"allocation", o.allocation},
                       {"values", rationals(o.values)}});
  }
  j = Json{{"support", std::move(support)},
           {"perAgentExAnte", rationals(d.ex_ante)},
           {"perAgentExPostMin", rationals(d.ex_post_min)},
           {"mms", rationals(d.mms_values)}};
}

void to_json(Json& j, const FailureReport& r) {
  j = Json{{"spec", r.spec},
           {"agent", r.agent},
           {"value", rational_to_json(r.value)},
           {"target", rational_to_json(r.target)},
           {"allocation", r.allocation},
           {"summary", r.summary}};
  if (r.rank >= 0) j["rank"] = r.rank;
  if (r.spec.family != HardFamily::OrdinalTight) j["transcript"] = r.transcript;
  if (r.spec.family == HardFamily::Hard2) j["best_available"] = rational_to_json(r.best_available);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

}  // namespace mmskit
