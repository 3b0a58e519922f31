#include "mmskit/adversarial.hpp"

#include <algorithm>
#include <memory>

#include "mmskit/ordinal.hpp"

namespace mmskit {

namespace {

Rational q(long p, long r = 1) { return make_rational(p, r); }

long ceil_half(long j) { return (j + 1) / 2; }

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

Rational hard2_alpha(int n, int k1, int k2) { return 1 - q(k1, 3L * (n - k2)); }
Rational hard2_eps(int n, int k2, int t) { return q(1, 3L * t * (n - k2)); }

/// Truthful answers from a single valuation row.
class RowResponder : public ValueResponder {
 public:
  explicit RowResponder(Instance row) : row_(std::move(row)) {}
  Rational value(AgentId, const GoodSet& goods, const QueryContext&) override { return row_.bundle_value(0, goods); }

 private:
  Instance row_;
};

class ScriptedResponder : public ValueResponder {
 public:
  ScriptedResponder(int n, int k1, int k2, int t) : n_(n), rich_(k1 + k2), patience_((n - k1 - k2) * t + 2) {}

  Rational value(AgentId agent, const GoodSet& goods, const QueryContext& ctx) override {
    if (ctx.phase == QueryPhase::Reduction) return 0;
    const bool rich = !goods.empty() && goods.front() < rich_;
    if (agent < rich_) return rich ? 1 : 0;
    if (rich) return 0;
    const auto eps_goods = std::count_if(goods.begin(), goods.end(), [&](GoodId g) { return g >= 2 * n_; });
    return eps_goods > patience_ ? 1 : 0;
  }

 private:
  int n_, rich_, patience_;
};

}  // namespace

std::string to_string(HardFamily family) {
  switch (family) {
    case HardFamily::OrdinalTight: return "ordinalTight";
    case HardFamily::Hard1: return "hard1";
    case HardFamily::Hard2: return "hard2";
  }
  throw InputError("unknown family");
}

HardFamily parse_family(std::string_view name) {
  for (auto f : {HardFamily::OrdinalTight, HardFamily::Hard1, HardFamily::Hard2})
    if (name == to_string(f)) return f;
  throw InputError("unknown family '" + std::string(name) + "' (expected ordinalTight, hard1 or hard2)");
}

void HardInstanceSpec::validate() const {
  switch (family) {
    case HardFamily::OrdinalTight:
      require(n >= 2, "ordinalTight needs n >= 2");
      return;
    case HardFamily::Hard1:
      require(n >= 3, "hard1 needs n >= 3");
      require(rank >= 3 && rank <= n, "hard1 needs 3 <= i <= n");
      return;
    case HardFamily::Hard2:
      require(n >= 2, "hard2 needs n >= 2");
      require(rank >= 2 && rank <= n, "hard2 needs 2 <= i <= n");
      require(k1 >= 1 && k2 >= 0, "hard2 needs k1 >= 1 and k2 >= 0");
      require(k1 + k2 < rank, "hard2 needs k1 + k2 < i");
      require(2 * k1 + k2 <= n, "hard2 needs 2 k1 + k2 <= n");
      require(t >= 3, "hard2 needs t >= 3");
      return;
  }
}

TightInstance gen_ordinal_tight(int n) {
  HardInstanceSpec{HardFamily::OrdinalTight, n}.validate();
  TightInstance out;
  out.d = (4 * n - 2) / 3;
  const int m = 2 * n + 1 + 3 * (out.d - n);
  std::vector<Rational> row(m);
  for (int j = 1; j <= m; ++j) row[j - 1] = j <= 2 * n ? q(2, 3) - q(ceil_half(j), 3L * n) : q(1, 3);
  out.instance = Instance::from_rows(std::vector<std::vector<Rational>>(n, row));
  // 1-based: {i, 2n-1-i} for i < n, then triples of 1/3 goods
  for (int i = 1; i <= out.d; ++i) {
    GoodSet part = i < n ? GoodSet{i, 2 * n - 1 - i}
                         : GoodSet{i + n - 1, 2 * out.d + n - i, 2 * out.d - n + i + 1};
    for (auto& g : part) --g;
    out.witness.parts.push_back(make_good_set(std::move(part)));
  }
  return out;
}

Rational hard1_alpha(int n, int rank) {
  HardInstanceSpec{HardFamily::Hard1, n, rank}.validate();
  return q(3L * n, 3L * n + rank - 2);
}

Hard1Instance gen_hard1(int n, int rank, const Rational& tau_last) {
  Hard1Instance out;
  out.alpha = hard1_alpha(n, rank);
  require(tau_last > 0, "hard1 needs a positive last threshold");
  // 1/(floor(3/tau)+1) < tau/3
  const mpz_class fl = (3 * tau_last.get_den()) / tau_last.get_num();
  require(fl.fits_slong_p() && fl < 1000000, "last threshold too small for hard1");
  const long qinv = fl.get_si() + 1;
  out.eps = q(1, qinv);
  const int m = static_cast<int>(std::max<long>(2L * n + rank - 1, n * qinv));
  const Rational delta = q(1, 3L * n + rank - 2);
  Instance inst(n, m);
  for (AgentId a = 0; a < n; ++a) {
    for (int j = 1; j <= m; ++j) {
      Rational v;
      if (a < rank) {
        if (j <= 2 * n) v = (2 * n - ceil_half(j)) * delta;
        else if (j < 2 * n + rank) v = n * delta;
      } else if (j <= n * qinv) {
        v = out.eps;
      }
      inst.set_value(a, j - 1, v);
    }
  }
  out.instance = std::move(inst);
  // 1-based, k = n-i+1: {j, 2k+1-j} for j <= k, else {k+j, 2n+k+1-j, 2n+j-k};
  // the zero goods join the last part
  const int k = n - rank + 1;
  for (int j = 1; j <= n; ++j) {
    GoodSet part = j <= k ? GoodSet{j, 2 * k + 1 - j} : GoodSet{k + j, 2 * n + k + 1 - j, 2 * n + j - k};
    for (auto& g : part) --g;
    if (j == n)
      for (GoodId g = 2 * n + rank - 1; g < m; ++g) part.push_back(g);
    out.witness.parts.push_back(make_good_set(std::move(part)));
  }
  return out;
}

Hard1Instance gen_hard1(int n, int rank) {
  HardInstanceSpec{HardFamily::Hard1, n, rank}.validate();
  return gen_hard1(n, rank, thresholds_thm46(n).at_rank(n - 1));
}

std::pair<int, int> hard2_parameters(int n, int rank) {
  require(n >= 2 && rank >= 2 && rank <= n, "hard2 needs n >= 2 and 2 <= i <= n");
  if (2 * rank <= n + 2) return {rank - 1, 0};
  return {n / 2, n - 2 * (n / 2)};
}

Hard2Setup gen_hard2_responders(int n, int rank, int k1, int k2, int t) {
  HardInstanceSpec{HardFamily::Hard2, n, rank, k1, k2, t}.validate();
  Hard2Setup out;
  out.n = n;
  out.target = rank - 1;
  out.alpha = hard2_alpha(n, k1, k2);
  out.eps = hard2_eps(n, k2, t);
  const int rich = k1 + k2;
  const int thirds_end = 2 * n - k2;
  const int eps_goods = (n - k1 - k2) * (n - k1 - k2) * t;
  out.goods = 2 * n + eps_goods;

  Instance row(1, out.goods);
  for (GoodId g = 0; g < out.goods; ++g) {
    if (g < rich) row.set_value(0, g, out.alpha);
    else if (g < thirds_end) row.set_value(0, g, q(1, 3));
    else if (g < 2 * n) row.set_value(0, g, 1 - out.alpha);
    else row.set_value(0, g, out.eps);
  }
  out.target_valuation = row;

  GoodId next_third = rich, next_eps = 2 * n;
  auto take_eps = [&](GoodSet& part, long count) {
    for (long c = 0; c < count; ++c) part.push_back(next_eps++);
  };
  for (int j = 0; j < k1; ++j) {
    GoodSet part{j};
    take_eps(part, static_cast<long>(k1) * t);
    out.witness.parts.push_back(part);
  }
  for (int j = 0; j < k2; ++j) out.witness.parts.push_back({k1 + j, thirds_end + j});
  for (int j = 0; j < k1; ++j) {
    out.witness.parts.push_back({next_third, next_third + 1, next_third + 2});
    next_third += 3;
  }
  for (int j = 0; j < n - 2 * k1 - k2; ++j) {
    GoodSet part{next_third, next_third + 1};
    next_third += 2;
    take_eps(part, static_cast<long>(t) * (n - k2));
    out.witness.parts.push_back(part);
  }
  if (next_third != thirds_end || next_eps != out.goods) throw InternalError("hard2 partition does not cover the goods");

  auto scripted = std::make_shared<ScriptedResponder>(n, k1, k2, t);
  out.responders.assign(n, scripted);
  out.responders[out.target] = std::make_shared<RowResponder>(row);
  auto turn = std::make_shared<std::size_t>(0);
  out.choose_bag = [turn](std::span<const int> open) { return open[(*turn)++ % open.size()]; };
  return out;
}

Rational family_bound(const HardInstanceSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case HardFamily::OrdinalTight: return 1;
    case HardFamily::Hard1: return hard1_alpha(spec.n, spec.rank);
    case HardFamily::Hard2: return hard2_alpha(spec.n, spec.k1, spec.k2);
  }
  throw InputError("unknown family");
}

RbfResult run_hard1(int n, int rank, const ThresholdList& taus) {
  require(taus.size() == n, "threshold list length differs from n");
  auto h = gen_hard1(n, rank, taus.at_rank(n - 1));
  RbfOptions opts;
  opts.check_normalized = false;
  return run_rbf(h.instance, taus, PriorityRanking::identity(n), opts);
}

namespace {

FailureReport tight_failure(const HardInstanceSpec& spec) {
  auto tight = gen_ordinal_tight(spec.n);
  OrdinalOptions opts;
  opts.d = tight.d;
  opts.strict = false;
  opts.check_normalized = false;
  auto alloc = run_ordinal(tight.instance, opts).first;
  FailureReport rep;
  rep.spec = spec;
  rep.target = 1;
  rep.allocation = alloc;
  for (AgentId a = 0; a < spec.n; ++a) {
    Rational v = tight.instance.bundle_value(a, alloc.bundles[a]);
    if (v < 1 && (rep.agent < 0 || v < rep.value)) {
      rep.agent = a;
      rep.value = v;
    }
  }
  return rep;
}

FailureReport hard1_failure(const HardInstanceSpec& spec, const ThresholdList& taus) {
  require(taus.size() == spec.n, "threshold list length differs from n");
  const Rational alpha = hard1_alpha(spec.n, spec.rank);
  require(taus.at_rank(spec.rank - 1) > alpha, "hard1 needs tau_i > alpha_i = " + to_string(alpha));
  auto h = gen_hard1(spec.n, spec.rank, taus.at_rank(spec.n - 1));
  auto r = run_hard1(spec.n, spec.rank, taus);
  FailureReport rep;
  rep.spec = spec;
  rep.allocation = r.allocation;
  rep.transcript = r.transcript;
  for (AgentId a = 0; a < spec.rank && rep.agent < 0; ++a) {
    Rational v = h.instance.bundle_value(a, r.allocation.bundles[a]);
    if (v < taus.at_rank(a)) {
      rep.agent = a;
      rep.rank = a;
      rep.value = v;
      rep.target = taus.at_rank(a);
    }
  }
  return rep;
}

FailureReport hard2_failure(const HardInstanceSpec& spec, const ThresholdList& taus) {
  require(taus.size() == spec.n, "threshold list length differs from n");
  auto setup = gen_hard2_responders(spec.n, spec.rank, spec.k1, spec.k2, spec.t);
  const Rational need = taus.at_rank(setup.target);
  require(need > setup.alpha + 2 * setup.eps,
          "hard2 needs tau_i > alpha + 2 eps = " + to_string(setup.alpha + 2 * setup.eps));
  RbfOptions opts;
  opts.choose_bag = setup.choose_bag;
  auto r = run_rbf(setup.responders, setup.goods, taus, PriorityRanking::identity(spec.n), opts);
  FailureReport rep;
  rep.spec = spec;
  rep.allocation = r.allocation;
  rep.transcript = r.transcript;
  rep.best_available = 0;
  for (AgentId a = spec.k1 + spec.k2; a < spec.n; ++a)
    rep.best_available = std::max<Rational>(rep.best_available,
                                            setup.target_valuation.bundle_value(0, r.allocation.bundles[a]));
  const Rational v = setup.target_valuation.bundle_value(0, r.allocation.bundles[setup.target]);
  if (v < need) {
    rep.agent = setup.target;
    rep.rank = setup.target;
    rep.value = v;
    rep.target = need;
  }
  return rep;
}

}  // namespace

FailureReport demonstrate_failure(const HardInstanceSpec& spec, const ThresholdList& taus) {
  spec.validate();
  FailureReport rep;
  switch (spec.family) {
    case HardFamily::OrdinalTight: rep = tight_failure(spec); break;
    case HardFamily::Hard1: rep = hard1_failure(spec, taus); break;
    case HardFamily::Hard2: rep = hard2_failure(spec, taus); break;
  }
  if (rep.agent < 0) throw InternalError(to_string(spec.family) + " instance did not produce a failure");
  rep.summary = "agent " + std::to_string(rep.agent) + " received " + to_string(rep.value) + " < " +
                to_string(rep.target);
  return rep;
}

}  // namespace mmskit
