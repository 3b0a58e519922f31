#include <algorithm>

#include "doctest.h"
#include "mmskit/bounds.hpp"

using namespace mmskit;

namespace {

Rational q(long p, long r = 1) { return make_rational(p, r); }

// Term-by-term sums straight from the definitions.
Rational gamma_direct(long n) {
  Rational s = 0;
  for (long i = 1; i <= n; ++i) s += std::max<Rational>(q(2 * n, 2 * n + i - 1), q(3, 4) + q(1, 12 * n));
  return s / n;
}

Rational hard1_direct(long n) {
  Rational s = 2;
  for (long i = 3; i <= n; ++i) s += q(3 * n, 3 * n + i - 2);
  return s / n;
}

Rational hard2_direct(long n) {
  Rational s = 0;
  for (long i = 1; i <= n; ++i) s += std::min<Rational>(q(3 * n, 3 * n + i - 2), std::max<Rational>(q(5, 6), 1 - q(i - 1, 3 * n)));
  return s / n;
}

bool near(const Rational& x, const char* decimal, const char* tol) {
  Rational d = parse_rational(decimal);
  Rational diff = x - d;
  return abs(diff) <= parse_rational(tol);
}

// Decimal literal "a.bcd" as a rational.
Rational dec(const std::string& s) {
  auto dot = s.find('.');
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
  return Rational(mpz_class(digits, 10), den);
}

}  // namespace

TEST_CASE("log enclosures") {
  Interval l = ln_interval(q(4, 3));
  // ln(4/3) to 60 places
  Rational ref = dec("0.287682072451780927439219005993827431503509710897761");
  CHECK(l.lo <= ref + dec("0.000000000000000000000000000000000000000000000000001"));
  CHECK(l.hi >= ref);
  CHECK(l.width() < dec("0.00000000000000000000000000000000000000000000000000000000000001"));
  CHECK(ln_interval(q(1)).contains(0));
  CHECK_THROWS_AS(ln_interval(q(0)), InputError);
  CHECK(to_decimal(q(1, 3), 5) == "0.33333");
  CHECK(to_decimal(q(-7, 2), 2) == "-3.50");
  CHECK(to_decimal(q(1, 400), 2) == "0.00");
}

TEST_CASE("reciprocal sums") {
  CHECK(reciprocal_sum(1, 4).reduced() == q(25, 12));
  CHECK(reciprocal_sum(5, 4).reduced() == 0);
  Rational s = 0;
  for (long j = 30; j <= 90; ++j) s += q(1, j);
  Fraction f = reciprocal_sum(30, 90);
  CHECK(f.reduced() == s);
  CHECK(f.compare(s) == 0);
  CHECK(f.compare(s + q(1, 1000000)) < 0);
}

TEST_CASE("gamma average") {
  auto r1 = gamma_lower_bound(1);
  CHECK(r1.exact == 1);
  CHECK(r1.holds);
  CHECK(near(r1.bound.lo, "8531/10000", "1/10000"));
  Interval asym = Rational(2) * ln_interval(q(4, 3)) + q(1, 4);
  CHECK(to_decimal(asym.lo, 5) == "0.82536");
  for (long n = 1; n <= 120; ++n) {
    auto r = gamma_lower_bound(static_cast<int>(n));
    CHECK(r.exact == gamma_direct(n));
    CHECK(r.holds);
    CHECK(bound_holds(BoundKind::Gamma, static_cast<int>(n)));
  }
}

TEST_CASE("hard1 average") {
  CHECK(hard1_upper_bound(2).exact == 1);
  CHECK(hard1_upper_bound(3).exact == q(29, 30));
  Interval asym = Rational(3) * ln_interval(q(4, 3));
  CHECK(near(asym.lo, "86305/100000", "1/100000"));
  for (long n = 2; n <= 120; ++n) {
    auto r = hard1_upper_bound(static_cast<int>(n));
    CHECK(r.exact == hard1_direct(n));
    CHECK(r.holds);
  }
  CHECK_THROWS_AS(hard1_upper_bound(1), InputError);
}

TEST_CASE("hard2 average") {
  CHECK(hard2_upper_bound(1).exact == 1);
  Interval asym = Rational(3) * ln_interval(q(10, 9)) + q(13, 24);
  CHECK(near(asym.lo, "8578/10000", "1/10000"));
  for (long n = 1; n <= 120; ++n) {
    auto r = hard2_upper_bound(static_cast<int>(n));
    CHECK(r.exact == hard2_direct(n));
    CHECK(r.holds);
  }
  CHECK(hard2_upper_bound(100).holds);
}

TEST_CASE("sweeps agree between serial and parallel") {
  for (auto kind : {BoundKind::Gamma, BoundKind::Hard1, BoundKind::Hard2}) {
    auto a = bound_sweep(kind, 2, 200, Execution::Serial);
    auto b = bound_sweep(kind, 2, 200, Execution::Parallel);
    CHECK(a.checked == 199);
    CHECK(a.failures.empty());
    CHECK(a.failures == b.failures);
  }
}

TEST_CASE("integral bounds on simple shapes") {
  using S = Piece::Shape;
  SUBCASE("constant") {
    PiecewiseFunction f({{S::Constant, 0, 10, q(3, 2), 0}});
    auto c = integral_bound_check(f, 2, 7);
    CHECK(c.sum == 9);
    CHECK(c.holds());
    CHECK(c.lower_bound.hi == 9);  // f(b) + 5 * 3/2
    CHECK(c.upper_bound.lo == 9);
  }
  SUBCASE("2n/(2n+x) for n = 10") {
    PiecewiseFunction f({{S::Reciprocal, 0, 9, 20, 20}});
    auto c = integral_bound_check(f, 0, 9);
    CHECK(c.holds());
    Rational s = 0;
    for (long i = 0; i <= 9; ++i) s += q(20, 20 + i);
    CHECK(c.sum == s);
  }
  SUBCASE("decreasing line") {
    PiecewiseFunction f({{S::Linear, 0, 5, 10, -2}});
    auto c = integral_bound_check(f, 0, 5);
    CHECK(c.sum == 10 + 8 + 6 + 4 + 2 + 0);
    CHECK(c.holds());
  }
  SUBCASE("increasing input is rejected") {
    PiecewiseFunction up({{S::Linear, 0, 5, 1, 1}});
    CHECK_THROWS_AS(integral_bound_check(up, 0, 5), InputError);
    PiecewiseFunction jump({{S::Constant, 0, 2, 1, 0}, {S::Constant, 2, 4, 2, 0}});
    CHECK_THROWS_AS(integral_bound_check(jump, 0, 4), InputError);
  }
  SUBCASE("malformed pieces") {
    CHECK_THROWS_AS(PiecewiseFunction({}), InputError);
    CHECK_THROWS_AS(PiecewiseFunction({{S::Constant, 0, 1, 1, 0}, {S::Constant, 2, 3, 1, 0}}), InputError);
    CHECK_THROWS_AS(PiecewiseFunction({{S::Reciprocal, -1, 3, 1, 0}}), InputError);
  }
}

TEST_CASE("proof integrands match their formulas and satisfy the integral bounds") {
  for (long n = 2; n <= 40; ++n) {
    auto g = gamma_integrand(static_cast<int>(n));
    auto h1 = hard1_integrand(static_cast<int>(n));
    auto h2 = hard2_integrand(static_cast<int>(n));
    for (long k = 0; k <= 4 * (n - 1); ++k) {
      const Rational x = q(k, 4);
      CHECK(g(x) == std::max<Rational>(q(2 * n) / (2 * n + x), q(3, 4) + q(1, 12 * n)));
      CHECK(h2(x) == std::min<Rational>(q(3 * n) / (3 * n + x - 1), std::max<Rational>(q(5, 6), 1 - x / (3 * n))));
      if (x <= n - 2) CHECK(h1(x) == q(3 * n) / (3 * n + x));
    }
    CHECK(integral_bound_check(g, 0, n - 1).holds());
    CHECK(integral_bound_check(h1, 0, n - 2).holds());
    CHECK(integral_bound_check(h2, 0, n - 1).holds());
  }
  CHECK(gamma_integrand(1)(0) == 1);
}
