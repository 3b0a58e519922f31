#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mmskit/core.hpp"
#include "mmskit/parallel.hpp"

namespace mmskit {

/// Working precision of the MPFR evaluations (about 77 decimal digits).
inline constexpr int kIntervalBits = 256;

/// Closed interval with exact rational endpoints.
struct Interval {
  Rational lo, hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, const Rational& r);
Interval operator*(const Rational& c, const Interval& a);

/// Encloses ln(x) for x > 0 using directed rounding.
Interval ln_interval(const Rational& x, int bits = kIntervalBits);

/// x truncated toward zero to `digits` places after the point.
std::string to_decimal(const Rational& x, int digits);

/// Unreduced fraction for long sums; den > 0.
struct Fraction {
  mpz_class num{0};
  mpz_class den{1};

  Rational reduced() const;
  /// Sign of (this - r) without reducing.
  int compare(const Rational& r) const;
};

/// sum_{j=first}^{last} 1/j by binary splitting (0 when last < first).
Fraction reciprocal_sum(long first, long last);

enum class BoundKind { Gamma, Hard1, Hard2 };

std::string to_string(BoundKind kind);

struct BoundResult {
  Rational exact;  // the average being bounded
  Interval bound;  // encloses the closed-form bound
  bool holds = false;
};

/// (1/n) sum_i max(2n/(2n+i-1), 3/4 + 1/(12n)) against 2 ln(4/3) + 1/4 + 1/(36n) from below.
BoundResult gamma_lower_bound(int n);
/// (1/n)(2 + sum_{i=3}^n 3n/(3n+i-2)) against 3 ln(4/3) + 1/(2n) from above.
BoundResult hard1_upper_bound(int n);
/// (1/n) sum_i min(3n/(3n+i-2), max(5/6, 1-(i-1)/(3n))) against 13/24 + 3 ln(10/9) + 1/(3n) from above.
BoundResult hard2_upper_bound(int n);

BoundResult bound_result(BoundKind kind, int n);

/// Same verdict as bound_result(kind, n).holds without reducing the exact sum.
bool bound_holds(BoundKind kind, int n);

struct SweepResult {
  int checked = 0;
  std::vector<int> failures;
};

/// bound_holds for every n in [first, last].
SweepResult bound_sweep(BoundKind kind, int first, int last, Execution exec = Execution::Parallel);

/// Piecewise function on [lo, hi] segments: constant c0, linear c0 + c1 x,
/// or reciprocal c0 / (c1 + x).
struct Piece {
  enum class Shape { Constant, Linear, Reciprocal };
  Shape shape = Shape::Constant;
  Rational lo, hi;
  Rational c0, c1;

  Rational at(const Rational& x) const;
};

/// Rational part plus sum of coef * ln(arg).
struct LogExpression {
  Rational rational;
  std::vector<std::pair<Rational, Rational>> logs;

  Interval evaluate(int bits = kIntervalBits) const;
};

class PiecewiseFunction {
 public:
  /// Pieces must be contiguous and cover [front.lo, back.hi].
  explicit PiecewiseFunction(std::vector<Piece> pieces);

  Rational operator()(const Rational& x) const;
  Rational lower() const { return pieces_.front().lo; }
  Rational upper() const { return pieces_.back().hi; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Closed-form integral over [a, b].
  LogExpression integral(const Rational& a, const Rational& b) const;
  /// Throws InputError unless non-negative and non-increasing on [a, b].
  void require_non_increasing(const Rational& a, const Rational& b) const;

 private:
  std::vector<Piece> pieces_;
};

struct IntegralCheck {
  Rational sum;          // sum_{i=a}^b f(i)
  Interval lower_bound;  // f(b) + integral
  Interval upper_bound;  // f(a) + integral
  bool lower_holds = false;
  bool upper_holds = false;
  bool holds() const { return lower_holds && upper_holds; }
};

/// Both sides of f(b) + int_a^b f <= sum_{i=a}^b f(i) <= f(a) + int_a^b f, for integers a <= b.
IntegralCheck integral_bound_check(const PiecewiseFunction& f, long a, long b);

/// max(2n/(2n+x), 3/4 + 1/(12n)) on [0, n-1].
PiecewiseFunction gamma_integrand(int n);
/// 3n/(3n+x) on [0, n-2].
PiecewiseFunction hard1_integrand(int n);
/// min(3n/(3n+x-1), max(5/6, 1 - x/(3n))) on [0, n-1].
PiecewiseFunction hard2_integrand(int n);

}  // namespace mmskit
