#include "mmskit/bounds.hpp"

#include <mpfr.h>

#include <algorithm>

namespace mmskit {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator+(const Interval& a, const Rational& r) { return {a.lo + r, a.hi + r}; }
Interval operator*(const Rational& c, const Interval& a) {
  if (c >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

Interval ln_interval(const Rational& x, int bits) {
  if (x <= 0) throw InputError("logarithm of non-positive " + to_string(x));
  mpfr_t lo, hi;
  mpfr_init2(lo, bits);
  mpfr_init2(hi, bits);
  mpfr_set_q(lo, x.get_mpq_t(), MPFR_RNDD);
  mpfr_log(lo, lo, MPFR_RNDD);
  mpfr_set_q(hi, x.get_mpq_t(), MPFR_RNDU);
  mpfr_log(hi, hi, MPFR_RNDU);
  Interval out;
  mpfr_get_q(out.lo.get_mpq_t(), lo);
  mpfr_get_q(out.hi.get_mpq_t(), hi);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

std::string to_decimal(const Rational& x, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = abs(x.get_num()) * scale / x.get_den();
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  return (x < 0 ? "-" : "") + s;
}

Rational Fraction::reduced() const {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

int Fraction::compare(const Rational& r) const {
  mpz_class lhs = num * r.get_den();
  mpz_class rhs = r.get_num() * den;
  return cmp(lhs, rhs);
}

namespace {

void split(long a, long b, mpz_class& p, mpz_class& q) {
  if (a == b) {
    p = 1;
    q = a;
    return;
  }
  const long mid = a + (b - a) / 2;
  mpz_class p2, q2;
  split(a, mid, p, q);
  split(mid + 1, b, p2, q2);
  p = p * q2 + p2 * q;
  q *= q2;
}

Fraction add(Fraction f, const Rational& r) {
  f.num = f.num * r.get_den() + r.get_num() * f.den;
  f.den *= r.get_den();
  return f;
}

Fraction scale(Fraction f, const Rational& r) {
  f.num *= r.get_num();
  f.den *= r.get_den();
  return f;
}

const Interval& ln_4_3() {
  static const Interval v = ln_interval(make_rational(4, 3));
  return v;
}

const Interval& ln_10_9() {
  static const Interval v = ln_interval(make_rational(10, 9));
  return v;
}

void require_n(int n, int min) {
  if (n < min) throw InputError("bound needs n >= " + std::to_string(min));
}

Fraction gamma_average(int n) {
  const long N = n;
  const __int128 num = static_cast<__int128>(24) * N * N;
  long c = static_cast<long>(num / (9 * N + 1)) - 2 * N + 1;
  c = std::clamp(c, 1L, N);
  Fraction sum = scale(reciprocal_sum(2 * N, 2 * N + c - 1), Rational(2 * N));
  sum = add(sum, make_rational((N - c) * (9 * N + 1), 12 * N));
  return scale(sum, make_rational(1, N));
}

Fraction hard1_average(int n) {
  const long N = n;
  Fraction sum = add(scale(reciprocal_sum(3 * N + 1, 4 * N - 2), Rational(3 * N)), Rational(2));
  return scale(sum, make_rational(1, N));
}

Fraction hard2_average(int n) {
  const long N = n;
  const long linear_end = std::min(N, (3 * N + 6) / 6);
  const long flat_end = std::max(linear_end, std::min(N, (3 * N + 10) / 5));
  const long linear_sum = linear_end * (3 * N + 1) - linear_end * (linear_end + 1) / 2;
  Fraction sum = scale(reciprocal_sum(3 * N + flat_end - 1, 4 * N - 2), Rational(3 * N));
  sum = add(sum, make_rational(linear_sum, 3 * N));
  sum = add(sum, make_rational(5 * (flat_end - linear_end), 6));
  return scale(sum, make_rational(1, N));
}

Interval bound_interval(BoundKind kind, int n) {
  switch (kind) {
    case BoundKind::Gamma:
      return Rational(2) * ln_4_3() + (make_rational(1, 4) + make_rational(1, 36L * n));
    case BoundKind::Hard1:
      return Rational(3) * ln_4_3() + make_rational(1, 2L * n);
    case BoundKind::Hard2:
      return Rational(3) * ln_10_9() + (make_rational(13, 24) + make_rational(1, 3L * n));
  }
  throw InputError("unknown bound kind");
}

Fraction average(BoundKind kind, int n) {
  switch (kind) {
    case BoundKind::Gamma:
      require_n(n, 1);
      return gamma_average(n);
    case BoundKind::Hard1:
      require_n(n, 2);
      return hard1_average(n);
    case BoundKind::Hard2:
      require_n(n, 1);
      return hard2_average(n);
  }
  throw InputError("unknown bound kind");
}

}  // namespace

Fraction reciprocal_sum(long first, long last) {
  Fraction f;
  if (last < first) return f;
  if (first < 1) throw InputError("reciprocal sum must start at 1 or later");
  split(first, last, f.num, f.den);
  return f;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Gamma:
      return "gamma";
    case BoundKind::Hard1:
      return "hard1";
    case BoundKind::Hard2:
      return "hard2";
  }
  return "?";
}

BoundResult bound_result(BoundKind kind, int n) {
  Fraction avg = average(kind, n);
  BoundResult r{avg.reduced(), bound_interval(kind, n)};
  r.holds = kind == BoundKind::Gamma ? r.exact >= r.bound.hi : r.exact <= r.bound.lo;
  return r;
}

BoundResult gamma_lower_bound(int n) { return bound_result(BoundKind::Gamma, n); }
BoundResult hard1_upper_bound(int n) { return bound_result(BoundKind::Hard1, n); }
BoundResult hard2_upper_bound(int n) { return bound_result(BoundKind::Hard2, n); }

bool bound_holds(BoundKind kind, int n) {
  Fraction avg = average(kind, n);
  Interval b = bound_interval(kind, n);
  return kind == BoundKind::Gamma ? avg.compare(b.hi) >= 0 : avg.compare(b.lo) <= 0;
}

SweepResult bound_sweep(BoundKind kind, int first, int last, Execution exec) {
  ln_4_3();
  ln_10_9();
  const long count = std::max(0, last - first + 1);
  std::vector<char> ok(count, 0);
  for_each_index(count, exec, [&](long k) { ok[k] = bound_holds(kind, first + static_cast<int>(k)); });
  SweepResult r;
  r.checked = static_cast<int>(count);
  for (long k = 0; k < count; ++k)
    if (!ok[k]) r.failures.push_back(first + static_cast<int>(k));
  return r;
}

// ------------------------------------------------------------ integrals

Rational Piece::at(const Rational& x) const {
  switch (shape) {
    case Shape::Constant:
      return c0;
    case Shape::Linear:
      return c0 + c1 * x;
    case Shape::Reciprocal:
      return c0 / (c1 + x);
  }
  return 0;
}

Interval LogExpression::evaluate(int bits) const {
  Interval out{rational, rational};
  for (const auto& [coef, arg] : logs) out = out + coef * ln_interval(arg, bits);
  return out;
}

PiecewiseFunction::PiecewiseFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InputError("piecewise function needs at least one piece");
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Piece& p = pieces_[k];
    if (p.hi < p.lo) throw InputError("piece with hi < lo");
    if (k > 0 && p.lo != pieces_[k - 1].hi) throw InputError("pieces are not contiguous");
    if (p.shape == Piece::Shape::Reciprocal && p.c1 + p.lo <= 0) throw InputError("reciprocal piece hits a pole");
  }
}

Rational PiecewiseFunction::operator()(const Rational& x) const {
  for (const auto& p : pieces_)
    if (p.lo <= x && x <= p.hi) return p.at(x);
  throw InputError("argument " + to_string(x) + " outside the domain");
}

LogExpression PiecewiseFunction::integral(const Rational& a, const Rational& b) const {
  if (a < lower() || b > upper() || b < a) throw InputError("integration range outside the domain");
  LogExpression out;
  for (const auto& p : pieces_) {
    const Rational lo = std::max(p.lo, a);
    const Rational hi = std::min(p.hi, b);
    if (hi <= lo) continue;
    switch (p.shape) {
      case Piece::Shape::Constant:
        out.rational += p.c0 * (hi - lo);
        break;
      case Piece::Shape::Linear:
        out.rational += p.c0 * (hi - lo) + p.c1 * (hi * hi - lo * lo) / 2;
        break;
      case Piece::Shape::Reciprocal:
        out.logs.emplace_back(p.c0, Rational((p.c1 + hi) / (p.c1 + lo)));
        break;
    }
  }
  return out;
}

void PiecewiseFunction::require_non_increasing(const Rational& a, const Rational& b) const {
  if (a < lower() || b > upper() || b < a) throw InputError("range outside the domain");
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Piece& p = pieces_[k];
    if (p.hi < a || p.lo > b) continue;
    const bool rising = (p.shape == Piece::Shape::Linear && p.c1 > 0) ||
                        (p.shape == Piece::Shape::Reciprocal && p.c0 < 0);
    if (rising && p.lo < p.hi) throw InputError("function increases on piece " + std::to_string(k));
    if (k + 1 < pieces_.size() && p.hi >= a && p.hi < b && pieces_[k + 1].at(p.hi) > p.at(p.hi)) {
      throw InputError("function jumps up at " + to_string(p.hi));
    }
  }
  if ((*this)(b) < 0) throw InputError("function is negative at " + to_string(b));
}

IntegralCheck integral_bound_check(const PiecewiseFunction& f, long a, long b) {
  const Rational ra(a), rb(b);
  f.require_non_increasing(ra, rb);
  IntegralCheck c;
  for (long i = a; i <= b; ++i) c.sum += f(Rational(i));
  const Interval integral = f.integral(ra, rb).evaluate();
  c.lower_bound = integral + f(rb);
  c.upper_bound = integral + f(ra);
  c.lower_holds = c.lower_bound.hi <= c.sum;
  c.upper_holds = c.sum <= c.upper_bound.lo;
  return c;
}

namespace {

// Keeps the parts of `pieces` inside [a, b]; a single point domain keeps one degenerate piece.
PiecewiseFunction clip(std::vector<Piece> pieces, const Rational& a, const Rational& b) {
  std::vector<Piece> kept;
  for (auto p : pieces) {
    p.lo = std::max(p.lo, a);
    p.hi = std::min(p.hi, b);
    if (p.lo < p.hi) kept.push_back(p);
  }
  if (kept.empty()) {
    for (auto p : pieces) {
      if (p.lo <= a && a <= p.hi) {
        p.lo = p.hi = a;
        kept.push_back(p);
        break;
      }
    }
  }
  return PiecewiseFunction(std::move(kept));
}

}  // namespace

PiecewiseFunction gamma_integrand(int n) {
  require_n(n, 1);
  const long N = n;
  const Rational beta = make_rational(2 * N * (3 * N - 1), 9 * N + 1);
  const Rational floor = make_rational(9 * N + 1, 12 * N);
  const Rational end = std::max(beta, Rational(N));
  using S = Piece::Shape;
  return clip({{S::Reciprocal, 0, beta, Rational(2 * N), Rational(2 * N)}, {S::Constant, beta, end + 1, floor, 0}}, 0,
              Rational(N - 1));
}

PiecewiseFunction hard1_integrand(int n) {
  require_n(n, 2);
  const long N = n;
  return clip({{Piece::Shape::Reciprocal, 0, Rational(N), Rational(3 * N), Rational(3 * N)}}, 0, Rational(N - 2));
}

PiecewiseFunction hard2_integrand(int n) {
  require_n(n, 1);
  const long N = n;
  const Rational half = make_rational(N, 2);
  const Rational knee = make_rational(3 * N, 5) + 1;
  using S = Piece::Shape;
  return clip({{S::Linear, 0, half, Rational(1), make_rational(-1, 3 * N)},
               {S::Constant, half, knee, make_rational(5, 6), 0},
               {S::Reciprocal, knee, knee + N, Rational(3 * N), Rational(3 * N - 1)}},
              0, Rational(N - 1));
}

}  // namespace mmskit
