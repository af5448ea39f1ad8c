#pragma once
#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace flg {

/// Exact element of the ordered field Q(sqrt 5), stored as a + b*sqrt(5)
/// with rational a, b. Comparisons are decided exactly (no floating point):
/// the sign of a + b*sqrt(5) follows from the signs of a and b, or from
/// comparing a^2 against 5 b^2 when they disagree. This is enough to carry
/// the golden ratio phi = (1 + sqrt 5)/2 alongside plain rational weights.
class Scalar {
 public:
  Scalar() : a_(0), b_(0) {}
  Scalar(long n) : a_(n), b_(0) {}  // NOLINT: implicit on purpose
  Scalar(long num, long den);
  explicit Scalar(const mpq_class& a) : a_(a), b_(0) { a_.canonicalize(); }
  Scalar(mpq_class a, mpq_class b);

  static Scalar sqrt5() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar golden_ratio();

  /// Parses "p/q", "p", or "p/q+r/s*sqrt5" (with optional parentheses and
  /// sign on either part). Throws InputError naming the offending position.
  static Scalar parse(std::string_view text);

  const mpq_class& rat() const { return a_; }
  const mpq_class& irr() const { return b_; }

  bool is_rational() const { return b_ == 0; }
  bool is_integer() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  /// Exact value as a long; requires is_integer() and fitting range.
  long to_long() const;

  int sign() const;

  Scalar operator-() const { return Scalar(-a_, -b_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
  friend bool operator<(const Scalar& x, const Scalar& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const Scalar& x, const Scalar& y) { return y < x; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return !(y < x); }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return !(x < y); }

  /// Exact floor. Works for irrational values too (via integer square roots).
  mpz_class floor() const;
  mpz_class ceil() const;

  /// Canonical exact string: "p/q" or "p/q+r/s*sqrt5" ("(-r/s)" when negative).
  std::string str() const;
  /// Decimal approximation, display only; never feeds back into computation.
  double approx() const;
  /// approx() rendered with six decimal places.
  std::string approx_str() const;

 private:
  mpq_class a_, b_;
};

/// Lexicographic order on equal-length Scalar vectors.
bool lex_less(const std::vector<Scalar>& x, const std::vector<Scalar>& y);

}  // namespace flg
