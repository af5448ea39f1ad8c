#include "flg/scalar.hpp"

#include <cmath>
#include <cstdio>

#include "flg/errors.hpp"

namespace flg {

Scalar::Scalar(long num, long den) : a_(num, den), b_(0) {
  if (den == 0) throw InputError("scalar: zero denominator");
  a_.canonicalize();
}

Scalar::Scalar(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

Scalar Scalar::golden_ratio() {
  return Scalar(mpq_class(1, 2), mpq_class(1, 2));
}

bool Scalar::is_integer() const {
  return b_ == 0 && a_.get_den() == 1;
}

long Scalar::to_long() const {
  if (!is_integer()) throw InputError("scalar: not an integer: " + str());
  if (!a_.get_num().fits_slong_p())
    throw InputError("scalar: integer out of range: " + str());
  return a_.get_num().get_si();
}

int Scalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Signs disagree: compare a^2 with 5 b^2. Equality would force a = b = 0.
  mpq_class lhs = a_ * a_;
  mpq_class rhs = 5 * b_ * b_;
  int cmp2 = cmp(lhs, rhs);
  if (cmp2 == 0) throw InternalError("scalar: a^2 == 5 b^2 for nonzero a, b");
  // |a| > |b| sqrt5 iff a^2 > 5 b^2; the larger magnitude decides the sign.
  return cmp2 > 0 ? sa : sb;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  // (a + b s)(c + d s) = ac + 5bd + (ad + bc) s, with s = sqrt 5.
  mpq_class na = a_ * o.a_ + 5 * b_ * o.b_;
  mpq_class nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw InputError("scalar: division by zero");
  // Multiply by the conjugate: 1/(c + d s) = (c - d s)/(c^2 - 5 d^2).
  mpq_class norm = o.a_ * o.a_ - 5 * o.b_ * o.b_;
  if (norm == 0) throw InternalError("scalar: zero norm for nonzero divisor");
  Scalar conj(o.a_ / norm, -o.b_ / norm);
  return *this *= conj;
}

namespace {

// Floor of (p/q) * sqrt(5) for q > 0, exactly: isqrt gives floor(sqrt(5 p^2))
// up to one unit of slack after the division, fixed by an exact check.
mpz_class floor_sqrt5_multiple(const mpq_class& b) {
  if (b == 0) return 0;
  if (b < 0) {
    // b*sqrt5 is irrational for b != 0, so floor(-x) = -floor(x) - 1.
    return -floor_sqrt5_multiple(-b) - 1;
  }
  mpz_class p = b.get_num(), q = b.get_den();
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), mpz_class(5 * p * p).get_mpz_t());
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
  // n <= b sqrt5 by construction; bump while n+1 still fits below.
  while (Scalar(mpq_class(-(n + 1)), b).sign() > 0) ++n;
  return n;
}

}  // namespace

mpz_class Scalar::floor() const {
  mpz_class fa;
  mpz_fdiv_q(fa.get_mpz_t(), a_.get_num().get_mpz_t(), a_.get_den().get_mpz_t());
  if (b_ == 0) return fa;
  mpz_class n = fa + floor_sqrt5_multiple(b_);
  // n is within 1 of the true floor; settle it exactly.
  while ((*this - Scalar(mpq_class(n + 1))).sign() >= 0) ++n;
  while ((*this - Scalar(mpq_class(n))).sign() < 0) --n;
  return n;
}

mpz_class Scalar::ceil() const {
  mpz_class f = floor();
  return (*this == Scalar(mpq_class(f))) ? f : f + 1;
}

std::string Scalar::str() const {
  auto rat_str = [](const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  };
  if (b_ == 0) return rat_str(a_);
  if (b_ < 0) return rat_str(a_) + "+(" + rat_str(b_) + ")*sqrt5";
  return rat_str(a_) + "+" + rat_str(b_) + "*sqrt5";
}

double Scalar::approx() const {
  return a_.get_d() + b_.get_d() * std::sqrt(5.0);
}

std::string Scalar::approx_str() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", approx());
  return buf;
}

namespace {

// Grammar: scalar := term ( ('+' | '-') term )? ; at most one sqrt5 term.
// term := rational | rational '*' 'sqrt5' | '(' rational ')' '*' 'sqrt5'
// rational := ['-'] digits [ '/' digits ]
struct ScalarParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw InputError("scalar \"" + std::string(text) + "\": " + what +
                     " at position " + std::to_string(pos));
  }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  mpq_class rational() {
    std::size_t start = pos;
    if (!eof() && peek() == '-') ++pos;
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected digit");
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    if (!eof() && peek() == '/') {
      ++pos;
      if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected denominator digit");
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    }
    std::string token(text.substr(start, pos - start));
    try {
      mpq_class q(token);
      if (q.get_den() == 0) fail("zero denominator");
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      pos = start;
      fail("bad rational");
    }
  }

  bool accept_sqrt5() {
    if (text.substr(pos, 5) == "sqrt5") {
      pos += 5;
      return true;
    }
    return false;
  }

  // Returns (coefficient, is_sqrt5_term).
  std::pair<mpq_class, bool> term() {
    if (!eof() && peek() == '(') {
      ++pos;
      mpq_class q = rational();
      if (eof() || peek() != ')') fail("expected ')'");
      ++pos;
      if (eof() || peek() != '*') fail("expected '*'");
      ++pos;
      if (!accept_sqrt5()) fail("expected sqrt5");
      return {q, true};
    }
    if (accept_sqrt5()) return {mpq_class(1), true};
    mpq_class q = rational();
    if (!eof() && peek() == '*') {
      ++pos;
      if (!accept_sqrt5()) fail("expected sqrt5");
      return {q, true};
    }
    return {q, false};
  }

  Scalar parse() {
    mpq_class a(0), b(0);
    bool seen_rat = false, seen_irr = false;
    bool negate = false;
    for (;;) {
      auto [q, irr] = term();
      if (negate) q = -q;
      if (irr) {
        if (seen_irr) fail("duplicate sqrt5 term");
        seen_irr = true;
        b = q;
      } else {
        if (seen_rat) fail("duplicate rational term");
        seen_rat = true;
        a = q;
      }
      if (eof()) break;
      if (peek() == '+') {
        negate = false;
        ++pos;
      } else if (peek() == '-') {
        // The sign is folded into the next term's coefficient.
        negate = true;
        ++pos;
      } else {
        fail("unexpected character");
      }
    }
    return Scalar(a, b);
  }
};

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  ScalarParser p{text};
  Scalar s = p.parse();
  return s;
}

bool lex_less(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  if (x.size() != y.size())
    throw InputError("lex_less: vectors of different length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return true;
    if (y[i] < x[i]) return false;
  }
  return false;
}

}  // namespace flg
