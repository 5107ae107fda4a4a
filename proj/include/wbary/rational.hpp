#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wbary {

// Exact rational scalar backed by GMP. Values are kept canonical at all
// times: lowest terms, denominator > 0. Every arithmetic operation is exact;
// to_double() exists for display and SVG output only and must never feed
// back into the solver.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(long long n) : v_(make_int(n)) {}
  Rational(long num, long den);
  explicit Rational(const mpz_class& n) : v_(n) {}
  explicit Rational(mpq_class q);

  // Accepts "p", "p/q", and decimal literals with optional exponent
  // ("0.25", "-3", "1/3", "2.5e-3"). Throws std::invalid_argument on
  // malformed text and std::domain_error on a zero denominator.
  static Rational from_string(const std::string& s);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational abs() const { return sign() < 0 ? Rational(mpq_class(-v_)) : *this; }
  Rational reciprocal() const;

  double to_double() const { return v_.get_d(); }

  std::string str() const;           // canonical: "p" when q == 1, else "p/q"
  std::string fraction_str() const;  // always "p/q"

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  // *this -= f * g, the inner step of simplex pivots and dot products.
  void sub_mul(const Rational& f, const Rational& g) { v_ -= f.v_ * g.v_; }
  void add_mul(const Rational& f, const Rational& g) { v_ += f.v_ * g.v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    Rational r(a);
    r /= b;
    return r;
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static mpq_class make_int(long long n);
  mpq_class v_;
};

// Exact inner product; throws std::invalid_argument on length mismatch.
Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Smallest integer m >= 0 with m*m >= r (requires r >= 0).
mpz_class ceil_sqrt(const Rational& r);

// Smallest integer >= r, as a Rational.
Rational ceil_rational(const Rational& r);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace wbary
