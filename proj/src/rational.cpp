#include "wbary/rational.hpp"

#include <cctype>
#include <ostream>

namespace wbary {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

mpq_class Rational::make_int(long long n) {
  // mpq_class has no long long constructor; go through a decimal string.
  return mpq_class(std::to_string(n));
}

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) {
  if (v_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(std::move(r));
}

Rational Rational::from_string(const std::string& input) {
  // Trim surrounding whitespace.
  std::size_t b = 0, e = input.size();
  while (b < e && std::isspace(static_cast<unsigned char>(input[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(input[e - 1]))) --e;
  std::string s = input.substr(b, e - b);
  if (s.empty()) throw std::invalid_argument("Rational: empty string");

  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = (s[pos] == '-');
    ++pos;
  }
  const std::string body = s.substr(pos);
  if (body.empty()) throw std::invalid_argument("Rational: no digits in '" + input + "'");

  const std::size_t slash = body.find('/');
  if (slash != std::string::npos) {
    // Fraction literal "p/q". Sign accepted on either piece.
    std::string ns = body.substr(0, slash);
    std::string ds = body.substr(slash + 1);
    bool dneg = false;
    if (!ds.empty() && (ds[0] == '+' || ds[0] == '-')) {
      dneg = (ds[0] == '-');
      ds = ds.substr(1);
    }
    if (!all_digits(ns) || !all_digits(ds))
      throw std::invalid_argument("Rational: malformed fraction '" + input + "'");
    mpz_class n(ns, 10), d(ds, 10);
    if (d == 0) throw std::domain_error("Rational: zero denominator in '" + input + "'");
    if (negative != dneg) n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  // Decimal literal with optional fraction part and optional exponent.
  std::string digits;
  long frac_len = 0;
  long exponent = 0;
  std::size_t i = 0;
  while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) digits += body[i++];
  if (i < body.size() && body[i] == '.') {
    ++i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      digits += body[i++];
      ++frac_len;
    }
  }
  if (digits.empty()) throw std::invalid_argument("Rational: no digits in '" + input + "'");
  if (i < body.size() && (body[i] == 'e' || body[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
      eneg = (body[i] == '-');
      ++i;
    }
    std::string es;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) es += body[i++];
    if (es.empty() || es.size() > 6)
      throw std::invalid_argument("Rational: malformed exponent in '" + input + "'");
    exponent = std::stol(es);
    if (eneg) exponent = -exponent;
  }
  if (i != body.size()) throw std::invalid_argument("Rational: trailing characters in '" + input + "'");

  mpz_class n(digits, 10);
  mpz_class d(1);
  long pow10 = exponent - frac_len;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(pow10 < 0 ? -pow10 : pow10));
  if (pow10 >= 0)
    n *= scale;
  else
    d = scale;
  if (negative) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::fraction_str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add_mul(a[i], b[i]);
  return acc;
}

mpz_class ceil_sqrt(const Rational& r) {
  if (r.sign() < 0) throw std::domain_error("ceil_sqrt: negative argument");
  // Smallest m with m^2 >= r. Start from floor(sqrt(ceil(r))) and adjust.
  mpz_class ri = r.num() / r.den();  // floor for nonnegative r
  mpz_class m;
  mpz_sqrt(m.get_mpz_t(), ri.get_mpz_t());
  while (Rational(mpz_class(m * m)) < r) ++m;
  return m;
}

Rational ceil_rational(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace wbary
