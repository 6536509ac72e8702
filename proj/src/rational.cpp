#include "horotree/rational.hpp"

namespace horotree {

Rational make_rat(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rat(long num, long den) { return make_rat(Integer(num), Integer(den)); }

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rational& q) { return q.get_str(); }

Prime::Prime(long p) : value(p) {
  if (p < 2) throw std::invalid_argument("prime must be >= 2");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational pow_p(const Prime& p, long e) {
  Integer pe = ipow(p.big(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(pe) : make_rat(Integer(1), pe);
}

std::pair<long, Integer> strip_p(const Integer& n, const Prime& p) {
  if (n == 0) throw std::invalid_argument("strip_p of zero");
  Integer rest;
  unsigned long e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.big().get_mpz_t());
  return {static_cast<long>(e), rest};
}

std::string valuation_str(const Valuation& v) {
  return v.is_infinite() ? "inf" : std::to_string(v.value());
}

Valuation val_p(const Integer& n, const Prime& p) {
  if (n == 0) return Valuation::infinity();
  return Valuation::of(strip_p(n, p).first);
}

Valuation val_p(const Rational& x, const Prime& p) {
  if (x == 0) return Valuation::infinity();
  long vn = strip_p(Integer(x.get_num()), p).first;
  long vd = strip_p(Integer(x.get_den()), p).first;
  return Valuation::of(vn - vd);
}

Rational abs_p(const Rational& x, const Prime& p) {
  if (x == 0) return Rational(0);
  return pow_p(p, -val_p(x, p).value());
}

long floor_log(const Rational& x, const Rational& base) {
  if (x <= 0) throw std::invalid_argument("floor_log of nonpositive value");
  if (base <= 1) throw std::invalid_argument("floor_log base must exceed 1");
  long e = 0;
  Rational pw(1);
  while (pw <= x) {
    pw *= base;
    ++e;
  }
  do {
    pw /= base;
    --e;
  } while (pw > x);
  return e;
}

long ceil_log(const Rational& x, const Rational& base) {
  long f = floor_log(x, base);
  Rational pw(1);
  for (long i = 0; i < (f < 0 ? -f : f); ++i) pw *= base;
  if (f < 0) pw = Rational(1) / pw;
  return pw == x ? f : f + 1;
}

}  // namespace horotree
