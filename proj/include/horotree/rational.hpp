#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace horotree {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonicalized rational; throws on zero denominator.
Rational make_rat(const Integer& num, const Integer& den);
Rational make_rat(long num, long den = 1);

// Accepts "num" or "num/den" in base 10.
Rational parse_rational(const std::string& s);

// "num/den", with "/den" omitted when den == 1.
std::string rat_str(const Rational& q);

// A validated prime, fixed at configuration time.
struct Prime {
  long value;
  explicit Prime(long p);
  Integer big() const { return Integer(value); }
};

Integer ipow(const Integer& base, unsigned long e);

// p^e as an exact rational; e may be negative.
Rational pow_p(const Prime& p, long e);

// (e, u) with n = p^e * u and p does not divide u; n != 0.
std::pair<long, Integer> strip_p(const Integer& n, const Prime& p);

// p-adic valuation value, with the valuation of zero compared above
// every integer.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(true, 0); }
  static Valuation of(long v) { return Valuation(false, v); }

  bool is_infinite() const { return infinite_; }
  long value() const {
    if (infinite_) throw std::logic_error("valuation of zero has no finite value");
    return v_;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
  }
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
  friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return of(a.v_ + b.v_);
  }

 private:
  Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
  bool infinite_;
  long v_;
};

std::string valuation_str(const Valuation& v);

Valuation val_p(const Integer& n, const Prime& p);
Valuation val_p(const Rational& x, const Prime& p);

// p^{-val_p(x)}; 0 for x = 0.
Rational abs_p(const Rational& x, const Prime& p);

// Largest e with base^e <= x (x > 0, base > 1).
long floor_log(const Rational& x, const Rational& base);
// Smallest e with base^e >= x.
long ceil_log(const Rational& x, const Rational& base);

// Exact distance log(argument), argument > 0.  Addition of distances is
// multiplication of arguments; ordering is the ordering of arguments.
struct LogDist {
  Rational argument;

  explicit LogDist(Rational arg) : argument(std::move(arg)) {
    if (argument <= 0) throw std::invalid_argument("LogDist argument must be positive");
  }

  friend LogDist operator+(const LogDist& a, const LogDist& b) {
    return LogDist(Rational(a.argument * b.argument));
  }
  friend bool operator==(const LogDist& a, const LogDist& b) {
    return a.argument == b.argument;
  }
  friend bool operator<(const LogDist& a, const LogDist& b) {
    return a.argument < b.argument;
  }
  friend bool operator<=(const LogDist& a, const LogDist& b) {
    return a.argument <= b.argument;
  }
};

inline LogDist logdist_combine(const LogDist& a, const LogDist& b) { return a + b; }

}  // namespace horotree
