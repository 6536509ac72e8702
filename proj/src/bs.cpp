#include "horotree/bs.hpp"

#include <stdexcept>

namespace horotree {

namespace {

BsWord::Gen inverse_of(BsWord::Gen g) {
  using Gen = BsWord::Gen;
  switch (g) {
    case Gen::kA: return Gen::kAInv;
    case Gen::kAInv: return Gen::kA;
    case Gen::kB: return Gen::kBInv;
    case Gen::kBInv: return Gen::kB;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

BsWord::BsWord(const std::string& letters) {
  for (char c : letters) {
    switch (c) {
      case 'a': push(Gen::kA); break;
      case 'A': push(Gen::kAInv); break;
      case 'b': push(Gen::kB); break;
      case 'B': push(Gen::kBInv); break;
      case ' ': break;
      default:
        throw std::invalid_argument(std::string("bad generator letter: ") + c);
    }
  }
}

void BsWord::push(Gen g) {
  if (!letters_.empty() && letters_.back() == inverse_of(g))
    letters_.pop_back();
  else
    letters_.push_back(g);
}

std::string BsWord::str() const {
  std::string s;
  for (Gen g : letters_) {
    switch (g) {
      case Gen::kA: s += 'a'; break;
      case Gen::kAInv: s += 'A'; break;
      case Gen::kB: s += 'b'; break;
      case Gen::kBInv: s += 'B'; break;
    }
  }
  return s;
}

BsWord operator*(const BsWord& u, const BsWord& v) {
  BsWord w = u;
  for (BsWord::Gen g : v.letters_) w.push(g);
  return w;
}

namespace {

bool is_power_of(long x, long r) {
  while (x % r == 0) x /= r;
  return x == 1;
}

}  // namespace

CommensurabilityResult bs_commensurable(long m, long n) {
  if (m < 2 || n < 2) throw std::invalid_argument("bs_commensurable needs arguments >= 2");
  for (long r = 2; r <= std::min(m, n); ++r)
    if (is_power_of(m, r) && is_power_of(n, r)) return {true, r};
  return {false, 0};
}

ProjMatrix phi_embed(const BsWord& w, const Prime& p) {
  ProjMatrix A = ProjMatrix::diag(Rational(p.value), pow_p(p, -1));
  ProjMatrix B(Rational(1), Rational(1), Rational(0), Rational(1));
  ProjMatrix r;
  for (BsWord::Gen g : w.letters()) {
    switch (g) {
      case BsWord::Gen::kA: r = r * A; break;
      case BsWord::Gen::kAInv: r = r * A.inverse(); break;
      case BsWord::Gen::kB: r = r * B; break;
      case BsWord::Gen::kBInv: r = r * B.inverse(); break;
    }
  }
  return r;
}

Rational upper_boundary_distance(const UpperBoundaryPoint& P, const UpperBoundaryPoint& Q,
                                 long n) {
  if (n < 2) throw std::invalid_argument("tree valence parameter must be >= 2");
  if (P.base_height != Q.base_height || P.digits.size() != Q.digits.size())
    throw std::invalid_argument("encodings use different height windows");
  std::size_t c = 0;
  while (c < P.digits.size() && P.digits[c] == Q.digits[c]) ++c;
  if (c == P.digits.size()) return Rational(0);
  long k = P.base_height + static_cast<long>(c);
  Integer nk = ipow(Integer(n), static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? make_rat(Integer(1), nk) : Rational(nk);
}

HorostripWidth horostrip_width(const Prime& p, const Rational& H) {
  // Between fiber heights h and p²h; the ratio is height-independent.
  Rational h = H;
  Rational ratio((Rational(p.value * p.value) * h) / h);
  return HorostripWidth{LogDist(ratio), 1};
}

}  // namespace horotree
