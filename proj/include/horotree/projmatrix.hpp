#pragma once

#include <array>
#include <string>

#include "horotree/rational.hpp"

namespace horotree {

// Point of Q ∪ {∞}.
struct BoundaryPoint {
  bool infinite = false;
  Rational value = Rational(0);  // meaningful iff !infinite

  static BoundaryPoint inf() { return BoundaryPoint{true, Rational(0)}; }
  static BoundaryPoint of(Rational v) { return BoundaryPoint{false, std::move(v)}; }

  friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator<(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.infinite != b.infinite) return !a.infinite;  // ∞ sorts last
    if (a.infinite) return false;
    return a.value < b.value;
  }
};

std::string boundary_str(const BoundaryPoint& x);
BoundaryPoint parse_boundary(const std::string& s);  // "inf", "oo" or a rational

// Nonsingular 2x2 rational matrix modulo nonzero scalars.  Stored in the
// canonical representative: coprime integer entries with the first nonzero
// entry (scanning a, b, c, d) positive.  Equality is structural.
class ProjMatrix {
 public:
  ProjMatrix() : e_{1, 0, 0, 1} {}  // identity
  ProjMatrix(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

  static ProjMatrix identity() { return ProjMatrix(); }
  static ProjMatrix diag(const Rational& a, const Rational& d) {
    return ProjMatrix(a, Rational(0), Rational(0), d);
  }

  const Integer& a() const { return e_[0]; }
  const Integer& b() const { return e_[1]; }
  const Integer& c() const { return e_[2]; }
  const Integer& d() const { return e_[3]; }

  // Determinant of the canonical representative.
  Integer det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

  ProjMatrix inverse() const;
  bool is_identity() const { return *this == identity(); }

  BoundaryPoint mobius(const BoundaryPoint& x) const;

  friend ProjMatrix operator*(const ProjMatrix& g, const ProjMatrix& h);
  friend bool operator==(const ProjMatrix& g, const ProjMatrix& h) { return g.e_ == h.e_; }

  std::string str() const;  // "a,b;c,d"

 private:
  void canonicalize_();
  std::array<Integer, 4> e_;
};

ProjMatrix parse_projmatrix(const std::string& s);  // "a,b;c,d" rational entries

// Repeated projective squaring.
ProjMatrix proj_pow(const ProjMatrix& g, long e);

}  // namespace horotree
