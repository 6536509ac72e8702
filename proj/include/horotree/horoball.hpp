#pragma once

#include "horotree/projmatrix.hpp"
#include "horotree/rational.hpp"

namespace horotree {

// Horoball of the upper half-plane: Euclidean height of the boundary line
// when based at ∞, Euclidean diameter of the tangent disk at a finite base.
struct Horoball {
  BoundaryPoint base;
  Rational size;

  friend bool operator==(const Horoball& g, const Horoball& h) {
    return g.base == h.base && g.size == h.size;
  }
};

// Separation of two horoballs at distinct bases: the hyperbolic distance is
// log(argument) when argument > 1, and the balls meet when argument <= 1.
struct HoroballGap {
  Rational argument;

  bool overlap() const { return argument <= 1; }
  LogDist distance() const {
    if (overlap()) throw std::logic_error("overlapping horoballs have no gap distance");
    return LogDist(argument);
  }
};

inline BoundaryPoint mobius_point(const ProjMatrix& g, const BoundaryPoint& x) {
  return g.mobius(x);
}

// Exact image of h under the isometry induced by g.  The size transform uses
// |det| of the canonical representative, so any nonsingular rational class
// acts without leaving Q.
Horoball horoball_image(const ProjMatrix& g, const Horoball& h);

HoroballGap horoball_distance(const Horoball& h1, const Horoball& h2);

// Fiber-[L0] horoball of the horosphere based at α with packing parameter
// H > 1: (∞, H), or (a/c, 1/(c²H)) for α = a/c in lowest terms.
Horoball base_horoball(const BoundaryPoint& alpha, const Rational& H);

}  // namespace horotree
