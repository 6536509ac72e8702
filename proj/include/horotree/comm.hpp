#pragma once

#include <vector>

#include "horotree/projmatrix.hpp"
#include "horotree/rational.hpp"

namespace horotree {

// g with g(α) = 0 and g(β) = ∞.
ProjMatrix transporter(const BoundaryPoint& alpha, const BoundaryPoint& beta);

// g · M · g⁻¹ in canonical projective form.
ProjMatrix conjugate(const ProjMatrix& g, const ProjMatrix& M);

// The projective class of diag(1, α): x ↦ x/α on the boundary, the rational
// stand-in for Ad(diag(1/√α, √α)).
ProjMatrix diagonal_rescaler(const Rational& alpha);

// Prime-to-p denominator bound of g · w · g⁻¹ over freely reduced words w of
// bounded length; `stable` when the bound no longer grew at the last length.
struct DenominatorProfile {
  Integer d;
  long maxlen = 0;
  bool stable = false;
  std::vector<Integer> cumulative;  // d over words of length ≤ ℓ, ℓ = 0..maxlen
};

DenominatorProfile denominator_profile(const ProjMatrix& g,
                                       const std::vector<ProjMatrix>& generators,
                                       long maxlen, const Prime& p);
DenominatorProfile denominator_profile_serial(const ProjMatrix& g,
                                              const std::vector<ProjMatrix>& generators,
                                              long maxlen, const Prime& p);

}  // namespace horotree
