#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horotree/projmatrix.hpp"
#include "horotree/rational.hpp"

namespace horotree {

// Word in the generators of BS(1, n) = <a, b | a b a⁻¹ = bⁿ>, kept freely
// reduced.  Letters: 'a', 'b' generators, 'A', 'B' their inverses.
class BsWord {
 public:
  enum class Gen { kA, kAInv, kB, kBInv };

  BsWord() = default;
  explicit BsWord(const std::string& letters);

  void push(Gen g);
  const std::vector<Gen>& letters() const { return letters_; }
  std::string str() const;

  friend BsWord operator*(const BsWord& u, const BsWord& v);

 private:
  std::vector<Gen> letters_;
};

// True iff m and n are powers of a common integer root; the smallest such
// root is returned alongside.
struct CommensurabilityResult {
  bool commensurable;
  long root;  // smallest common root when commensurable, else 0
};
CommensurabilityResult bs_commensurable(long m, long n);

// Φ: BS(1, p²) → PSL₂(Q_p), a ↦ diag(p, 1/p), b ↦ [[1,1],[0,1]].
ProjMatrix phi_embed(const BsWord& w, const Prime& p);

// Coherently oriented line in T_n over a finite height window: base height
// plus upward branch choices.
struct UpperBoundaryPoint {
  long base_height = 0;
  std::vector<unsigned> digits;
};

// n^{-k} for the greatest height k below which the encoded planes agree;
// 0 for identical encodings.  Windows must match.
Rational upper_boundary_distance(const UpperBoundaryPoint& P, const UpperBoundaryPoint& Q,
                                 long n);

// Width of the horostrip between consecutive combinatorial heights: the
// intrinsic hyperbolic part is log(p²), the ambient metric adds one tree
// edge.
struct HorostripWidth {
  LogDist intrinsic;
  long ambient_extra_edges;  // 1
};
HorostripWidth horostrip_width(const Prime& p, const Rational& H);

}  // namespace horotree
