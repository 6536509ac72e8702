#pragma once

#include <string>
#include <vector>

#include "horotree/projmatrix.hpp"
#include "horotree/rational.hpp"

namespace horotree {

// Vertex of the Bruhat-Tits tree T_p: the lattice class spanned by the
// columns of [[p^m, b], [0, 1]], with b the canonical offset in [0, p^m).
struct TreeVertex {
  long m = 0;
  Rational b = Rational(0);

  friend bool operator==(const TreeVertex& u, const TreeVertex& v) {
    return u.m == v.m && u.b == v.b;
  }
  friend bool operator<(const TreeVertex& u, const TreeVertex& v) {
    if (u.m != v.m) return u.m < v.m;
    return u.b < v.b;
  }
};

std::string vertex_str(const TreeVertex& v);  // "m:b"

using TreeEnd = BoundaryPoint;

// Canonical representative of x modulo p^m Z_(p): the unique value in
// [0, p^m) with p-power denominator congruent to x.
Rational reduce_mod_pm(const Rational& x, long m, const Prime& p);

TreeVertex canonicalize(const ProjMatrix& basis, const Prime& p);

// [[p^m, b], [0, 1]] as a projective class.
ProjMatrix vertex_basis(const TreeVertex& v, const Prime& p);

// p up-neighbors (height m+1) in offset order, then the down-neighbor.
std::vector<TreeVertex> neighbors(const TreeVertex& v, const Prime& p);

long tree_distance(const TreeVertex& u, const TreeVertex& v, const Prime& p);

TreeVertex act(const ProjMatrix& g, const TreeVertex& v, const Prime& p);

inline BoundaryPoint mobius_end(const ProjMatrix& g, const TreeEnd& e) {
  return g.mobius(e);
}

inline long tree_height(const TreeVertex& v) { return v.m; }

// Geodesic line between two distinct rational ends.  end(α), α finite, is
// the limit of (m, α mod p^m) as m → +∞; end(∞) the limit of (m, 0) as
// m → −∞.  Two finite ends join at the confluence vertex of height
// val_p(α − β).
struct TreeLine {
  TreeEnd e1, e2;  // normalized so e1 < e2

  friend bool operator==(const TreeLine& k, const TreeLine& l) {
    return k.e1 == l.e1 && k.e2 == l.e2;
  }
};

TreeLine line_between_ends(const TreeEnd& e1, const TreeEnd& e2, const Prime& p);

// Confluence height for two finite ends; lines through ∞ have none.
bool line_has_confluence(const TreeLine& l);
long line_confluence(const TreeLine& l, const Prime& p);

// Line vertices with height in [lo, hi], in geodesic order.
std::vector<TreeVertex> line_vertices(const TreeLine& l, long lo, long hi, const Prime& p);

bool on_line(const TreeVertex& v, const TreeLine& l, const Prime& p);

long dist_to_line(const TreeVertex& v, const TreeLine& l, const Prime& p);

// Ball of tree radius r around center, sorted by (m, b).
std::vector<TreeVertex> tree_ball(const TreeVertex& center, long radius, const Prime& p);

}  // namespace horotree
