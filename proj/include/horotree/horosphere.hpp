#pragma once

#include <vector>

#include "horotree/horoball.hpp"
#include "horotree/tree.hpp"

namespace horotree {

// Horosphere σ_α of H² × T_p: one horoball per tree vertex, all based at α.
struct Horosphere {
  BoundaryPoint base;
  Rational H;  // packing parameter, > 1
};

// Determinant-1 integral matrix sending ∞ to α (identity for α = ∞); its
// first column is (a, c) for α = a/c in lowest terms.
ProjMatrix transporter_from_infinity(const BoundaryPoint& alpha);

// σ_∞ carries (∞, p^m H) over (m, b); finite bases are transported.  The
// result does not depend on the transporter choice.
Horoball fiber(const Horosphere& sigma, const TreeVertex& v, const Prime& p);

HoroballGap fiber_distance(const BoundaryPoint& alpha, const BoundaryPoint& beta,
                           const TreeVertex& v, const Rational& H, const Prime& p);

// The tree line along which σ_α and σ_β stay at their minimal fiber
// distance; coincides with the geodesic between the two ends.
TreeLine closeness_line(const BoundaryPoint& alpha, const BoundaryPoint& beta,
                        const Prime& p);

struct ProfileRow {
  TreeVertex v;
  long k;  // tree distance to the closeness line
  Rational argument;
};

// Center of the confluence region of the pair's closeness line.
TreeVertex profile_center(const BoundaryPoint& alpha, const BoundaryPoint& beta,
                          const Prime& p);

// Rows (v, k, argument) over the tree ball of the given radius around the
// confluence region, in (m, b) order.
std::vector<ProfileRow> growth_profile(const BoundaryPoint& alpha,
                                       const BoundaryPoint& beta, long radius,
                                       const Rational& H, const Prime& p);
std::vector<ProfileRow> growth_profile_serial(const BoundaryPoint& alpha,
                                              const BoundaryPoint& beta, long radius,
                                              const Rational& H, const Prime& p);

// Exact growth law: argument = (on-line argument) * p^{2k}.  Returns the rows
// violating it (empty when the law holds on the profile).
std::vector<ProfileRow> growth_law_violations(const std::vector<ProfileRow>& rows,
                                              const Prime& p);

}  // namespace horotree
