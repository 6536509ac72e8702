#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horotree/rational.hpp"

namespace horotree {

// Point a of the diagonal lattice Δ_Q ⊂ R × Q_p, read as (a, a); both
// magnitudes |a| and |a|_p derive from the one field.
using DeltaPoint = Rational;

struct DeltaSet {
  std::vector<Rational> points;
  std::optional<Integer> height_class;  // declared M, coprime to p
};

// Throws unless every point lies in (1/M)·Z[1/p] for the declared M.
void validate_height_class(const DeltaSet& S, const Prime& p);

// Boundary action of diag(p, 1/p)^k: multiplication by p^{2k}.
Rational scale_act(long k, const Rational& x, const Prime& p);

Rational arch_diam(const std::vector<Rational>& pts);
Rational padic_diam(const std::vector<Rational>& pts, const Prime& p);

// max of the archimedean and p-adic diameters (product metric by maxima).
Rational diam(const DeltaSet& S, const Prime& p);

// min over integers k of diam(p^{2k} S); the scan reduces to the two
// integers bracketing the balance point of the two coordinates.
Rational delta_H(const DeltaSet& S, const Prime& p);
Rational delta_pair(const Rational& x, const Rational& y, const Prime& p);

// Quadruple with a − c = b − d.
struct Parallelogram {
  Rational a, b, c, d;
};

bool is_parallelogram(const Rational& a, const Rational& b, const Rational& c,
                      const Rational& d);

// δ({a,b}) + δ({a,c}).
Rational perimeter(const Parallelogram& P, const Prime& p);

// |ν(b−a) − ν(c−a)|; empty on a degenerate side.
std::optional<long> shape(const Parallelogram& P, const Prime& p);

// Orbit representatives a/(k p^r), gcd(a, p) = 1, r ∈ {0, 1}, of the points
// x with δ({0, x}) ≤ D; finite because |a| ≤ k·D².
struct FundamentalSet {
  Integer k;
  Rational D;
  struct Entry {
    Integer a;
    int r;
  };
  std::vector<Entry> entries;  // sorted by (r, a)
};
FundamentalSet fundamental_set(const Integer& k, const Rational& D, const Prime& p);

struct Threshold {
  long R = 0;
  Integer b1, b2;
  long b3 = 0, b4 = 0;
  long s0 = 0;
  FundamentalSet index;
};

// s0 = max(2·ceil(log_p(B1+B2)), 3·B3², 2·B4) + 2R with R = ceil(log_p K0).
Threshold s_threshold(const Rational& K0, const Integer& k, const Rational& D,
                      const Prime& p);

// Finite tabulated bijection candidate with its declared bilipschitz
// constant.
struct TabulatedMap {
  std::map<Rational, Rational> entries;
  Rational K0 = Rational(1);

  const Rational* lookup(const Rational& x) const;
};

// JSON-lines: optional {"K0": "..."} header, then {"x": "...", "fx": "..."}.
TabulatedMap load_tabulated_map(std::istream& in);
void save_tabulated_map(const TabulatedMap& map, std::ostream& out);

// Prime-to-p part of the lcm of image denominators: the k with
// image ⊂ (1/k)·Z[1/p].
Integer image_height_class(const TabulatedMap& map, const Prime& p);

// The full lattice box (1/(L·p^rmax))·Z ∩ [−bound, bound].
std::vector<Rational> lattice_window(const Integer& L, long rmax, const Rational& bound,
                                     const Prime& p);
TabulatedMap tabulate_linear(const Rational& alpha, const std::vector<Rational>& grid);

struct PlemmaOptions {
  std::optional<Integer> k;        // default: image height class of the map
  std::optional<Rational> D;       // default: K0 · L
  std::optional<Rational> per_bound;  // default: L (the literal coupling)
  long s0_increment = 0;           // optional second pass at s0 + increment
  std::optional<Rational> window;  // |x| bound on grid points
};

struct PlemmaViolation {
  Parallelogram source, image;
};

struct PlemmaReport {
  Threshold threshold;
  Integer k_used;
  Rational D_used;
  Rational per_bound;
  long grid_size = 0;
  long admitted = 0;  // quadruples with per ≤ bound and shape > s0
  std::vector<PlemmaViolation> violations;  // lexicographic (a, b, c) order
  long retried_s0 = 0;
  long retried_admitted = 0;
  std::vector<PlemmaViolation> retried_violations;
};

// Enumerates every parallelogram of the window grid admitted by the
// perimeter and shape thresholds and reports those whose image fails the
// parallelogram relation.
PlemmaReport verify_plemma(const TabulatedMap& map, const Integer& L, const Prime& p,
                           const PlemmaOptions& opts = {});
// Reference implementation: direct triple loop over the grid.
PlemmaReport verify_plemma_serial(const TabulatedMap& map, const Integer& L,
                                  const Prime& p, const PlemmaOptions& opts = {});

struct ExtractOptions {
  std::optional<Rational> window;
};

struct ExtractResult {
  enum class Status { kOk, kFailure, kWindowTooSmall };
  Status status;
  Rational alpha;  // meaningful when kOk
  long s0 = 0;
  std::string witness;
};

// Constructive multiplication-constant extraction on the (1/q)-grid: gate on
// an admissible deep generator, check the difference identity over the
// window, then read off α = φ(1/q)·q.
ExtractResult extract_affine(const TabulatedMap& map, const Integer& q, const Prime& p,
                             const ExtractOptions& opts = {});

// Every sampled distance pair must satisfy d/K − C ≤ d' ≤ K·d + C.
bool qie_check(const std::vector<std::pair<Rational, Rational>>& samples,
               const Rational& K, const Rational& C);

}  // namespace horotree
