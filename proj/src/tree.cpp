#include "horotree/tree.hpp"

#include <algorithm>
#include <set>

namespace horotree {

std::string vertex_str(const TreeVertex& v) {
  return std::to_string(v.m) + ":" + rat_str(v.b);
}

Rational reduce_mod_pm(const Rational& x, long m, const Prime& p) {
  if (x == 0) return Rational(0);
  Valuation v = val_p(x, p);
  if (v.value() >= m) return Rational(0);
  // k is the p-depth of the denominator; v < m forces m + k > 0.
  auto [k, den_rest] = strip_p(Integer(x.get_den()), p);
  Integer mod = ipow(p.big(), static_cast<unsigned long>(m + k));
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den_rest.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::logic_error("denominator not invertible mod p^e");
  Integer u;
  Integer prod = Integer(x.get_num()) * inv;
  mpz_mod(u.get_mpz_t(), prod.get_mpz_t(), mod.get_mpz_t());
  return make_rat(u, ipow(p.big(), static_cast<unsigned long>(k)));
}

TreeVertex canonicalize(const ProjMatrix& basis, const Prime& p) {
  Rational a(basis.a()), b(basis.b()), c(basis.c()), d(basis.d());
  // Columns (a,c), (b,d) span the lattice.  Put the lower-valuation bottom
  // entry in the d slot, then clear c with a Z_(p)-column operation.
  if (d == 0 || (c != 0 && val_p(c, p) < val_p(d, p))) {
    std::swap(a, b);
    std::swap(c, d);
  }
  if (c != 0) a -= Rational(c / d) * b;
  Rational top = Rational(a / d);
  Rational off = Rational(b / d);
  long m = val_p(top, p).value();
  return TreeVertex{m, reduce_mod_pm(off, m, p)};
}

ProjMatrix vertex_basis(const TreeVertex& v, const Prime& p) {
  return ProjMatrix(pow_p(p, v.m), v.b, Rational(0), Rational(1));
}

std::vector<TreeVertex> neighbors(const TreeVertex& v, const Prime& p) {
  std::vector<TreeVertex> out;
  out.reserve(p.value + 1);
  Rational pm = pow_p(p, v.m);
  for (long t = 0; t < p.value; ++t)
    out.push_back(TreeVertex{v.m + 1, Rational(v.b + t * pm)});
  out.push_back(TreeVertex{v.m - 1, reduce_mod_pm(v.b, v.m - 1, p)});
  return out;
}

long tree_distance(const TreeVertex& u, const TreeVertex& v, const Prime& p) {
  long mn = std::min(u.m, v.m);
  Valuation w = val_p(Rational(u.b - v.b), p);
  if (!w.is_infinite() && w.value() < mn) mn = w.value();
  return u.m + v.m - 2 * mn;
}

TreeVertex act(const ProjMatrix& g, const TreeVertex& v, const Prime& p) {
  return canonicalize(g * vertex_basis(v, p), p);
}

TreeLine line_between_ends(const TreeEnd& e1, const TreeEnd& e2, const Prime& p) {
  (void)p;
  if (e1 == e2) throw std::invalid_argument("line needs two distinct ends");
  TreeLine l{e1, e2};
  if (l.e2 < l.e1) std::swap(l.e1, l.e2);
  return l;
}

bool line_has_confluence(const TreeLine& l) { return !l.e2.infinite; }

long line_confluence(const TreeLine& l, const Prime& p) {
  if (!line_has_confluence(l)) throw std::logic_error("line through ∞ has no confluence");
  return val_p(Rational(l.e1.value - l.e2.value), p).value();
}

std::vector<TreeVertex> line_vertices(const TreeLine& l, long lo, long hi, const Prime& p) {
  std::vector<TreeVertex> out;
  if (lo > hi) return out;
  if (l.e2.infinite) {
    // {(m, α mod p^m)}, ascending height from the ∞ side.
    for (long m = lo; m <= hi; ++m)
      out.push_back(TreeVertex{m, reduce_mod_pm(l.e1.value, m, p)});
    return out;
  }
  long nu = line_confluence(l, p);
  for (long m = hi; m >= std::max(lo, nu); --m)
    out.push_back(TreeVertex{m, reduce_mod_pm(l.e1.value, m, p)});
  for (long m = std::max(lo, nu) + (std::max(lo, nu) == nu ? 1 : 0); m <= hi; ++m)
    out.push_back(TreeVertex{m, reduce_mod_pm(l.e2.value, m, p)});
  return out;
}

bool on_line(const TreeVertex& v, const TreeLine& l, const Prime& p) {
  if (l.e2.infinite) return v.b == reduce_mod_pm(l.e1.value, v.m, p);
  if (v.m < line_confluence(l, p)) return false;
  return v.b == reduce_mod_pm(l.e1.value, v.m, p) ||
         v.b == reduce_mod_pm(l.e2.value, v.m, p);
}

namespace {

// min(m, val_p(b − α)) as a long (val ∞ caps at m).
long capped_val(const TreeVertex& v, const Rational& alpha, const Prime& p) {
  Valuation w = val_p(Rational(v.b - alpha), p);
  if (w.is_infinite() || w.value() >= v.m) return v.m;
  return w.value();
}

}  // namespace

long dist_to_line(const TreeVertex& v, const TreeLine& l, const Prime& p) {
  if (l.e2.infinite) return v.m - capped_val(v, l.e1.value, p);
  long nu = line_confluence(l, p);
  long ca = capped_val(v, l.e1.value, p);
  long cb = capped_val(v, l.e2.value, p);
  long da = ca >= nu ? v.m - ca : v.m + nu - 2 * ca;
  long db = cb >= nu ? v.m - cb : v.m + nu - 2 * cb;
  return std::min(da, db);
}

std::vector<TreeVertex> tree_ball(const TreeVertex& center, long radius, const Prime& p) {
  std::set<TreeVertex> seen{center};
  std::vector<TreeVertex> frontier{center};
  for (long r = 0; r < radius; ++r) {
    std::vector<TreeVertex> next;
    for (const auto& v : frontier)
      for (const auto& w : neighbors(v, p))
        if (seen.insert(w).second) next.push_back(w);
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace horotree
