#include "horotree/horosphere.hpp"

#include <omp.h>

#include <stdexcept>

namespace horotree {

ProjMatrix transporter_from_infinity(const BoundaryPoint& alpha) {
  if (alpha.infinite) return ProjMatrix::identity();
  Integer a = alpha.value.get_num();
  Integer c = alpha.value.get_den();
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  // a s + c t = 1, so [[a, -t], [c, s]] has determinant 1.
  return ProjMatrix(Rational(a), Rational(-t), Rational(c), Rational(s));
}

Horoball fiber(const Horosphere& sigma, const TreeVertex& v, const Prime& p) {
  if (sigma.H <= 1) throw std::invalid_argument("packing parameter H must exceed 1");
  if (sigma.base.infinite)
    return Horoball{BoundaryPoint::inf(), Rational(pow_p(p, v.m) * sigma.H)};
  ProjMatrix g = transporter_from_infinity(sigma.base);
  TreeVertex w = act(g.inverse(), v, p);
  Horoball top{BoundaryPoint::inf(), Rational(pow_p(p, w.m) * sigma.H)};
  return horoball_image(g, top);
}

HoroballGap fiber_distance(const BoundaryPoint& alpha, const BoundaryPoint& beta,
                           const TreeVertex& v, const Rational& H, const Prime& p) {
  if (alpha == beta) throw std::invalid_argument("fiber_distance needs distinct bases");
  return horoball_distance(fiber(Horosphere{alpha, H}, v, p),
                           fiber(Horosphere{beta, H}, v, p));
}

TreeLine closeness_line(const BoundaryPoint& alpha, const BoundaryPoint& beta,
                        const Prime& p) {
  return line_between_ends(alpha, beta, p);
}

TreeVertex profile_center(const BoundaryPoint& alpha, const BoundaryPoint& beta,
                          const Prime& p) {
  TreeLine l = line_between_ends(alpha, beta, p);
  if (!line_has_confluence(l))
    return TreeVertex{0, reduce_mod_pm(l.e1.value, 0, p)};
  long nu = line_confluence(l, p);
  return TreeVertex{nu, reduce_mod_pm(l.e1.value, nu, p)};
}

std::vector<ProfileRow> growth_profile(const BoundaryPoint& alpha,
                                       const BoundaryPoint& beta, long radius,
                                       const Rational& H, const Prime& p) {
  TreeLine l = line_between_ends(alpha, beta, p);
  std::vector<TreeVertex> ball = tree_ball(profile_center(alpha, beta, p), radius, p);
  std::vector<ProfileRow> rows(ball.size());
  // rows land at fixed indices, so the emitted order matches the serial one
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < ball.size(); ++i) {
    rows[i] = ProfileRow{ball[i], dist_to_line(ball[i], l, p),
                         fiber_distance(alpha, beta, ball[i], H, p).argument};
  }
  return rows;
}

std::vector<ProfileRow> growth_profile_serial(const BoundaryPoint& alpha,
                                              const BoundaryPoint& beta, long radius,
                                              const Rational& H, const Prime& p) {
  TreeLine l = line_between_ends(alpha, beta, p);
  std::vector<TreeVertex> ball = tree_ball(profile_center(alpha, beta, p), radius, p);
  std::vector<ProfileRow> rows;
  rows.reserve(ball.size());
  for (const auto& v : ball)
    rows.push_back(ProfileRow{v, dist_to_line(v, l, p),
                              fiber_distance(alpha, beta, v, H, p).argument});
  return rows;
}

std::vector<ProfileRow> growth_law_violations(const std::vector<ProfileRow>& rows,
                                              const Prime& p) {
  const Rational* base = nullptr;
  for (const auto& r : rows)
    if (r.k == 0) {
      base = &r.argument;
      break;
    }
  if (!base) return rows;  // no on-line row: nothing to anchor the law
  std::vector<ProfileRow> bad;
  for (const auto& r : rows) {
    Rational expect = *base * pow_p(p, 2 * r.k);
    if (r.argument != expect) bad.push_back(r);
  }
  return bad;
}

}  // namespace horotree
