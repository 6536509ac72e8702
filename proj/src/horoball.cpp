#include "horotree/horoball.hpp"

namespace horotree {

Horoball horoball_image(const ProjMatrix& g, const Horoball& h) {
  Rational absdet(abs(g.det()));
  if (h.base.infinite) {
    if (g.c() == 0) {
      Rational t = absdet / Rational(g.d() * g.d()) * h.size;
      return Horoball{BoundaryPoint::inf(), t};
    }
    Rational d = absdet / (Rational(g.c() * g.c()) * h.size);
    return Horoball{BoundaryPoint::of(make_rat(g.a(), g.c())), d};
  }
  Rational w = Rational(g.c()) * h.base.value + Rational(g.d());
  if (w == 0) {
    Rational t = absdet / (Rational(g.c() * g.c()) * h.size);
    return Horoball{BoundaryPoint::inf(), t};
  }
  Rational d = absdet * h.size / Rational(w * w);
  return Horoball{g.mobius(h.base), d};
}

HoroballGap horoball_distance(const Horoball& h1, const Horoball& h2) {
  if (h1.base == h2.base)
    throw std::invalid_argument("horoballs at the same base have no gap distance");
  if (h1.base.infinite || h2.base.infinite) {
    const Horoball& top = h1.base.infinite ? h1 : h2;
    const Horoball& low = h1.base.infinite ? h2 : h1;
    return HoroballGap{Rational(top.size / low.size)};
  }
  Rational gap = h1.base.value - h2.base.value;
  return HoroballGap{Rational(gap * gap / (h1.size * h2.size))};
}

Horoball base_horoball(const BoundaryPoint& alpha, const Rational& H) {
  if (H <= 1) throw std::invalid_argument("packing parameter H must exceed 1");
  if (alpha.infinite) return Horoball{alpha, H};
  Integer c = alpha.value.get_den();
  return Horoball{alpha, Rational(Rational(1) / (Rational(c * c) * H))};
}

}  // namespace horotree
