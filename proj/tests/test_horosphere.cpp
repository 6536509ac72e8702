#include <doctest.h>

#include <random>

#include "horotree/horosphere.hpp"

using namespace horotree;

namespace {

BoundaryPoint fin(const Rational& q) { return BoundaryPoint::of(q); }
BoundaryPoint fin(long q) { return BoundaryPoint::of(Rational(q)); }

}  // namespace

TEST_CASE("fibers of the horosphere at infinity follow the height formula") {
  Prime p(2);
  Rational H(2);
  Horosphere inf{BoundaryPoint::inf(), H};
  CHECK(fiber(inf, TreeVertex{0, Rational(0)}, p) ==
        Horoball{BoundaryPoint::inf(), Rational(2)});
  // (2(S+T), s p^{2T}) carries height p^{2(S+T)} H: here S=1, T=2, s=3.
  CHECK(fiber(inf, TreeVertex{6, Rational(12)}, p) ==
        Horoball{BoundaryPoint::inf(), Rational(128)});
  CHECK(fiber(inf, TreeVertex{-1, Rational(0)}, p) ==
        Horoball{BoundaryPoint::inf(), Rational(1)});
}

TEST_CASE("fiber of a finite-based horosphere via transporters") {
  Prime p(2);
  Rational H(2);
  Horosphere zero{fin(0), H};
  CHECK(fiber(zero, TreeVertex{0, Rational(0)}, p) == Horoball{fin(0), make_rat(1, 2)});
  // hand-computed off-line fibers
  CHECK(fiber(zero, TreeVertex{1, Rational(1)}, p) == Horoball{fin(0), make_rat(1, 4)});
  CHECK(fiber(zero, TreeVertex{2, Rational(1)}, p) == Horoball{fin(0), make_rat(1, 8)});
}

TEST_CASE("fibers do not depend on the transporter") {
  Rational H(2);
  for (long pv : {2L, 3L}) {
    Prime p(pv);
    for (const auto& alpha :
         {fin(0), fin(1), fin(make_rat(1, 2)), fin(make_rat(-2, 3))}) {
      Horosphere sigma{alpha, H};
      ProjMatrix g = transporter_from_infinity(alpha);
      std::vector<ProjMatrix> stab = {
          ProjMatrix(Rational(1), Rational(1), Rational(0), Rational(1)),
          ProjMatrix(Rational(1), make_rat(-1, pv), Rational(0), Rational(1)),
          ProjMatrix::diag(Rational(pv), make_rat(1, pv)),
          ProjMatrix::diag(Rational(1), Rational(pv))};
      for (const auto& u : stab) {
        ProjMatrix g2 = g * u;
        REQUIRE(mobius_point(g2, BoundaryPoint::inf()) == alpha);
        for (const auto& v : tree_ball(TreeVertex{0, Rational(0)}, 2, p)) {
          TreeVertex w = act(g2.inverse(), v, p);
          Horoball via =
              horoball_image(g2, Horoball{BoundaryPoint::inf(), Rational(pow_p(p, w.m) * H)});
          CHECK(via == fiber(sigma, v, p));
        }
      }
    }
  }
}

TEST_CASE("fibers transport equivariantly under PSL2(Z[1/p])") {
  Rational H(2);
  Prime p(2);
  std::vector<ProjMatrix> gamma = {
      ProjMatrix::diag(Rational(2), make_rat(1, 2)),
      ProjMatrix(Rational(1), Rational(1), Rational(0), Rational(1)),
      ProjMatrix(Rational(0), Rational(-1), Rational(1), Rational(0)),
      ProjMatrix(Rational(1), Rational(0), Rational(1), Rational(1)),
      ProjMatrix(Rational(1), Rational(0), Rational(1), Rational(4))};  // det 4 = 2²
  for (const auto& g : gamma)
    for (const auto& alpha : {BoundaryPoint::inf(), fin(0), fin(1)}) {
      Horosphere sigma{alpha, H};
      Horosphere image_sigma{mobius_point(g, alpha), H};
      for (const auto& v : tree_ball(TreeVertex{0, Rational(0)}, 2, p))
        CHECK(fiber(image_sigma, act(g, v, p), p) ==
              horoball_image(g, fiber(sigma, v, p)));
    }
}

TEST_CASE("fiber distance on and off the diagonal line") {
  Prime p(2);
  for (const Rational& H : {make_rat(3, 2), Rational(2), Rational(5)}) {
    CHECK(fiber_distance(fin(0), BoundaryPoint::inf(), TreeVertex{0, Rational(0)}, H, p)
              .argument == Rational(H * H));
  }
  Rational H(2);
  for (long m = -4; m <= 4; ++m)
    CHECK(fiber_distance(fin(0), BoundaryPoint::inf(), TreeVertex{m, Rational(0)}, H, p)
              .argument == Rational(4));
  // dist 1 and 2 from the line: arguments p² H² and p⁴ H²
  CHECK(fiber_distance(fin(0), BoundaryPoint::inf(), TreeVertex{1, Rational(1)}, H, p)
            .argument == Rational(16));
  CHECK(fiber_distance(fin(0), BoundaryPoint::inf(), TreeVertex{2, Rational(1)}, H, p)
            .argument == Rational(64));
  CHECK_THROWS_AS(fiber_distance(fin(0), fin(0), TreeVertex{0, Rational(0)}, H, p),
                  std::invalid_argument);
}

TEST_CASE("closeness lines and their distinctness") {
  Prime p(2);
  CHECK(closeness_line(fin(0), BoundaryPoint::inf(), p) ==
        line_between_ends(fin(0), BoundaryPoint::inf(), p));
  CHECK(line_confluence(closeness_line(fin(1), fin(2), p), p) == 0);

  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  for (int trial = 0; trial < 10; ++trial) {
    Rational a = make_rat(num(rng), den(rng));
    Rational b = make_rat(num(rng), den(rng));
    Rational c = make_rat(num(rng), den(rng));
    if (a == b || a == c || b == c) {
      --trial;
      continue;
    }
    CHECK_FALSE(closeness_line(fin(a), fin(b), p) == closeness_line(fin(a), fin(c), p));
  }
}

TEST_CASE("growth profiles: constancy on the line, p^{2k} law off it") {
  Rational H(2);
  for (long pv : {2L, 3L, 5L}) {
    Prime p(pv);
    long radius = pv == 5 ? 3 : 4;
    std::vector<std::pair<BoundaryPoint, BoundaryPoint>> pairs = {
        {fin(0), BoundaryPoint::inf()},
        {fin(0), fin(1)},
        {fin(1), BoundaryPoint::inf()},
        {fin(make_rat(1, 2)), fin(3)}};
    for (const auto& [alpha, beta] : pairs) {
      auto rows = growth_profile(alpha, beta, radius, H, p);
      REQUIRE(!rows.empty());
      CHECK(growth_law_violations(rows, p).empty());

      Rational on_line(0);
      for (const auto& r : rows)
        if (r.k == 0) {
          if (on_line == 0)
            on_line = r.argument;
          else
            CHECK(r.argument == on_line);
        }
      REQUIRE(on_line > 0);
      for (const auto& r : rows) {
        if (r.k > 0) CHECK(r.argument > on_line);  // minimum only on the line
        CHECK(r.argument == Rational(on_line * pow_p(p, 2 * r.k)));
      }
    }
  }
}

TEST_CASE("parallel and serial profiles agree row by row") {
  Prime p(3);
  Rational H(2);
  auto a = growth_profile(fin(0), BoundaryPoint::inf(), 4, H, p);
  auto b = growth_profile_serial(fin(0), BoundaryPoint::inf(), 4, H, p);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].v == b[i].v);
    CHECK(a[i].k == b[i].k);
    CHECK(a[i].argument == b[i].argument);
  }
}

TEST_CASE("profile center sits on the closeness line") {
  Prime p(2);
  CHECK(profile_center(fin(0), BoundaryPoint::inf(), p) == TreeVertex{0, Rational(0)});
  CHECK(profile_center(fin(1), fin(2), p) == TreeVertex{0, Rational(0)});
  CHECK(on_line(profile_center(fin(make_rat(1, 2)), fin(3), p),
                closeness_line(fin(make_rat(1, 2)), fin(3), p), p));
}
