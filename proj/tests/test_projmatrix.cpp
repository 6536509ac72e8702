#include <doctest.h>

#include "horotree/projmatrix.hpp"

using namespace horotree;

TEST_CASE("canonical form clears denominators and fixes signs") {
  ProjMatrix g(make_rat(1, 2), Rational(0), Rational(0), make_rat(1, 3));
  CHECK(g == ProjMatrix(Rational(3), Rational(0), Rational(0), Rational(2)));
  ProjMatrix h(Rational(-2), Rational(4), Rational(0), Rational(-6));
  CHECK(h.a() == 1);
  CHECK(h.b() == -2);
  CHECK(h.d() == 3);
  CHECK_THROWS_AS(ProjMatrix(Rational(1), Rational(2), Rational(2), Rational(4)),
                  std::invalid_argument);
}

TEST_CASE("multiplication and inverse act projectively") {
  ProjMatrix A = ProjMatrix::diag(Rational(2), make_rat(1, 2));
  ProjMatrix B(Rational(1), Rational(1), Rational(0), Rational(1));
  CHECK((A * A.inverse()).is_identity());
  CHECK((A * B * (A * B).inverse()).is_identity());
  ProjMatrix rel = A * B * A.inverse();
  CHECK(rel == ProjMatrix(Rational(1), Rational(4), Rational(0), Rational(1)));
}

TEST_CASE("mobius action with infinity conventions") {
  ProjMatrix S(Rational(0), Rational(-1), Rational(1), Rational(0));
  CHECK(S.mobius(BoundaryPoint::of(Rational(0))) == BoundaryPoint::inf());
  CHECK(S.mobius(BoundaryPoint::inf()) == BoundaryPoint::of(Rational(0)));
  ProjMatrix T(Rational(1), Rational(1), Rational(0), Rational(1));
  CHECK(T.mobius(BoundaryPoint::inf()) == BoundaryPoint::inf());
  CHECK(T.mobius(BoundaryPoint::of(Rational(0))) == BoundaryPoint::of(Rational(1)));
}

TEST_CASE("matrix parsing round trip") {
  ProjMatrix g = parse_projmatrix("1,-1/2;0,3");
  CHECK(g == ProjMatrix(Rational(2), Rational(-1), Rational(0), Rational(6)));
  CHECK(parse_projmatrix(g.str()) == g);
  CHECK_THROWS_AS(parse_projmatrix("1,2,3"), std::invalid_argument);
}

TEST_CASE("projective powers") {
  ProjMatrix B(Rational(1), Rational(1), Rational(0), Rational(1));
  CHECK(proj_pow(B, 9) == ProjMatrix(Rational(1), Rational(9), Rational(0), Rational(1)));
  CHECK(proj_pow(B, -2) ==
        ProjMatrix(Rational(1), Rational(-2), Rational(0), Rational(1)));
  CHECK(proj_pow(B, 0).is_identity());
}

TEST_CASE("boundary point parsing") {
  CHECK(parse_boundary("inf") == BoundaryPoint::inf());
  CHECK(parse_boundary("-5/3") == BoundaryPoint::of(make_rat(-5, 3)));
  CHECK(boundary_str(BoundaryPoint::inf()) == "inf");
}
