#include "horotree/projmatrix.hpp"

#include <sstream>

namespace horotree {

std::string boundary_str(const BoundaryPoint& x) {
  return x.infinite ? "inf" : rat_str(x.value);
}

BoundaryPoint parse_boundary(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "inf" || t == "oo" || t == "Inf" || t == "INF" || t == "∞")
    return BoundaryPoint::inf();
  return BoundaryPoint::of(parse_rational(t));
}

ProjMatrix::ProjMatrix(const Rational& a, const Rational& b, const Rational& c,
                       const Rational& d) {
  Integer lcm = 1;
  for (const Rational* q : {&a, &b, &c, &d}) {
    Integer den = q->get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  e_[0] = Integer(a.get_num() * (lcm / a.get_den()));
  e_[1] = Integer(b.get_num() * (lcm / b.get_den()));
  e_[2] = Integer(c.get_num() * (lcm / c.get_den()));
  e_[3] = Integer(d.get_num() * (lcm / d.get_den()));
  canonicalize_();
}

void ProjMatrix::canonicalize_() {
  if (e_[0] * e_[3] == e_[1] * e_[2]) throw std::invalid_argument("singular matrix");
  Integer g = 0;
  for (const auto& x : e_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (auto& x : e_) x /= g;
  for (const auto& x : e_) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : e_) y = -y;
    break;
  }
}

ProjMatrix ProjMatrix::inverse() const {
  ProjMatrix r;
  r.e_ = {e_[3], -e_[1], -e_[2], e_[0]};
  r.canonicalize_();
  return r;
}

BoundaryPoint ProjMatrix::mobius(const BoundaryPoint& x) const {
  if (x.infinite) {
    if (e_[2] == 0) return BoundaryPoint::inf();
    return BoundaryPoint::of(make_rat(e_[0], e_[2]));
  }
  Rational den = Rational(e_[2]) * x.value + Rational(e_[3]);
  if (den == 0) return BoundaryPoint::inf();
  Rational num = Rational(e_[0]) * x.value + Rational(e_[1]);
  return BoundaryPoint::of(Rational(num / den));
}

ProjMatrix operator*(const ProjMatrix& g, const ProjMatrix& h) {
  ProjMatrix r;
  r.e_ = {g.e_[0] * h.e_[0] + g.e_[1] * h.e_[2], g.e_[0] * h.e_[1] + g.e_[1] * h.e_[3],
          g.e_[2] * h.e_[0] + g.e_[3] * h.e_[2], g.e_[2] * h.e_[1] + g.e_[3] * h.e_[3]};
  r.canonicalize_();
  return r;
}

std::string ProjMatrix::str() const {
  std::ostringstream os;
  os << e_[0] << "," << e_[1] << ";" << e_[2] << "," << e_[3];
  return os.str();
}

ProjMatrix parse_projmatrix(const std::string& s) {
  auto semi = s.find(';');
  if (semi == std::string::npos) throw std::invalid_argument("matrix needs 'a,b;c,d'");
  std::string top = s.substr(0, semi), bot = s.substr(semi + 1);
  auto split = [](const std::string& row) {
    auto comma = row.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("matrix row needs 'x,y'");
    return std::pair<std::string, std::string>(row.substr(0, comma), row.substr(comma + 1));
  };
  auto [a, b] = split(top);
  auto [c, d] = split(bot);
  return ProjMatrix(parse_rational(a), parse_rational(b), parse_rational(c),
                    parse_rational(d));
}

ProjMatrix proj_pow(const ProjMatrix& g, long e) {
  ProjMatrix base = e < 0 ? g.inverse() : g;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  ProjMatrix acc;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

}  // namespace horotree
