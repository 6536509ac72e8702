#include "horotree/comm.hpp"

#include <omp.h>

#include <stdexcept>

namespace horotree {

ProjMatrix transporter(const BoundaryPoint& alpha, const BoundaryPoint& beta) {
  if (alpha == beta) throw std::invalid_argument("transporter needs distinct points");
  ProjMatrix g = [&] {
    if (alpha.infinite)  // x ↦ 1/(x − β)
      return ProjMatrix(Rational(0), Rational(1), Rational(1), Rational(-beta.value));
    if (beta.infinite)  // x ↦ x − α
      return ProjMatrix(Rational(1), Rational(-alpha.value), Rational(0), Rational(1));
    // x ↦ (x − α)/(x − β)
    return ProjMatrix(Rational(1), Rational(-alpha.value), Rational(1),
                      Rational(-beta.value));
  }();
  if (!(g.mobius(alpha) == BoundaryPoint::of(Rational(0))) ||
      !(g.mobius(beta) == BoundaryPoint::inf()))
    throw std::logic_error("transporter failed its defining evaluations");
  return g;
}

ProjMatrix conjugate(const ProjMatrix& g, const ProjMatrix& M) {
  return g * M * g.inverse();
}

ProjMatrix diagonal_rescaler(const Rational& alpha) {
  if (alpha <= 0) throw std::invalid_argument("rescaler needs a positive rational");
  return ProjMatrix::diag(Rational(1), alpha);
}

namespace {

// Prime-to-p denominator lcm of the det-±1 representative of the canonical
// integer class C: entries divide by sqrt(|det C|).
Integer class_denominator(const ProjMatrix& C, const Prime& p) {
  Integer adet = abs(C.det());
  Integer lam;
  mpz_sqrt(lam.get_mpz_t(), adet.get_mpz_t());
  if (lam * lam != adet)
    throw std::invalid_argument("conjugate has no rational det-normalized form");
  Integer d(1);
  for (const Integer* e : {&C.a(), &C.b(), &C.c(), &C.d()}) {
    Integer gcd;
    mpz_gcd(gcd.get_mpz_t(), e->get_mpz_t(), lam.get_mpz_t());
    Integer den = lam / gcd;
    Integer rest = strip_p(den, p).second;
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), rest.get_mpz_t());
  }
  return d;
}

void validate_generators(const std::vector<ProjMatrix>& generators, const Prime& p) {
  if (generators.empty()) throw std::invalid_argument("need at least one generator");
  for (const auto& g : generators) {
    auto [e, rest] = strip_p(abs(g.det()), p);
    if (rest != 1 || e % 2 != 0)
      throw std::invalid_argument("generator " + g.str() + " not in PSL2(Z[1/p])");
  }
}

struct Alphabet {
  std::vector<ProjMatrix> letters;  // generators then inverses
  std::size_t k;

  std::size_t inverse_index(std::size_t i) const { return i < k ? i + k : i - k; }
};

void dfs_words(const Alphabet& al, const ProjMatrix& g, const Prime& p, long maxlen,
               long level, std::size_t last, const ProjMatrix& w,
               std::vector<Integer>& by_length) {
  for (std::size_t i = 0; i < al.letters.size(); ++i) {
    if (level > 0 && i == al.inverse_index(last)) continue;
    ProjMatrix w2 = w * al.letters[i];
    Integer d = class_denominator(conjugate(g, w2), p);
    mpz_lcm(by_length[level + 1].get_mpz_t(), by_length[level + 1].get_mpz_t(),
            d.get_mpz_t());
    if (level + 1 < maxlen) dfs_words(al, g, p, maxlen, level + 1, i, w2, by_length);
  }
}

DenominatorProfile finish_profile(std::vector<Integer> by_length, long maxlen) {
  DenominatorProfile prof;
  prof.maxlen = maxlen;
  prof.cumulative.resize(maxlen + 1);
  Integer acc(1);
  for (long l = 0; l <= maxlen; ++l) {
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), by_length[l].get_mpz_t());
    prof.cumulative[l] = acc;
  }
  prof.d = prof.cumulative[maxlen];
  prof.stable = maxlen >= 1 && prof.cumulative[maxlen] == prof.cumulative[maxlen - 1];
  return prof;
}

}  // namespace

DenominatorProfile denominator_profile(const ProjMatrix& g,
                                       const std::vector<ProjMatrix>& generators,
                                       long maxlen, const Prime& p) {
  if (maxlen < 0) throw std::invalid_argument("maxlen must be nonnegative");
  validate_generators(generators, p);
  Alphabet al;
  al.k = generators.size();
  al.letters = generators;
  for (const auto& h : generators) al.letters.push_back(h.inverse());

  std::vector<Integer> by_length(maxlen + 1, Integer(1));
  if (maxlen > 0) {
#pragma omp parallel
    {
      std::vector<Integer> local(maxlen + 1, Integer(1));
#pragma omp for schedule(dynamic, 1)
      for (std::size_t i = 0; i < al.letters.size(); ++i) {
        ProjMatrix w = al.letters[i];
        Integer d = class_denominator(conjugate(g, w), p);
        mpz_lcm(local[1].get_mpz_t(), local[1].get_mpz_t(), d.get_mpz_t());
        if (maxlen > 1) dfs_words(al, g, p, maxlen, 1, i, w, local);
      }
#pragma omp critical
      for (long l = 0; l <= maxlen; ++l)
        mpz_lcm(by_length[l].get_mpz_t(), by_length[l].get_mpz_t(),
                local[l].get_mpz_t());
    }
  }
  return finish_profile(std::move(by_length), maxlen);
}

DenominatorProfile denominator_profile_serial(const ProjMatrix& g,
                                              const std::vector<ProjMatrix>& generators,
                                              long maxlen, const Prime& p) {
  if (maxlen < 0) throw std::invalid_argument("maxlen must be nonnegative");
  validate_generators(generators, p);
  Alphabet al;
  al.k = generators.size();
  al.letters = generators;
  for (const auto& h : generators) al.letters.push_back(h.inverse());

  std::vector<Integer> by_length(maxlen + 1, Integer(1));
  if (maxlen > 0) dfs_words(al, g, p, maxlen, 0, 0, ProjMatrix::identity(), by_length);
  return finish_profile(std::move(by_length), maxlen);
}

}  // namespace horotree
