// Benchmark comparing the OpenMP kernels against their serial references.
#include <omp.h>

#include <cstdio>

#include "horotree/comm.hpp"
#include "horotree/horosphere.hpp"
#include "horotree/rigidity.hpp"

using namespace horotree;

namespace {

template <typename F>
double timed(F&& f) {
  double t0 = omp_get_wtime();
  f();
  return omp_get_wtime() - t0;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-24s serial %8.3fs   openmp %8.3fs   speedup %.2fx\n", name, serial,
              parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    Prime p(3);
    Rational H(2);
    BoundaryPoint zero = BoundaryPoint::of(Rational(0));
    BoundaryPoint inf = BoundaryPoint::inf();
    std::vector<ProfileRow> a, b;
    double ts = timed([&] { a = growth_profile_serial(zero, inf, 7, H, p); });
    double tp = timed([&] { b = growth_profile(zero, inf, 7, H, p); });
    if (a.size() != b.size()) std::printf("growth profile MISMATCH\n");
    report("growth_profile r=7 p=3", ts, tp);
  }

  {
    Prime p(2);
    auto grid = lattice_window(Integer(3), 4, Rational(2), p);
    TabulatedMap map = tabulate_linear(make_rat(7, 5), grid);
    std::swap(map.entries[make_rat(1, 48)], map.entries[Rational(2)]);
    PlemmaOptions opts;
    opts.k = Integer(1);
    opts.D = make_rat(3, 2);
    PlemmaReport ra, rb;
    double ts = timed([&] { ra = verify_plemma_serial(map, Integer(3), p, opts); });
    double tp = timed([&] { rb = verify_plemma(map, Integer(3), p, opts); });
    if (ra.admitted != rb.admitted || ra.violations.size() != rb.violations.size())
      std::printf("plemma MISMATCH\n");
    std::printf("  grid %ld admitted %ld violations %zu\n", ra.grid_size, ra.admitted,
                ra.violations.size());
    report("verify_plemma", ts, tp);
  }

  {
    Prime p(3);
    ProjMatrix A = ProjMatrix::diag(Rational(3), make_rat(1, 3));
    ProjMatrix B(Rational(1), Rational(1), Rational(0), Rational(1));
    ProjMatrix g = diagonal_rescaler(Rational(2));
    DenominatorProfile pa, pb;
    double ts = timed([&] { pa = denominator_profile_serial(g, {A, B}, 8, p); });
    double tp = timed([&] { pb = denominator_profile(g, {A, B}, 8, p); });
    if (pa.cumulative != pb.cumulative) std::printf("profile MISMATCH\n");
    report("denominator_profile l=8", ts, tp);
  }
  return 0;
}
