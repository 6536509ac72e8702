#include "horotree/rigidity.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace horotree {

void validate_height_class(const DeltaSet& S, const Prime& p) {
  if (!S.height_class) return;
  const Integer& M = *S.height_class;
  if (M <= 0 || mpz_divisible_ui_p(M.get_mpz_t(), static_cast<unsigned long>(p.value)))
    throw std::invalid_argument("height class must be positive and coprime to p");
  for (const auto& x : S.points) {
    Integer rest = strip_p(Integer(x.get_den()), p).second;
    if (!mpz_divisible_p(M.get_mpz_t(), rest.get_mpz_t()))
      throw std::invalid_argument("point " + rat_str(x) + " outside (1/M)Z[1/p]");
  }
}

Rational scale_act(long k, const Rational& x, const Prime& p) {
  return Rational(pow_p(p, 2 * k) * x);
}

Rational arch_diam(const std::vector<Rational>& pts) {
  if (pts.empty()) throw std::invalid_argument("diameter of empty set");
  auto [mn, mx] = std::minmax_element(pts.begin(), pts.end());
  return Rational(*mx - *mn);
}

Rational padic_diam(const std::vector<Rational>& pts, const Prime& p) {
  if (pts.empty()) throw std::invalid_argument("diameter of empty set");
  // Ultrametric: the diameter is attained from any fixed basepoint.
  Rational best(0);
  for (std::size_t i = 1; i < pts.size(); ++i)
    best = std::max(best, abs_p(Rational(pts[i] - pts[0]), p));
  return best;
}

Rational diam(const DeltaSet& S, const Prime& p) {
  validate_height_class(S, p);
  return std::max(arch_diam(S.points), padic_diam(S.points, p));
}

Rational delta_H(const DeltaSet& S, const Prime& p) {
  validate_height_class(S, p);
  Rational R = arch_diam(S.points);
  if (R == 0) return Rational(0);
  Rational P = padic_diam(S.points, p);
  long j0 = floor_log(Rational(P / R), pow_p(p, 4));
  auto value = [&](long j) {
    return std::max(Rational(pow_p(p, 2 * j) * R), Rational(pow_p(p, -2 * j) * P));
  };
  return std::min(value(j0), value(j0 + 1));
}

Rational delta_pair(const Rational& x, const Rational& y, const Prime& p) {
  return delta_H(DeltaSet{{x, y}, std::nullopt}, p);
}

bool is_parallelogram(const Rational& a, const Rational& b, const Rational& c,
                      const Rational& d) {
  return Rational(a - c) == Rational(b - d);
}

Rational perimeter(const Parallelogram& P, const Prime& p) {
  return Rational(delta_pair(P.a, P.b, p) + delta_pair(P.a, P.c, p));
}

std::optional<long> shape(const Parallelogram& P, const Prime& p) {
  if (P.b == P.a || P.c == P.a) return std::nullopt;
  long n = val_p(Rational(P.b - P.a), p).value();
  long m = val_p(Rational(P.c - P.a), p).value();
  return n >= m ? n - m : m - n;
}

FundamentalSet fundamental_set(const Integer& k, const Rational& D, const Prime& p) {
  if (k <= 0 || mpz_divisible_ui_p(k.get_mpz_t(), static_cast<unsigned long>(p.value)))
    throw std::invalid_argument("k must be positive and coprime to p");
  if (D <= 0) throw std::invalid_argument("D must be positive");
  // δ({0, a/(k p^r)}) ≥ sqrt(|a|/k), so |a| ≤ k D².
  Rational bound(Rational(k) * D * D);
  Integer A;
  mpz_fdiv_q(A.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  if (!A.fits_slong_p()) throw std::invalid_argument("fundamental set bound too large");
  long Al = A.get_si();

  FundamentalSet out{k, D, {}};
  for (int r = 0; r <= 1; ++r) {
    Rational den(Rational(k) * pow_p(p, r));
    for (long a = -Al; a <= Al; ++a) {
      if (a == 0 || a % p.value == 0) continue;
      Rational x = Rational(a) / den;
      if (delta_pair(Rational(0), x, p) <= D)
        out.entries.push_back(FundamentalSet::Entry{Integer(a), r});
    }
  }
  return out;
}

namespace {

long val_long(long x, long p) {
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

Threshold s_threshold(const Rational& K0, const Integer& k, const Rational& D,
                      const Prime& p) {
  if (K0 < 1) throw std::invalid_argument("bilipschitz constant K0 must be >= 1");
  FundamentalSet fs = fundamental_set(k, D, p);
  if (fs.entries.empty())
    throw std::domain_error("empty fundamental index set: D below the lattice minimum");

  std::vector<long> av;  // unique index values; |a| ≤ kD² fits long by construction
  av.reserve(fs.entries.size());
  for (const auto& e : fs.entries) av.push_back(e.a.get_si());
  std::sort(av.begin(), av.end());
  av.erase(std::unique(av.begin(), av.end()), av.end());
  long A = std::max(std::labs(av.front()), std::labs(av.back()));

  Threshold thr;
  thr.index = fs;
  thr.R = ceil_log(K0, Rational(p.value));
  thr.b1 = av.back() - av.front();
  thr.b2 = av.back();

  // Presence bitmaps of pairwise sums and differences over [-2A, 2A].
  std::vector<char> sum_present(4 * A + 1, 0), diff_present(4 * A + 1, 0);
  for (long x : av)
    for (long y : av) {
      sum_present[x + y + 2 * A] = 1;
      diff_present[x - y + 2 * A] = 1;
    }
  bool any3 = false, any4 = false;
  for (long v = -2 * A; v <= 2 * A; ++v) {
    if (v == 0) continue;
    if (sum_present[v + 2 * A] || diff_present[v + 2 * A]) {
      thr.b3 = std::max(thr.b3, val_long(v, p.value));
      any3 = true;
    }
  }
  for (long v = -2 * A; v <= 2 * A; ++v) {
    if (!sum_present[v + 2 * A]) continue;
    for (long z : av) {
      if (v == z) continue;
      thr.b4 = std::max(thr.b4, val_long(v - z, p.value));
      any4 = true;
    }
  }
  if (!any3 || !any4)
    throw std::domain_error("all candidate arguments vanish for B3/B4");

  long term1 = 2 * ceil_log(Rational(thr.b1 + thr.b2), Rational(p.value));
  thr.s0 = std::max({term1, 3 * thr.b3 * thr.b3, 2 * thr.b4}) + 2 * thr.R;
  return thr;
}

const Rational* TabulatedMap::lookup(const Rational& x) const {
  auto it = entries.find(x);
  return it == entries.end() ? nullptr : &it->second;
}

std::vector<Rational> lattice_window(const Integer& L, long rmax, const Rational& bound,
                                     const Prime& p) {
  if (L <= 0 || rmax < 0 || bound <= 0) throw std::invalid_argument("bad lattice window");
  Rational step = make_rat(Integer(1), Integer(L * ipow(p.big(), rmax)));
  Rational count(bound / step);
  Integer T;
  mpz_fdiv_q(T.get_mpz_t(), count.get_num_mpz_t(), count.get_den_mpz_t());
  if (!T.fits_slong_p()) throw std::invalid_argument("lattice window too large");
  long Tl = T.get_si();
  std::vector<Rational> out;
  out.reserve(2 * Tl + 1);
  for (long t = -Tl; t <= Tl; ++t) out.push_back(Rational(t * step));
  return out;
}

TabulatedMap tabulate_linear(const Rational& alpha, const std::vector<Rational>& grid) {
  TabulatedMap m;
  for (const auto& x : grid) m.entries[x] = Rational(alpha * x);
  return m;
}

Integer image_height_class(const TabulatedMap& map, const Prime& p) {
  Integer k(1);
  for (const auto& [x, fx] : map.entries) {
    Integer rest = strip_p(Integer(fx.get_den()), p).second;
    mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), rest.get_mpz_t());
  }
  return k;
}

namespace {

struct DiffEntry {
  long dt;  // lattice index offset; the difference is dt * step
  Rational delta;
  long nu;
};

// Lattice-indexed view of the grid: key = t * step with step = 1/(L p^rmax).
struct GridContext {
  Rational step;
  long tmin = 0, tmax = 0;
  std::vector<long> ts;                 // sorted key indices
  std::vector<const Rational*> keys;    // aligned with ts
  std::vector<const Rational*> vals;    // aligned with ts
  std::vector<int> slot;                // t - tmin -> index + 1, 0 when absent

  long index_of(long t) const {
    if (t < tmin || t > tmax) return -1;
    return slot[t - tmin] - 1;
  }
};

GridContext build_grid(const TabulatedMap& map, const Integer& L, const Prime& p,
                       const std::optional<Rational>& window) {
  const Rational zero(0);
  const Rational* f0 = map.lookup(zero);
  if (!f0 || *f0 != 0) throw std::invalid_argument("map must be tabulated with φ(0) = 0");
  GridContext g;
  long rmax = 0;
  std::vector<std::pair<const Rational*, const Rational*>> kept;
  for (const auto& [x, fx] : map.entries) {
    if (window && (x > *window || x < -*window)) continue;
    Integer rest = strip_p(Integer(x.get_den()), p).second;
    if (!mpz_divisible_p(L.get_mpz_t(), rest.get_mpz_t()))
      throw std::invalid_argument("grid point " + rat_str(x) + " outside (1/L)Z[1/p]");
    if (x != 0) rmax = std::max(rmax, strip_p(Integer(x.get_den()), p).first);
    kept.emplace_back(&x, &fx);
  }
  if (kept.empty()) return g;
  g.step = make_rat(Integer(1), Integer(L * ipow(p.big(), rmax)));
  g.ts.reserve(kept.size());
  for (auto [x, fx] : kept) {
    Rational ti(*x / g.step);
    if (ti.get_den() != 1 || !Integer(ti.get_num()).fits_slong_p())
      throw std::invalid_argument("grid point outside the lattice window");
    g.ts.push_back(Integer(ti.get_num()).get_si());
  }
  g.tmin = *std::min_element(g.ts.begin(), g.ts.end());
  g.tmax = *std::max_element(g.ts.begin(), g.ts.end());
  if (g.tmax - g.tmin > 20'000'000)
    throw std::invalid_argument("window too large to index");
  g.slot.assign(g.tmax - g.tmin + 1, 0);
  g.keys.resize(kept.size());
  g.vals.resize(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    g.slot[g.ts[i] - g.tmin] = static_cast<int>(i) + 1;
    g.keys[i] = kept[i].first;
    g.vals[i] = kept[i].second;
  }
  return g;
}

bool violation_less(const PlemmaViolation& u, const PlemmaViolation& v) {
  if (u.source.a != v.source.a) return u.source.a < v.source.a;
  if (u.source.b != v.source.b) return u.source.b < v.source.b;
  return u.source.c < v.source.c;
}

// Shared scan over admitted difference pairs; per and shape depend only on
// the two side differences, so enumeration slides each admitted pair across
// the grid.
void scan_admitted(const GridContext& g, const std::vector<DiffEntry>& diffs,
                   const Rational& per_bound, long s0, long& admitted,
                   std::vector<PlemmaViolation>& violations) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < diffs.size(); ++i)
    for (std::size_t j = 0; j < diffs.size(); ++j) {
      long gap = diffs[i].nu - diffs[j].nu;
      if (gap < 0) gap = -gap;
      if (gap > s0 && Rational(diffs[i].delta + diffs[j].delta) <= per_bound)
        pairs.emplace_back(i, j);
    }

  long count = 0;
#pragma omp parallel
  {
    long local_count = 0;
    std::vector<PlemmaViolation> local;
#pragma omp for schedule(dynamic, 1)
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      long dt1 = diffs[pairs[pi].first].dt;
      long dt2 = diffs[pairs[pi].second].dt;
      for (std::size_t ia = 0; ia < g.ts.size(); ++ia) {
        long t = g.ts[ia];
        long ib = g.index_of(t + dt1);
        if (ib < 0) continue;
        long ic = g.index_of(t + dt2);
        if (ic < 0) continue;
        long id = g.index_of(t + dt1 + dt2);
        if (id < 0) continue;
        ++local_count;
        const Rational &fa = *g.vals[ia], &fb = *g.vals[ib];
        const Rational &fc = *g.vals[ic], &fd = *g.vals[id];
        if (Rational(fa - fc) != Rational(fb - fd))
          local.push_back(PlemmaViolation{
              Parallelogram{*g.keys[ia], *g.keys[ib], *g.keys[ic], *g.keys[id]},
              Parallelogram{fa, fb, fc, fd}});
      }
    }
#pragma omp critical
    {
      count += local_count;
      violations.insert(violations.end(), local.begin(), local.end());
    }
  }
  admitted = count;
  std::sort(violations.begin(), violations.end(), violation_less);
}

}  // namespace

PlemmaReport verify_plemma(const TabulatedMap& map, const Integer& L, const Prime& p,
                           const PlemmaOptions& opts) {
  if (L <= 0 || mpz_divisible_ui_p(L.get_mpz_t(), static_cast<unsigned long>(p.value)))
    throw std::invalid_argument("L must be positive and coprime to p");
  GridContext g = build_grid(map, L, p, opts.window);

  PlemmaReport rep;
  rep.k_used = opts.k.value_or(image_height_class(map, p));
  rep.D_used = opts.D.value_or(Rational(map.K0 * L));
  rep.threshold = s_threshold(map.K0, rep.k_used, rep.D_used, p);
  rep.per_bound = opts.per_bound.value_or(Rational(L));
  rep.grid_size = static_cast<long>(g.ts.size());
  if (g.ts.empty()) return rep;

  long span = g.tmax - g.tmin;
  // Only differences with small prime-to-p part can stay under the perimeter
  // bound: δ({0, d}) ≥ sqrt(|d| |d|_p) and |d| |d|_p is odd(dt)/L.
  Rational obound_q(rep.per_bound * rep.per_bound * L);
  Integer ob;
  mpz_fdiv_q(ob.get_mpz_t(), obound_q.get_num_mpz_t(), obound_q.get_den_mpz_t());
  long obound = ob.fits_slong_p() ? ob.get_si() : span;

  std::vector<DiffEntry> diffs;
#pragma omp parallel
  {
    std::vector<DiffEntry> local;
#pragma omp for schedule(dynamic, 1024)
    for (long t = 1; t <= span; ++t) {
      long odd = t;
      while (odd % p.value == 0) odd /= p.value;
      if (odd > obound) continue;
      Rational d(t * g.step);
      Rational delta = delta_pair(Rational(0), d, p);
      if (delta > rep.per_bound) continue;
      long nu = val_p(d, p).value();
      local.push_back(DiffEntry{t, delta, nu});
      local.push_back(DiffEntry{-t, delta, nu});
    }
#pragma omp critical
    diffs.insert(diffs.end(), local.begin(), local.end());
  }
  std::sort(diffs.begin(), diffs.end(),
            [](const DiffEntry& u, const DiffEntry& v) { return u.dt < v.dt; });

  scan_admitted(g, diffs, rep.per_bound, rep.threshold.s0, rep.admitted, rep.violations);
  if (opts.s0_increment > 0) {
    rep.retried_s0 = rep.threshold.s0 + opts.s0_increment;
    scan_admitted(g, diffs, rep.per_bound, rep.retried_s0, rep.retried_admitted,
                  rep.retried_violations);
  }
  return rep;
}

PlemmaReport verify_plemma_serial(const TabulatedMap& map, const Integer& L,
                                  const Prime& p, const PlemmaOptions& opts) {
  if (L <= 0 || mpz_divisible_ui_p(L.get_mpz_t(), static_cast<unsigned long>(p.value)))
    throw std::invalid_argument("L must be positive and coprime to p");
  GridContext g = build_grid(map, L, p, opts.window);

  PlemmaReport rep;
  rep.k_used = opts.k.value_or(image_height_class(map, p));
  rep.D_used = opts.D.value_or(Rational(map.K0 * L));
  rep.threshold = s_threshold(map.K0, rep.k_used, rep.D_used, p);
  rep.per_bound = opts.per_bound.value_or(Rational(L));
  rep.grid_size = static_cast<long>(g.ts.size());

  auto lookup = [&](const Rational& x) -> const Rational* {
    if (opts.window && (x > *opts.window || x < -*opts.window)) return nullptr;
    return map.lookup(x);
  };

  auto pass = [&](long s0, long& admitted, std::vector<PlemmaViolation>& violations) {
    for (const Rational* a : g.keys)
      for (const Rational* b : g.keys)
        for (const Rational* c : g.keys) {
          Parallelogram P{*a, *b, *c, Rational(*b + *c - *a)};
          const Rational* fd = lookup(P.d);
          if (!fd) continue;
          std::optional<long> sh = shape(P, p);
          if (!sh || *sh <= s0) continue;
          if (perimeter(P, p) > rep.per_bound) continue;
          ++admitted;
          const Rational &fa = *map.lookup(P.a), &fb = *map.lookup(P.b);
          const Rational& fc = *map.lookup(P.c);
          if (!is_parallelogram(fa, fb, fc, *fd))
            violations.push_back(PlemmaViolation{P, Parallelogram{fa, fb, fc, *fd}});
        }
    std::sort(violations.begin(), violations.end(), violation_less);
  };

  pass(rep.threshold.s0, rep.admitted, rep.violations);
  if (opts.s0_increment > 0) {
    rep.retried_s0 = rep.threshold.s0 + opts.s0_increment;
    pass(rep.retried_s0, rep.retried_admitted, rep.retried_violations);
  }
  return rep;
}

ExtractResult extract_affine(const TabulatedMap& map, const Integer& q, const Prime& p,
                             const ExtractOptions& opts) {
  if (q <= 0 || mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p.value)))
    throw std::invalid_argument("q must be positive and coprime to p");
  const Rational* f0 = map.lookup(Rational(0));
  if (!f0 || *f0 != 0) throw std::invalid_argument("map must be tabulated with φ(0) = 0");

  // Restrict to the (1/q)-grid inside the window.
  std::vector<Rational> keys;
  TabulatedMap sub;
  sub.K0 = map.K0;
  for (const auto& [x, fx] : map.entries) {
    if (opts.window && (x > *opts.window || x < -*opts.window)) continue;
    Integer rest = strip_p(Integer(x.get_den()), p).second;
    if (!mpz_divisible_p(q.get_mpz_t(), rest.get_mpz_t())) continue;
    keys.push_back(x);
    sub.entries[x] = fx;
  }

  ExtractResult res;
  Rational oq = make_rat(Integer(1), q);
  if (!sub.entries.count(oq)) {
    res.status = ExtractResult::Status::kWindowTooSmall;
    res.witness = "generator 1/" + q.get_str() + " not in the window grid";
    return res;
  }

  // Gate: an admissible generator ±p^t/q with |t| ≥ s0 must sit in the
  // window, witnessing the deep-orbit step of the chain construction.
  Rational C = std::max(
      {Rational(q), Rational(2 * delta_pair(Rational(0), oq, p)),
       Rational(2 * delta_pair(Rational(0), Rational(oq / p.value), p))});
  Threshold thr = s_threshold(map.K0, image_height_class(sub, p), C, p);
  res.s0 = thr.s0;
  bool have_generator = false;
  for (const auto& x : keys) {
    if (x == 0) continue;
    Rational y(x * q);
    Integer num = y.get_num();
    if (num < 0) num = -num;
    if (y.get_den() != 1 && num != 1) continue;
    if (strip_p(num, p).second != 1 || strip_p(Integer(y.get_den()), p).second != 1)
      continue;
    long t = val_p(y, p).value();
    if (t >= res.s0 || -t >= res.s0) {
      have_generator = true;
      break;
    }
  }
  if (!have_generator) {
    res.status = ExtractResult::Status::kWindowTooSmall;
    res.witness = "no admissible generator ±p^t/q with |t| ≥ " + std::to_string(res.s0) +
                  " in the window";
    return res;
  }

  // Difference identity: φ(x+z) − φ(x) must depend on z alone.
  std::map<Rational, std::pair<Rational, Rational>> first;  // z -> (x, Δ)
  for (const auto& x : keys)
    for (const auto& y : keys) {
      if (x == y) continue;
      Rational z(y - x);
      Rational d(sub.entries.at(y) - sub.entries.at(x));
      auto [it, fresh] = first.try_emplace(z, x, d);
      if (!fresh && it->second.second != d) {
        res.status = ExtractResult::Status::kFailure;
        std::ostringstream os;
        os << "φ(x+z)−φ(x) ≠ φ(y+z)−φ(y) for z=" << rat_str(z)
           << ", x=" << rat_str(it->second.first) << ", y=" << rat_str(x);
        res.witness = os.str();
        return res;
      }
    }

  res.alpha = Rational(sub.entries.at(oq) * q);
  for (const auto& x : keys) {
    if (sub.entries.at(x) != Rational(res.alpha * x)) {
      res.status = ExtractResult::Status::kFailure;
      res.witness = "φ(" + rat_str(x) + ") ≠ α·x for α = " + rat_str(res.alpha);
      return res;
    }
  }
  res.status = ExtractResult::Status::kOk;
  return res;
}

bool qie_check(const std::vector<std::pair<Rational, Rational>>& samples,
               const Rational& K, const Rational& C) {
  if (K < 1 || C < 0) throw std::invalid_argument("need K ≥ 1 and C ≥ 0");
  for (const auto& [dx, dy] : samples) {
    if (dy < Rational(dx / K - C)) return false;
    if (dy > Rational(K * dx + C)) return false;
  }
  return true;
}

}  // namespace horotree
