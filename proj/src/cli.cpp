#include "horotree/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "horotree/bs.hpp"
#include "horotree/comm.hpp"
#include "horotree/horosphere.hpp"
#include "horotree/rigidity.hpp"
#include "horotree/tree.hpp"

namespace horotree {

namespace {

using json = nlohmann::ordered_json;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json matrix_json(const ProjMatrix& g) {
  return json::array({json::array({g.a().get_str(), g.b().get_str()}),
                      json::array({g.c().get_str(), g.d().get_str()})});
}

json parallelogram_json(const Parallelogram& P) {
  return json::array({rat_str(P.a), rat_str(P.b), rat_str(P.c), rat_str(P.d)});
}

// ---- selftest oracles (independent of the closed forms they check) ----

long bfs_distance(const TreeVertex& u, const TreeVertex& v, const Prime& p, long cap) {
  if (u == v) return 0;
  std::map<TreeVertex, long> dist{{u, 0}};
  std::deque<TreeVertex> queue{u};
  while (!queue.empty()) {
    TreeVertex w = queue.front();
    queue.pop_front();
    if (dist[w] >= cap) continue;
    for (const auto& n : neighbors(w, p)) {
      if (dist.count(n)) continue;
      dist[n] = dist[w] + 1;
      if (n == v) return dist[n];
      queue.push_back(n);
    }
  }
  return -1;
}

long smallest_root(long n) {  // n = r^e with r minimal
  for (long r = 2; r <= n; ++r) {
    long x = n;
    while (x % r == 0) x /= r;
    if (x == 1) return r;
  }
  return n;
}

bool selftest_tree(std::ostream& out) {
  for (long pv : {2L, 3L}) {
    Prime p(pv);
    auto ball = tree_ball(TreeVertex{0, Rational(0)}, 3, p);
    for (const auto& u : ball) {
      auto nb = neighbors(u, p);
      if (static_cast<long>(nb.size()) != pv + 1) return false;
      for (const auto& w : nb) {
        auto back = neighbors(w, p);
        if (std::find(back.begin(), back.end(), u) == back.end()) return false;
      }
      for (const auto& v : ball)
        if (tree_distance(u, v, p) != bfs_distance(u, v, p, 16)) return false;
    }
  }
  out << "tree selftest: closed-form distances match BFS\n";
  return true;
}

bool selftest_horo(std::ostream& out) {
  Rational H(2);
  for (long pv : {2L, 3L}) {
    Prime p(pv);
    for (auto pair : {std::pair<BoundaryPoint, BoundaryPoint>{
                          BoundaryPoint::of(Rational(0)), BoundaryPoint::inf()},
                      {BoundaryPoint::of(Rational(0)), BoundaryPoint::of(Rational(1))}}) {
      auto rows = growth_profile(pair.first, pair.second, 3, H, p);
      if (!growth_law_violations(rows, p).empty()) return false;
      Rational base(0);
      for (const auto& r : rows)
        if (r.k == 0) base = r.argument;
      for (const auto& r : rows)
        if (r.k > 0 && r.argument <= base) return false;
    }
  }
  out << "horo selftest: growth law holds on sampled profiles\n";
  return true;
}

bool selftest_bs(std::ostream& out) {
  for (long m = 2; m <= 40; ++m)
    for (long n = 2; n <= 40; ++n)
      if (bs_commensurable(m, n).commensurable != (smallest_root(m) == smallest_root(n)))
        return false;
  for (long pv : {2L, 3L, 5L}) {
    Prime p(pv);
    ProjMatrix rel = phi_embed(BsWord("abA"), p);
    if (!(rel == proj_pow(phi_embed(BsWord("b"), p), pv * pv))) return false;
  }
  out << "bs selftest: commensurability oracle and Φ relation agree\n";
  return true;
}

bool selftest_rig(std::ostream& out) {
  Prime p(2);
  auto grid = lattice_window(Integer(1), 3, Rational(4), p);
  PlemmaOptions opts;
  opts.k = Integer(1);
  opts.D = make_rat(3, 2);
  auto good = verify_plemma(tabulate_linear(Rational(3), grid), Integer(1), p, opts);
  if (!good.violations.empty()) return false;
  auto serial = verify_plemma_serial(tabulate_linear(Rational(3), grid), Integer(1), p, opts);
  if (serial.admitted != good.admitted) return false;
  TabulatedMap chain;
  for (long a = -4; a <= 4; ++a)
    for (long r = 0; r <= 52; ++r) {
      Rational x = Rational(Rational(a) / pow_p(p, r));
      chain.entries[x] = Rational(make_rat(-5, 4) * x);
    }
  auto res = extract_affine(chain, Integer(1), p);
  if (res.status != ExtractResult::Status::kOk || res.alpha != make_rat(-5, 4))
    return false;
  out << "rig selftest: affine maps verified, extraction exact\n";
  return true;
}

bool selftest_comm(std::ostream& out) {
  Prime p(3);
  ProjMatrix A = ProjMatrix::diag(Rational(3), make_rat(1, 3));
  ProjMatrix B(Rational(1), Rational(1), Rational(0), Rational(1));
  auto prof = denominator_profile(diagonal_rescaler(Rational(2)), {A, B}, 4, p);
  auto ref = denominator_profile_serial(diagonal_rescaler(Rational(2)), {A, B}, 4, p);
  if (prof.cumulative != ref.cumulative || !prof.stable) return false;
  auto g = transporter(BoundaryPoint::of(Rational(1)), BoundaryPoint::of(Rational(0)));
  if (!(g.mobius(BoundaryPoint::of(Rational(1))) == BoundaryPoint::of(Rational(0))))
    return false;
  out << "comm selftest: profiles stable, transporters verified\n";
  return true;
}

// ---- shared option plumbing ----

struct Common {
  std::string prime_str = "2";
  std::string out_path;
  bool selftest = false;
};

void add_common(CLI::App* cmd, Common& c, bool wants_prime = true) {
  if (wants_prime)
    cmd->add_option("--prime", c.prime_str, "tree prime p")
        ->envname("HOROTREE_PRIME");
  cmd->add_option("--out", c.out_path, "write the artifact to this path");
  cmd->add_flag("--selftest", c.selftest, "run this subcommand's oracle checks");
}

Prime parse_prime(const std::string& s) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return Prime(v);
  } catch (const std::exception&) {
    throw CliError("invalid prime: " + s);
  }
}

Rational parse_H(const std::string& s) {
  Rational H = parse_rational(s);
  if (H <= 1) throw CliError("packing parameter H must exceed 1");
  return H;
}

int emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(c.out_path);
  if (!f) throw CliError("cannot open output path: " + c.out_path);
  f << text;
  return 0;
}

int run_selftest(const std::string& group, std::ostream& out) {
  bool ok = true;
  if (group == "tree") ok = selftest_tree(out);
  if (group == "horo") ok = selftest_horo(out);
  if (group == "bs") ok = selftest_bs(out);
  if (group == "rig") ok = selftest_rig(out);
  if (group == "comm") ok = selftest_comm(out);
  out << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? 0 : 2;
}

// ---- tree ----

struct BallArgs {
  Common common;
  long radius = 2;
  std::string format = "json";
  std::vector<std::string> mark;
};

std::string do_tree_ball(const BallArgs& a) {
  Prime p = parse_prime(a.common.prime_str);
  if (a.radius < 0) throw CliError("radius must be nonnegative");
  auto ball = tree_ball(TreeVertex{0, Rational(0)}, a.radius, p);

  std::optional<TreeLine> marked;
  if (!a.mark.empty()) {
    if (a.mark.size() != 2) throw CliError("--mark needs two boundary points");
    marked = line_between_ends(parse_boundary(a.mark[0]), parse_boundary(a.mark[1]), p);
  }
  auto is_marked = [&](const TreeVertex& v) {
    return marked && on_line(v, *marked, p);
  };

  std::vector<std::pair<TreeVertex, TreeVertex>> edges;
  std::set<TreeVertex> inball(ball.begin(), ball.end());
  for (const auto& v : ball)
    for (const auto& w : neighbors(v, p))
      if (inball.count(w) && v < w) edges.emplace_back(v, w);

  if (a.format == "dot") {
    std::ostringstream os;
    os << "graph tree_ball {\n";
    for (const auto& v : ball) {
      os << "  \"" << vertex_str(v) << "\" [label=\"" << vertex_str(v) << "\"";
      if (is_marked(v)) os << ", online=true, style=filled";
      os << "];\n";
    }
    for (const auto& [u, v] : edges)
      os << "  \"" << vertex_str(u) << "\" -- \"" << vertex_str(v) << "\";\n";
    os << "}\n";
    return os.str();
  }
  if (a.format != "json") throw CliError("tree ball formats: json, dot");
  json j;
  j["prime"] = p.value;
  j["radius"] = a.radius;
  j["vertices"] = json::array();
  for (const auto& v : ball) j["vertices"].push_back(vertex_str(v));
  j["edges"] = json::array();
  for (const auto& [u, v] : edges)
    j["edges"].push_back(json::array({vertex_str(u), vertex_str(v)}));
  if (marked) {
    j["marked"] = json::array();
    for (const auto& v : ball)
      if (is_marked(v)) j["marked"].push_back(vertex_str(v));
  }
  return j.dump(2) + "\n";
}

struct GeodesicArgs {
  Common common;
  std::vector<std::string> ends;
  std::vector<long> window;
};

std::string do_tree_geodesic(const GeodesicArgs& a) {
  Prime p = parse_prime(a.common.prime_str);
  if (a.ends.size() != 2) throw CliError("--ends needs two boundary points");
  if (a.window.size() != 2 || a.window[0] > a.window[1])
    throw CliError("--window needs lo <= hi");
  TreeLine l = line_between_ends(parse_boundary(a.ends[0]), parse_boundary(a.ends[1]), p);
  json j;
  j["prime"] = p.value;
  j["ends"] = json::array({boundary_str(l.e1), boundary_str(l.e2)});
  j["window"] = json::array({a.window[0], a.window[1]});
  j["vertices"] = json::array();
  for (const auto& v : line_vertices(l, a.window[0], a.window[1], p))
    j["vertices"].push_back(vertex_str(v));
  return j.dump(2) + "\n";
}

// ---- horo ----

struct HoroTableArgs {
  Common common;
  std::string base = "inf";
  std::string H = "2";
  std::vector<long> window;
  std::string format = "json";
};

std::string do_horo_table(const HoroTableArgs& a) {
  Prime p = parse_prime(a.common.prime_str);
  Rational H = parse_H(a.H);
  if (a.window.size() != 2 || a.window[0] > a.window[1])
    throw CliError("--window needs lo <= hi");
  BoundaryPoint base = parse_boundary(a.base);
  BoundaryPoint other =
      base.infinite ? BoundaryPoint::of(Rational(0)) : BoundaryPoint::inf();
  TreeLine l = line_between_ends(base, other, p);
  Horosphere sigma{base, H};

  if (a.format == "csv") {
    std::ostringstream os;
    os << "vertex,base,size_num,size_den\n";
    for (const auto& v : line_vertices(l, a.window[0], a.window[1], p)) {
      Horoball h = fiber(sigma, v, p);
      os << vertex_str(v) << "," << boundary_str(h.base) << "," << h.size.get_num()
         << "," << h.size.get_den() << "\n";
    }
    return os.str();
  }
  if (a.format != "json") throw CliError("horo table formats: json, csv");
  json j;
  j["prime"] = p.value;
  j["H"] = rat_str(H);
  j["base"] = boundary_str(base);
  j["window"] = json::array({a.window[0], a.window[1]});
  j["rows"] = json::array();
  for (const auto& v : line_vertices(l, a.window[0], a.window[1], p)) {
    Horoball h = fiber(sigma, v, p);
    j["rows"].push_back(json{{"vertex", vertex_str(v)},
                             {"base", boundary_str(h.base)},
                             {"size", rat_str(h.size)}});
  }
  return j.dump(2) + "\n";
}

struct HoroProfileArgs {
  Common common;
  std::vector<std::string> pair;
  long radius = 4;
  std::string H = "2";
  std::string format = "json";
  bool check_law = false;
  bool serial = false;
};

std::string do_horo_profile(const HoroProfileArgs& a, bool& violations_found) {
  Prime p = parse_prime(a.common.prime_str);
  Rational H = parse_H(a.H);
  if (a.pair.size() != 2) throw CliError("--pair needs two boundary points");
  if (a.radius < 0) throw CliError("radius must be nonnegative");
  BoundaryPoint alpha = parse_boundary(a.pair[0]);
  BoundaryPoint beta = parse_boundary(a.pair[1]);
  auto rows = a.serial ? growth_profile_serial(alpha, beta, a.radius, H, p)
                       : growth_profile(alpha, beta, a.radius, H, p);
  auto bad = growth_law_violations(rows, p);
  violations_found = a.check_law && !bad.empty();

  if (a.format == "csv") {
    std::ostringstream os;
    os << "vertex,k,argument_num,argument_den\n";
    for (const auto& r : rows)
      os << vertex_str(r.v) << "," << r.k << "," << r.argument.get_num() << ","
         << r.argument.get_den() << "\n";
    return os.str();
  }
  if (a.format != "json") throw CliError("horo profile formats: json, csv");
  json j;
  j["prime"] = p.value;
  j["H"] = rat_str(H);
  j["pair"] = json::array({boundary_str(alpha), boundary_str(beta)});
  j["radius"] = a.radius;
  j["rows"] = json::array();
  for (const auto& r : rows)
    j["rows"].push_back(json{{"vertex", vertex_str(r.v)},
                             {"k", r.k},
                             {"argument", rat_str(r.argument)}});
  if (a.check_law) {
    j["law"] = json{{"checked", true}, {"violations", bad.size()}};
  }
  return j.dump(2) + "\n";
}

// ---- bs ----

struct BsCommArgs {
  Common common;
  long m = 0, n = 0;
};

std::string do_bs_comm(const BsCommArgs& a) {
  auto r = bs_commensurable(a.m, a.n);
  json j;
  j["commensurable"] = r.commensurable;
  if (r.commensurable) j["root"] = r.root;
  return j.dump() + "\n";
}

struct BsPhiArgs {
  Common common;
  std::string word;
};

std::string do_bs_phi(const BsPhiArgs& a) {
  Prime p = parse_prime(a.common.prime_str);
  BsWord w(a.word);
  json j;
  j["word"] = w.str();
  j["matrix"] = matrix_json(phi_embed(w, p));
  return j.dump(2) + "\n";
}

// ---- rig ----

struct RigS0Args {
  Common common;
  std::string k = "1";
  std::string D;
  std::string K0 = "1";
};

std::string do_rig_s0(const RigS0Args& a) {
  Prime p = parse_prime(a.common.prime_str);
  if (a.D.empty()) throw CliError("--D is required");
  Threshold thr = s_threshold(parse_rational(a.K0), Integer(a.k), parse_rational(a.D), p);
  json j;
  j["R"] = thr.R;
  j["B1"] = thr.b1.get_str();
  j["B2"] = thr.b2.get_str();
  j["B3"] = thr.b3;
  j["B4"] = thr.b4;
  j["s0"] = thr.s0;
  j["index"] = json::array();
  for (const auto& e : thr.index.entries)
    j["index"].push_back(json{{"a", e.a.get_str()}, {"r", e.r}});
  return j.dump(2) + "\n";
}

TabulatedMap load_map_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CliError("cannot open map file: " + path);
  return load_tabulated_map(f);
}

struct RigVerifyArgs {
  Common common;
  std::string map_path;
  std::string L = "1";
  std::string window;
  std::string k, D, per_bound;
  long s0_increment = 0;
  bool serial = false;
};

std::string do_rig_verify(const RigVerifyArgs& a, bool& violations_found) {
  Prime p = parse_prime(a.common.prime_str);
  TabulatedMap map = load_map_file(a.map_path);
  PlemmaOptions opts;
  if (!a.window.empty()) opts.window = parse_rational(a.window);
  if (!a.k.empty()) opts.k = Integer(a.k);
  if (!a.D.empty()) opts.D = parse_rational(a.D);
  if (!a.per_bound.empty()) opts.per_bound = parse_rational(a.per_bound);
  opts.s0_increment = a.s0_increment;
  PlemmaReport rep = a.serial ? verify_plemma_serial(map, Integer(a.L), p, opts)
                              : verify_plemma(map, Integer(a.L), p, opts);
  violations_found = !rep.violations.empty();
  json j;
  j["grid_size"] = rep.grid_size;
  j["k"] = rep.k_used.get_str();
  j["D"] = rat_str(rep.D_used);
  j["per_bound"] = rat_str(rep.per_bound);
  j["s0"] = rep.threshold.s0;
  j["admitted"] = rep.admitted;
  j["violations"] = json::array();
  for (const auto& v : rep.violations)
    j["violations"].push_back(json{{"P", parallelogram_json(v.source)},
                                   {"image", parallelogram_json(v.image)}});
  if (a.s0_increment > 0) {
    j["retry"] = json{{"s0", rep.retried_s0},
                      {"admitted", rep.retried_admitted},
                      {"violations", rep.retried_violations.size()}};
  }
  return j.dump(2) + "\n";
}

struct RigExtractArgs {
  Common common;
  std::string map_path;
  std::string q = "1";
  std::string window;
};

std::string do_rig_extract(const RigExtractArgs& a, int& code) {
  Prime p = parse_prime(a.common.prime_str);
  TabulatedMap map = load_map_file(a.map_path);
  ExtractOptions opts;
  if (!a.window.empty()) opts.window = parse_rational(a.window);
  ExtractResult res = extract_affine(map, Integer(a.q), p, opts);
  json j;
  switch (res.status) {
    case ExtractResult::Status::kOk:
      j["status"] = "ok";
      j["alpha"] = rat_str(res.alpha);
      code = 0;
      break;
    case ExtractResult::Status::kFailure:
      j["status"] = "failure";
      j["witness"] = res.witness;
      code = 2;
      break;
    case ExtractResult::Status::kWindowTooSmall:
      j["status"] = "window-too-small";
      j["witness"] = res.witness;
      code = 1;
      break;
  }
  j["s0"] = res.s0;
  return j.dump(2) + "\n";
}

// ---- comm ----

struct CommBoundArgs {
  Common common;
  std::string g;
  std::vector<std::string> gens;
  long maxlen = 4;
  bool serial = false;
};

std::string do_comm_bound(const CommBoundArgs& a) {
  Prime p = parse_prime(a.common.prime_str);
  if (a.g.empty()) throw CliError("--g is required");
  ProjMatrix g = parse_projmatrix(a.g);
  std::vector<ProjMatrix> gens;
  if (a.gens.empty()) {
    gens.push_back(ProjMatrix::diag(Rational(p.value), pow_p(p, -1)));
    gens.push_back(ProjMatrix(Rational(1), Rational(1), Rational(0), Rational(1)));
  } else {
    for (const auto& s : a.gens) gens.push_back(parse_projmatrix(s));
  }
  DenominatorProfile prof = a.serial ? denominator_profile_serial(g, gens, a.maxlen, p)
                                     : denominator_profile(g, gens, a.maxlen, p);
  json j;
  j["d"] = prof.d.get_str();
  j["maxlen"] = prof.maxlen;
  j["stable"] = prof.stable;
  j["cumulative"] = json::array();
  for (const auto& c : prof.cumulative) j["cumulative"].push_back(c.get_str());
  return j.dump(2) + "\n";
}

struct CommTransportArgs {
  Common common;
  std::vector<std::string> from;
};

std::string do_comm_transport(const CommTransportArgs& a) {
  if (a.from.size() != 2) throw CliError("--from needs two boundary points");
  ProjMatrix g = transporter(parse_boundary(a.from[0]), parse_boundary(a.from[1]));
  json j;
  j["matrix"] = matrix_json(g);
  return j.dump(2) + "\n";
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact geometry of H² × T_p: tree, horospheres, BS complexes, rigidity"};
  app.require_subcommand(0, 1);

  auto* tree_cmd = app.add_subcommand("tree", "Bruhat-Tits tree queries");
  BallArgs ball;
  auto* ball_cmd = tree_cmd->add_subcommand("ball", "ball around the basepoint");
  add_common(ball_cmd, ball.common);
  ball_cmd->add_option("--radius", ball.radius, "tree radius");
  ball_cmd->add_option("--format", ball.format, "json or dot");
  ball_cmd->add_option("--mark", ball.mark, "mark the line between two ends")->expected(2);

  GeodesicArgs geo;
  auto* geo_cmd = tree_cmd->add_subcommand("geodesic", "line between two rational ends");
  add_common(geo_cmd, geo.common);
  geo_cmd->add_option("--ends", geo.ends, "two ends in Q ∪ {inf}")->expected(2);
  geo_cmd->add_option("--window", geo.window, "height window lo hi")->expected(2);

  auto* horo_cmd = app.add_subcommand("horo", "horosphere fibers and closeness lines");
  HoroTableArgs table;
  auto* table_cmd = horo_cmd->add_subcommand("table", "fiber horoballs along a line");
  add_common(table_cmd, table.common);
  table_cmd->add_option("--base", table.base, "horosphere base point");
  table_cmd->add_option("--H", table.H, "packing parameter (> 1)");
  table_cmd->add_option("--window", table.window, "height window lo hi")->expected(2);
  table_cmd->add_option("--format", table.format, "json or csv");

  HoroProfileArgs profile;
  auto* profile_cmd = horo_cmd->add_subcommand("profile", "fiber distances near the closeness line");
  add_common(profile_cmd, profile.common);
  profile_cmd->add_option("--pair", profile.pair, "two horosphere bases")->expected(2);
  profile_cmd->add_option("--radius", profile.radius, "ball radius around the confluence");
  profile_cmd->add_option("--H", profile.H, "packing parameter (> 1)");
  profile_cmd->add_option("--format", profile.format, "json or csv");
  profile_cmd->add_flag("--check-law", profile.check_law,
                        "verify the growth law; exit 2 on violations");
  profile_cmd->add_flag("--serial", profile.serial, "use the serial reference kernel");

  auto* bs_cmd = app.add_subcommand("bs", "Baumslag-Solitar boundary computations");
  BsCommArgs bscomm;
  auto* bscomm_cmd = bs_cmd->add_subcommand("comm", "commensurability of BS(1,m), BS(1,n)");
  add_common(bscomm_cmd, bscomm.common, false);
  bscomm_cmd->add_option("--m", bscomm.m, "first index");
  bscomm_cmd->add_option("--n", bscomm.n, "second index");

  BsPhiArgs bsphi;
  auto* bsphi_cmd = bs_cmd->add_subcommand("phi", "embed a BS(1,p²) word");
  add_common(bsphi_cmd, bsphi.common);
  bsphi_cmd->add_option("--word", bsphi.word, "letters a, b with A, B as inverses");

  auto* rig_cmd = app.add_subcommand("rig", "diagonal-lattice rigidity machinery");
  RigS0Args s0;
  auto* s0_cmd = rig_cmd->add_subcommand("s0", "shape threshold from (K0, k, D)");
  add_common(s0_cmd, s0.common);
  s0_cmd->add_option("--k", s0.k, "height class, coprime to p");
  s0_cmd->add_option("--D", s0.D, "diameter bound");
  s0_cmd->add_option("--K0", s0.K0, "declared bilipschitz constant");

  RigVerifyArgs verify;
  auto* verify_cmd = rig_cmd->add_subcommand("verify", "parallelogram-image verifier");
  add_common(verify_cmd, verify.common);
  verify_cmd->add_option("--map", verify.map_path, "JSON-lines tabulated map");
  verify_cmd->add_option("--L", verify.L, "denominator class and perimeter bound");
  verify_cmd->add_option("--window", verify.window, "|x| bound on grid points");
  verify_cmd->add_option("--k", verify.k, "override the index-set height class");
  verify_cmd->add_option("--D", verify.D, "override the index-set diameter bound");
  verify_cmd->add_option("--per-bound", verify.per_bound, "override the perimeter bound");
  verify_cmd->add_option("--s0-increment", verify.s0_increment,
                         "also rerun at s0 + increment");
  verify_cmd->add_flag("--serial", verify.serial, "use the serial reference kernel");

  RigExtractArgs extract;
  auto* extract_cmd = rig_cmd->add_subcommand("extract", "multiplication-constant extraction");
  add_common(extract_cmd, extract.common);
  extract_cmd->add_option("--map", extract.map_path, "JSON-lines tabulated map");
  extract_cmd->add_option("--q", extract.q, "denominator class, coprime to p");
  extract_cmd->add_option("--window", extract.window, "|x| bound on grid points");

  auto* comm_cmd = app.add_subcommand("comm", "commensurator computations");
  CommBoundArgs bound;
  auto* bound_cmd = comm_cmd->add_subcommand("bound", "denominator bound of conjugates");
  add_common(bound_cmd, bound.common);
  bound_cmd->add_option("--g", bound.g, "conjugator a,b;c,d");
  bound_cmd->add_option("--gens", bound.gens, "generators (default A and B)");
  bound_cmd->add_option("--maxlen", bound.maxlen, "maximal word length");
  bound_cmd->add_flag("--serial", bound.serial, "use the serial reference kernel");

  CommTransportArgs transport;
  auto* transport_cmd = comm_cmd->add_subcommand("transport", "pair transporter to (0, ∞)");
  add_common(transport_cmd, transport.common, false);
  transport_cmd->add_option("--from", transport.from, "ordered source pair")->expected(2);

  std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 64;
  }

  if (app.get_subcommands().empty()) {
    err << app.help();
    return 64;
  }

  try {
    bool violations = false;
    int code = 0;
    std::string text;
    if (ball_cmd->parsed()) {
      if (ball.common.selftest) return run_selftest("tree", out);
      text = do_tree_ball(ball);
      return emit(ball.common, out, text);
    }
    if (geo_cmd->parsed()) {
      if (geo.common.selftest) return run_selftest("tree", out);
      text = do_tree_geodesic(geo);
      return emit(geo.common, out, text);
    }
    if (table_cmd->parsed()) {
      if (table.common.selftest) return run_selftest("horo", out);
      text = do_horo_table(table);
      return emit(table.common, out, text);
    }
    if (profile_cmd->parsed()) {
      if (profile.common.selftest) return run_selftest("horo", out);
      text = do_horo_profile(profile, violations);
      emit(profile.common, out, text);
      return violations ? 2 : 0;
    }
    if (bscomm_cmd->parsed()) {
      if (bscomm.common.selftest) return run_selftest("bs", out);
      text = do_bs_comm(bscomm);
      return emit(bscomm.common, out, text);
    }
    if (bsphi_cmd->parsed()) {
      if (bsphi.common.selftest) return run_selftest("bs", out);
      text = do_bs_phi(bsphi);
      return emit(bsphi.common, out, text);
    }
    if (s0_cmd->parsed()) {
      if (s0.common.selftest) return run_selftest("rig", out);
      text = do_rig_s0(s0);
      return emit(s0.common, out, text);
    }
    if (verify_cmd->parsed()) {
      if (verify.common.selftest) return run_selftest("rig", out);
      text = do_rig_verify(verify, violations);
      emit(verify.common, out, text);
      return violations ? 2 : 0;
    }
    if (extract_cmd->parsed()) {
      if (extract.common.selftest) return run_selftest("rig", out);
      text = do_rig_extract(extract, code);
      emit(extract.common, out, text);
      return code;
    }
    if (bound_cmd->parsed()) {
      if (bound.common.selftest) return run_selftest("comm", out);
      text = do_comm_bound(bound);
      return emit(bound.common, out, text);
    }
    if (transport_cmd->parsed()) {
      if (transport.common.selftest) return run_selftest("comm", out);
      text = do_comm_transport(transport);
      return emit(transport.common, out, text);
    }
    err << app.help();
    return 64;
  } catch (const VerificationFailed& e) {
    err << nlohmann::ordered_json{{"error", {{"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << nlohmann::ordered_json{{"error", {{"message", e.what()}}}}.dump() << "\n";
    return 1;
  }
}

}  // namespace horotree
