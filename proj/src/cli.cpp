#include "heis/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "heis/experiments.hpp"

#ifndef HEIS_CONFIG_DIR
#define HEIS_CONFIG_DIR "configs"
#endif

namespace heis {

namespace {

using io::json;
namespace fs = std::filesystem;

struct TileArgs {
  int d = 1;
  int b = 3;
  std::size_t n = 100000;
  std::uint64_t seed = 7;
  std::string out = "out/tile";
  double volume_tol = 0.02;
  double min_unique = 0.99;
};

int cmd_tile(const TileArgs& a) {
  const TileSystem ts(a.d, a.b);
  io::write_atomic(fs::path(a.out) / "tile_samples.csv", io::heis_csv(tile_sample(ts, a.n, a.seed)));
  const TilingAudit audit = tiling_audit(ts, a.n, a.seed);
  const bool volume_ok = std::abs(audit.volume - 1.0) <= a.volume_tol;
  const bool unique_ok = audit.unique_rate >= a.min_unique;
  const bool residues_ok = ts.residue_bijection();
  json j = io::to_json(audit);
  j["d"] = a.d;
  j["b"] = a.b;
  j["seed"] = a.seed;
  j["radius_lower"] = ts.radius_lower();
  j["radius_crude"] = ts.radius_crude();
  j["checks"] = {{"volume", volume_ok}, {"unique_rate", unique_ok}, {"residue_bijection", residues_ok}};
  j["pass"] = volume_ok && unique_ok && residues_ok;
  io::write_atomic(fs::path(a.out) / "tile_audit.json", io::dump(j));
  std::cout << "tile audit: volume " << audit.volume << " +- " << audit.volume_stderr << ", unique rate "
            << audit.unique_rate << (j["pass"].get<bool>() ? " (pass)" : " (FAIL)") << "\n";
  return j["pass"].get<bool>() ? kExitOk : kExitCriteria;
}

struct IfsArgs {
  std::string config;
  std::string out = "out/ifs";
  std::optional<std::size_t> n;
  std::optional<int> length;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
};

int cmd_ifs(const IfsArgs& a) {
  const json c = io::load_json(a.config);
  if (c.contains("experiment")) {
    validate_config(c);
  } else {
    io::check_keys(c, {"d", "ifs", "osc_candidate", "samples", "word_length", "seed"}, "ifs config");
  }
  const HeisIFS ifs = io::ifs_from(io::need(c, "ifs", "ifs config"));
  SampleMode mode = Exhaustive{a.depth.value_or(1)};
  json mode_j;
  if (!a.depth) {
    const RandomWords rw{a.n.value_or(c.value("samples", std::size_t{100000})),
                         a.length.value_or(c.value("word_length", 16)),
                         a.seed.value_or(c.value("seed", std::uint64_t{0}))};
    mode = rw;
    mode_j = {{"random", {{"n", rw.n}, {"length", rw.length}, {"seed", rw.seed}}}};
  } else {
    mode_j = {{"exhaustive", {{"depth", *a.depth}}}};
  }
  const auto cloud = sample_attractor(ifs, mode);
  io::write_atomic(fs::path(a.out) / "attractor.csv", io::heis_csv(cloud));
  json ratios = json::array();
  for (const auto& f : ifs.maps()) ratios.push_back(f.ratio());
  json j = {{"maps", ifs.size()},
            {"ratios", ratios},
            {"probabilities", ifs.probabilities()},
            {"similarity_dimension", ifs.similarity_dimension()},
            {"mode", mode_j},
            {"points", cloud.size()}};
  if (c.contains("osc_candidate")) {
    j["osc"] = io::to_json(osc_audit_quotient(quotient_ifs(ifs), io::candidate_from(c.at("osc_candidate"))));
  }
  io::write_atomic(fs::path(a.out) / "ifs.json", io::dump(j));
  std::cout << "wrote " << cloud.size() << " attractor points; similarity dimension "
            << ifs.similarity_dimension() << "\n";
  return kExitOk;
}

struct SchottkyArgs {
  std::string config;
  std::string out = "out/schottky";
  std::optional<int> length;
  std::size_t probes = 3000;
  std::uint64_t seed = 1;
};

int cmd_schottky(const SchottkyArgs& a) {
  const json c = io::load_json(a.config);
  validate_config(c);
  if (c.at("experiment") != "schottky-stability") throw std::invalid_argument("schottky needs a schottky-stability config");
  const int d = io::need(c, "d", "config").get<int>();
  std::vector<BoundaryIsometry> gens;
  for (const auto& m : io::need(c, "generators", "config")) gens.emplace_back(io::bmat_from(m));
  std::vector<BoundaryPoint> base;
  for (const auto& e : io::need(c, "base_points", "config")) {
    base.push_back(e.is_string() ? BoundaryPoint::infinity(d) : phi(io::heis_point_from(e)));
  }
  const int len = a.length.value_or(io::need(c, "word_length", "config").get<int>());
  const SchottkyGenerators sg(std::move(gens), std::move(base), len);
  const auto cloud = schottky_limit_sample(sg, len);
  std::vector<HeisPoint> chart;
  for (const auto& y : cloud) {
    if (!y.is_infinity()) chart.push_back(phi_inverse(y));
  }
  io::write_atomic(fs::path(a.out) / "limit_set.csv", io::boundary_csv(cloud));
  io::write_atomic(fs::path(a.out) / "limit_set_chart.csv", io::heis_csv(chart));
  const auto conv = schottky_convergence(sg, std::max(2, len));
  io::write_atomic(fs::path(a.out) / "convergence.json",
                   io::dump({{"level_gap", conv.level_gap},
                             {"ratios", conv.ratios},
                             {"mean_ratio", conv.mean_ratio},
                             {"warning", conv.warning}}));
  const auto pp = ping_pong_audit(sg, a.probes, a.seed);
  json spheres = json::array();
  for (const auto& sp : pp.spheres) spheres.push_back({{"centre", io::to_json(sp.centre)}, {"radius", sp.radius}});
  io::write_atomic(fs::path(a.out) / "ping_pong.json",
                   io::dump({{"min_gap", pp.min_gap},
                             {"probes", pp.probes},
                             {"violations", pp.violations},
                             {"ok", pp.ok},
                             {"isometric_spheres", spheres}}));
  if (conv.warning) std::cerr << "warning: the cloud does not appear to converge (mean ratio " << conv.mean_ratio << ")\n";
  std::cout << "wrote " << cloud.size() << " limit points; mean level ratio " << conv.mean_ratio << "; ping-pong "
            << (pp.ok ? "ok" : "violated") << "\n";
  return kExitOk;
}

struct ProjectArgs {
  std::string in;
  std::string basepoint = "infinity";
  std::string out = "out/project";
  double chart_tol = ChainProjector::kChartTol;
  bool pansu = false;
  std::size_t pansu_max = 1000;
};

int cmd_project(const ProjectArgs& a) {
  const auto pts = io::heis_points(io::read_csv(a.in));
  require(!pts.empty(), "input cloud is empty");
  const int d = pts.front().dim();
  const auto bp = io::parse_basepoint(a.basepoint, d);
  const ChainProjector proj = bp ? ChainProjector::at(*bp, a.chart_tol) : ChainProjector::infinity(d);
  std::vector<CVec> out;
  std::vector<std::size_t> kept;
  std::size_t at_basepoint = 0;
  std::size_t singular = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto r = try_project(proj, pts[i]);
    if (r.status == ProjectStatus::Ok) {
      out.push_back(r.value);
      kept.push_back(i);
    } else if (r.status == ProjectStatus::Basepoint) {
      ++at_basepoint;
    } else {
      ++singular;
    }
  }
  io::write_atomic(fs::path(a.out) / "projected.csv", io::plane_csv(out));
  char fp[17];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(proj.fingerprint()));
  json report = {{"basepoint", bp ? io::to_json(*bp) : json("infinity")},
                 {"chart_fingerprint", fp},
                 {"chart_tol", proj.chart_tol()},
                 {"kernel_spectrum", proj.kernel_spectrum()},
                 {"input_points", pts.size()},
                 {"projected_points", out.size()},
                 {"basepoint_points", at_basepoint},
                 {"chart_singular_points", singular}};
  if (a.pansu) {
    std::string csv = "index,m_re,m_im,condition,richardson_gap,status\n";
    if (d != 1) throw std::invalid_argument("--pansu output is written for d = 1 only");
    const std::size_t count = std::min(a.pansu_max, kept.size());
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t i = kept[k];
      try {
        const auto pd = pansu_derivative(proj, pts[i]);
        csv += std::to_string(i) + ',' + io::fmt(pd.m(0, 0).real()) + ',' + io::fmt(pd.m(0, 0).imag()) + ',' +
               io::fmt(pd.condition) + ',' + io::fmt(pd.richardson_gap) + ",ok\n";
      } catch (const std::exception&) {
        csv += std::to_string(i) + ",0,0,0,0,unreliable\n";
      }
    }
    io::write_atomic(fs::path(a.out) / "pansu.csv", csv);
    report["pansu_points"] = count;
  }
  io::write_atomic(fs::path(a.out) / "projection_report.json", io::dump(report));
  if (at_basepoint + singular > 0) {
    std::cerr << "warning: " << at_basepoint << " points at the basepoint and " << singular
              << " chart-singular points were not projected\n";
  }
  std::cout << "projected " << out.size() << " of " << pts.size() << " points\n";
  return kExitOk;
}

struct DimArgs {
  std::string in;
  std::string method = "euclidean";
  int b = 3;
  std::vector<int> m_range{2, 6};
  std::vector<int> k_range{3, 9};
  std::vector<double> rhos;
  std::string ambient = "heisenberg";
  std::string out = "out/dim";
};

Ambient ambient_from(const std::string& s) {
  if (s == "heisenberg") return Ambient::Heisenberg;
  if (s == "plane") return Ambient::Plane;
  throw std::invalid_argument("--ambient must be heisenberg or plane");
}

int cmd_dim(const DimArgs& a) {
  const io::Table t = io::read_csv(a.in);
  DimEstimate est;
  if (a.method == "koranyi") {
    const auto pts = io::heis_points(t);
    require(!pts.empty(), "input cloud is empty");
    est = box_dim_koranyi(pts, TileSystem(pts.front().dim(), a.b), a.m_range.at(0), a.m_range.at(1));
  } else if (a.method == "euclidean") {
    est = box_dim_euclidean(io::real_rows(t), a.k_range.at(0), a.k_range.at(1));
  } else if (a.method == "entropy") {
    require(!a.rhos.empty(), "--rhos is required for the entropy method");
    est = entropy_dim(io::heis_measure(t, ambient_from(a.ambient)).normalized(), a.rhos);
  } else {
    throw std::invalid_argument("--method must be koranyi, euclidean or entropy");
  }
  io::write_atomic(fs::path(a.out) / "dim.json", io::dump(io::to_json(est)));
  io::write_atomic(fs::path(a.out) / "dim.csv", io::scale_csv(est));
  std::cout << est.method << ": slope " << est.slope << " +- " << est.stderr_ << " (r2 " << est.r2 << ")\n";
  if (!est.reliable()) std::cerr << "warning: r2 below " << DimEstimate::kMinR2 << "; estimate unreliable\n";
  return kExitOk;
}

struct EntropyArgs {
  std::string in;
  bool haar = false;
  std::vector<double> rhos;
  std::string ambient = "heisenberg";
  int d = 1;
  int b = 3;
  std::vector<int> m_range{2, 5};
  std::size_t queries = 400;
  std::size_t probes = 400;
  std::uint64_t seed = 7;
  std::string out = "out/entropy";
};

int cmd_entropy(const EntropyArgs& a) {
  json j;
  if (a.haar) {
    const TileSystem ts(a.d, a.b);
    const auto est = haar_entropy_dim(ts, a.m_range.at(0), a.m_range.at(1), a.queries, a.probes, a.seed);
    j = {{"haar", true}, {"estimate", io::to_json(est)}};
    std::cout << "Haar entropy slope " << est.slope << "\n";
  } else {
    require(!a.in.empty() && !a.rhos.empty(), "entropy needs --in and --rhos (or --haar)");
    const PointMeasure nu = io::heis_measure(io::read_csv(a.in), ambient_from(a.ambient)).normalized();
    json values = json::array();
    for (double rho : a.rhos) {
      const double h = scale_entropy(nu, rho);
      values.push_back({{"rho", rho}, {"entropy", h}, {"saturated", entropy_saturated(nu, h)}});
    }
    j = {{"atoms", nu.size()}, {"ambient", to_string(nu.ambient())}, {"values", values}};
    try {
      j["estimate"] = io::to_json(entropy_dim(nu, a.rhos));
    } catch (const InsufficientScales& e) {
      j["estimate"] = nullptr;
      std::cerr << "note: " << e.what() << "\n";
    }
  }
  io::write_atomic(fs::path(a.out) / "entropy.json", io::dump(j));
  return kExitOk;
}

struct ExperimentArgs {
  std::string name;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int cmd_experiment(const ExperimentArgs& a) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), a.name) == names.end()) {
    throw std::invalid_argument("unknown experiment '" + a.name +
                                "' (expected theorem-b, schottky-stability, vertical-line or entropy-averages)");
  }
  const fs::path config = a.config.empty() ? fs::path(HEIS_CONFIG_DIR) / default_config_file(a.name) : fs::path(a.config);
  const json c = io::load_json(config);
  if (io::need(c, "experiment", config.string()) != a.name) {
    throw std::invalid_argument(config.string() + " configures experiment " + c.at("experiment").dump() + ", not " +
                                a.name);
  }
  const fs::path out = a.out.empty() ? fs::path("out") / a.name : fs::path(a.out);
  const ExperimentReport rep = run_experiment(c, out, a.seed);
  std::cout << rep.summary();
  return rep.pass() ? kExitOk : kExitCriteria;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"heisfrac: fractal sets, projections and dimensions in the Heisenberg group"};
  app.require_subcommand(1);

  TileArgs tile;
  auto* t = app.add_subcommand("tile", "sample the Strichartz tile and audit the lattice tiling");
  t->add_option("--d", tile.d, "Heisenberg dimension")->capture_default_str();
  t->add_option("--b", tile.b, "odd base b >= 2d + 1")->capture_default_str();
  t->add_option("--n", tile.n, "samples")->capture_default_str();
  t->add_option("--seed", tile.seed)->capture_default_str();
  t->add_option("--out", tile.out, "output directory")->capture_default_str();

  IfsArgs ifs;
  auto* f = app.add_subcommand("ifs", "sample the attractor of a self-similar IFS");
  f->add_option("--config", ifs.config, "JSON with an 'ifs' block")->required();
  f->add_option("--out", ifs.out)->capture_default_str();
  f->add_option("--n", ifs.n, "random words");
  f->add_option("--length", ifs.length, "random word length");
  f->add_option("--depth", ifs.depth, "exhaustive depth (overrides random mode)");
  f->add_option("--seed", ifs.seed);

  SchottkyArgs sch;
  auto* s = app.add_subcommand("schottky", "sample a Schottky limit set");
  s->add_option("--config", sch.config, "schottky-stability config")->required();
  s->add_option("--out", sch.out)->capture_default_str();
  s->add_option("--length", sch.length, "reduced word length");
  s->add_option("--probes", sch.probes, "ping-pong probes")->capture_default_str();
  s->add_option("--seed", sch.seed)->capture_default_str();

  ProjectArgs proj;
  auto* p = app.add_subcommand("project", "project a Heisenberg cloud along chains through a basepoint");
  p->add_option("--in", proj.in, "CSV with columns u1_re,u1_im,...,s")->required();
  p->add_option("--basepoint", proj.basepoint, "'infinity' or u1_re,u1_im,...,s")->capture_default_str();
  p->add_option("--out", proj.out)->capture_default_str();
  p->add_option("--chart-tol", proj.chart_tol)->capture_default_str();
  p->add_flag("--pansu", proj.pansu, "also write Pansu derivatives (d = 1)");
  p->add_option("--pansu-max", proj.pansu_max)->capture_default_str();

  DimArgs dim;
  auto* dm = app.add_subcommand("dim", "estimate a box or entropy dimension");
  dm->add_option("--in", dim.in, "input CSV")->required();
  dm->add_option("--method", dim.method, "koranyi, euclidean or entropy")->capture_default_str();
  dm->add_option("--b", dim.b)->capture_default_str();
  dm->add_option("--m-range", dim.m_range, "tile depths lo,hi")->delimiter(',')->expected(2);
  dm->add_option("--k-range", dim.k_range, "dyadic exponents lo,hi")->delimiter(',')->expected(2);
  dm->add_option("--rhos", dim.rhos, "entropy radii")->delimiter(',');
  dm->add_option("--ambient", dim.ambient)->capture_default_str();
  dm->add_option("--out", dim.out)->capture_default_str();

  EntropyArgs ent;
  auto* e = app.add_subcommand("entropy", "scale entropies of a measure, or of Haar measure on the tile");
  e->add_option("--in", ent.in, "CSV with columns u1_re,u1_im,...,s[,w]");
  e->add_flag("--haar", ent.haar, "probe estimator for the Haar measure on T");
  e->add_option("--rhos", ent.rhos)->delimiter(',');
  e->add_option("--ambient", ent.ambient)->capture_default_str();
  e->add_option("--d", ent.d)->capture_default_str();
  e->add_option("--b", ent.b)->capture_default_str();
  e->add_option("--m-range", ent.m_range)->delimiter(',')->expected(2);
  e->add_option("--queries", ent.queries)->capture_default_str();
  e->add_option("--probes", ent.probes)->capture_default_str();
  e->add_option("--seed", ent.seed)->capture_default_str();
  e->add_option("--out", ent.out)->capture_default_str();

  ExperimentArgs ex;
  auto* x = app.add_subcommand("experiment", "run a named experiment and write its verdict");
  x->add_option("name", ex.name, "theorem-b, schottky-stability, vertical-line or entropy-averages")->required();
  x->add_option("--config", ex.config, "config file (default: the shipped one)");
  x->add_option("--out", ex.out, "output directory (default: out/<name>)");
  x->add_option("--seed", ex.seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kExitOk : kExitError;
  }
  try {
    if (*t) return cmd_tile(tile);
    if (*f) return cmd_ifs(ifs);
    if (*s) return cmd_schottky(sch);
    if (*p) return cmd_project(proj);
    if (*dm) return cmd_dim(dim);
    if (*e) return cmd_entropy(ent);
    if (*x) return cmd_experiment(ex);
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace heis
