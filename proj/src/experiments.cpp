#include "heis/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heis/rng.hpp"

namespace heis {

using io::json;

bool ExperimentReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass || !c.gate; });
}

io::json ExperimentReport::verdict() const {
  json crit = json::array();
  json failing = json::array();
  for (const auto& c : criteria) {
    crit.push_back({{"id", c.id}, {"description", c.description}, {"pass", c.pass}, {"gate", c.gate},
                    {"detail", c.detail}});
    if (c.gate && !c.pass) failing.push_back(c.id);
  }
  return {{"experiment", name}, {"pass", pass()}, {"failing", failing}, {"criteria", crit}, {"files", files}};
}

std::string ExperimentReport::summary() const {
  std::ostringstream os;
  os << "experiment " << name << ": " << (pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : criteria) {
    os << "  [" << (c.pass ? "pass" : (c.gate ? "FAIL" : "note")) << "] " << c.id << ": " << c.description;
    if (!c.gate) os << " (diagnostic)";
    os << "\n";
  }
  return os.str();
}

const Criterion& ExperimentReport::criterion(const std::string& id) const {
  for (const auto& c : criteria) {
    if (c.id == id) return c;
  }
  throw std::out_of_range("no criterion " + id);
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"theorem-b", "schottky-stability", "vertical-line", "entropy-averages"};
  return names;
}

std::string default_config_file(const std::string& name) {
  if (name == "schottky-stability") return "schottky_pair.json";
  std::string f = name;
  std::replace(f.begin(), f.end(), '-', '_');
  return f + ".json";
}

const std::vector<std::string>& config_keys(const std::string& name) {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> schemas{
      {"theorem-b",
       {"experiment", "d", "b", "seed", "ifs", "osc_candidate", "samples", "word_length", "basepoints",
        "koranyi_m_range", "dyadic_range", "tolerance", "spread_tolerance", "write_clouds"}},
      {"vertical-line",
       {"experiment", "d", "b", "seed", "samples", "s_range", "basepoints", "koranyi_m_range", "dyadic_range",
        "piZ_max", "pi_range", "koranyi_target", "koranyi_tolerance", "write_clouds"}},
      {"schottky-stability",
       {"experiment", "d", "b", "seed", "generators", "base_points", "word_length", "convergence_length",
        "invariance_tested", "ping_pong_probes", "basepoints", "koranyi_m_range", "dyadic_range",
        "spread_tolerance", "agreement_tolerance", "write_clouds"}},
      {"entropy-averages",
       {"experiment", "d", "b", "seed", "ifs", "q", "steps", "starts", "samples_per_step",
        "start_word_length", "projectors", "upper_slack", "lower_slack", "tail_length", "attempt_factor"}},
  };
  for (const auto& [n, keys] : schemas) {
    if (n == name) return keys;
  }
  throw std::invalid_argument("unknown experiment '" + name +
                              "' (expected theorem-b, schottky-stability, vertical-line or entropy-averages)");
}

void validate_config(const io::json& config) {
  const std::string name = io::need(config, "experiment", "config").get<std::string>();
  io::check_keys(config, config_keys(name), name);
}

// --- basepoints -------------------------------------------------------------------------

BasepointPlan basepoint_plan_from(const json& j, int d) {
  io::check_keys(j, {"explicit", "random", "near_set", "scale", "offset", "off_centre"}, "basepoints");
  BasepointPlan plan;
  if (j.contains("explicit")) {
    for (const auto& e : j.at("explicit")) {
      if (e.is_string()) {
        if (e.get<std::string>() != "infinity") throw std::invalid_argument("basepoints: unknown name " + e.dump());
        plan.explicit_points.emplace_back(std::nullopt);
      } else {
        HeisPoint p = io::heis_point_from(e);
        if (p.dim() != d) throw DimensionMismatch("basepoint dimension differs from d");
        plan.explicit_points.emplace_back(std::move(p));
      }
    }
  }
  plan.random = j.value("random", std::size_t{0});
  plan.near_set = j.value("near_set", std::size_t{0});
  plan.scale = j.value("scale", 2.0);
  plan.offset = j.value("offset", 0.05);
  plan.off_centre = j.value("off_centre", false);
  require(plan.scale > 0.0 && plan.offset > 0.0, "basepoints: scale and offset must be positive");
  return plan;
}

std::vector<std::optional<HeisPoint>> resolve_basepoints(const BasepointPlan& plan, int d,
                                                         const std::vector<HeisPoint>& reference,
                                                         std::uint64_t seed) {
  std::vector<std::optional<HeisPoint>> out = plan.explicit_points;
  for (std::size_t i = 0; i < plan.random; ++i) {
    CounterRng rng(seed, i);
    HeisPoint p = HeisPoint::identity(d);
    do {
      for (int k = 0; k < d; ++k) p.u[k] = cplx(rng.normal(), rng.normal()) * plan.scale;
      p.s = rng.normal() * plan.scale * plan.scale;
    } while (plan.off_centre && p.u.norm() < 0.1 * plan.scale);
    out.emplace_back(std::move(p));
  }
  if (plan.near_set > 0) require(!reference.empty(), "basepoints: near_set needs a reference cloud");
  for (std::size_t i = 0; i < plan.near_set; ++i) {
    CounterRng rng(seed, plan.random + i);
    const HeisPoint& anchor = reference[rng.below(reference.size())];
    HeisPoint v = HeisPoint::identity(d);
    for (int k = 0; k < d; ++k) v.u[k] = cplx(rng.normal(), rng.normal());
    v.s = rng.normal();
    out.emplace_back(group_mul(anchor, dilate(plan.offset / koranyi_gauge(v), v)));
  }
  return out;
}

namespace {

// --- shared plumbing ---------------------------------------------------------------------

struct Runner {
  std::filesystem::path dir;
  ExperimentReport rep;

  void write(const std::string& name, const std::string& content) {
    io::write_atomic(dir / name, content);
    rep.files.push_back(name);
  }
  json write_dim(const std::string& stem, const DimEstimate& e) {
    json j = io::to_json(e);
    write(stem + ".json", io::dump(j));
    write(stem + ".csv", io::scale_csv(e));
    j["file"] = stem + ".json";
    return j;
  }
  void add(std::string id, std::string description, bool pass, json detail, bool gate = true) {
    rep.criteria.push_back({std::move(id), std::move(description), pass, gate, std::move(detail)});
  }
};

std::pair<int, int> range_from(const json& j, const char* key, std::pair<int, int> fallback) {
  if (!j.contains(key)) return fallback;
  const auto v = j.at(key).get<std::vector<int>>();
  if (v.size() != 2 || v[0] > v[1]) throw std::invalid_argument(std::string(key) + ": expected [lo, hi]");
  return {v[0], v[1]};
}

std::string label(const std::optional<HeisPoint>& p, std::size_t i) {
  return p ? "x" + std::to_string(i) : "infinity";
}

json basepoint_json(const std::optional<HeisPoint>& p) { return p ? io::to_json(*p) : json("infinity"); }

struct Projected {
  std::vector<CVec> points;
  std::size_t basepoint = 0;
  std::size_t singular = 0;
};

Projected project_cloud(const ChainProjector& p, const std::vector<HeisPoint>& cloud) {
  Projected out;
  out.points.reserve(cloud.size());
  for (const auto& h : cloud) {
    const auto r = try_project(p, h);
    if (r.status == ProjectStatus::Ok) {
      out.points.push_back(r.value);
    } else if (r.status == ProjectStatus::Basepoint) {
      ++out.basepoint;
    } else {
      ++out.singular;
    }
  }
  return out;
}

Projected project_cloud(const ChainProjector& p, const std::vector<BoundaryPoint>& cloud) {
  Projected out;
  out.points.reserve(cloud.size());
  for (const auto& y : cloud) {
    const auto r = try_project_boundary(p, y);
    if (r.status == ProjectStatus::Ok) {
      out.points.push_back(r.value);
    } else if (r.status == ProjectStatus::Basepoint) {
      ++out.basepoint;
    } else {
      ++out.singular;
    }
  }
  return out;
}

ChainProjector projector_for(const std::optional<HeisPoint>& p, int d) {
  return p ? ChainProjector::at(*p) : ChainProjector::infinity(d);
}

struct Common {
  int d = 1;
  int b = 3;
  std::uint64_t seed = 0;
};

Common common_from(const json& c, std::optional<std::uint64_t> seed_override) {
  Common k;
  k.d = io::need(c, "d", "config").get<int>();
  k.b = io::need(c, "b", "config").get<int>();
  k.seed = seed_override ? *seed_override : io::need(c, "seed", "config").get<std::uint64_t>();
  check_dim(k.d);
  return k;
}

std::uint64_t subseed(std::uint64_t seed, std::uint64_t tag) { return mix64(seed ^ mix64(tag)); }

// --- theorem-b ------------------------------------------------------------------------------

void run_theorem_b(const json& c, Runner& run, std::optional<std::uint64_t> seed_override) {
  validate_config(c);
  const Common k = common_from(c, seed_override);
  const HeisIFS ifs = io::ifs_from(io::need(c, "ifs", "theorem-b"));
  if (ifs.dim() != k.d) throw DimensionMismatch("theorem-b: IFS dimension differs from d");
  const TileSystem ts(k.d, k.b);
  const auto n = io::need(c, "samples", "theorem-b").get<std::size_t>();
  const int len = io::need(c, "word_length", "theorem-b").get<int>();
  const auto [m_lo, m_hi] = range_from(c, "koranyi_m_range", {2, 6});
  const auto [k_lo, k_hi] = range_from(c, "dyadic_range", {3, 9});
  const double tol = c.value("tolerance", 0.1);
  const double spread_tol = c.value("spread_tolerance", 0.1);
  const double s = ifs.similarity_dimension();

  const OscReport osc = osc_audit_quotient(quotient_ifs(ifs), io::candidate_from(io::need(c, "osc_candidate", "theorem-b")));
  json oscj = io::to_json(osc);
  run.write("osc.json", io::dump(oscj));
  oscj["file"] = "osc.json";
  run.add("osc", "quotient IFS satisfies the open set condition on the supplied candidate",
          osc.verdict != OscVerdict::Fail, oscj);

  const auto cloud = sample_attractor(ifs, RandomWords{n, len, subseed(k.seed, 1)});
  if (c.value("write_clouds", false)) run.write("attractor.csv", io::heis_csv(cloud));

  std::vector<double> slopes;
  const auto kor = box_dim_koranyi(cloud, ts, m_lo, m_hi);
  json korj = run.write_dim("dim_koranyi", kor);
  slopes.push_back(kor.slope);
  run.add("koranyi", "Koranyi box dimension of the attractor within tolerance of s", std::abs(kor.slope - s) <= tol,
          {{"estimate", korj}, {"target", s}, {"tolerance", tol}});

  std::vector<CVec> z;
  z.reserve(cloud.size());
  for (const auto& p : cloud) z.push_back(p.u);
  const auto piz = box_dim_euclidean(z, k_lo, k_hi);
  json pizj = run.write_dim("dim_piZ", piz);
  slopes.push_back(piz.slope);
  run.add("piZ", "Euclidean box dimension of pi_Z(X) within tolerance of s", std::abs(piz.slope - s) <= tol,
          {{"estimate", pizj}, {"target", s}, {"tolerance", tol}});

  const auto bases = resolve_basepoints(basepoint_plan_from(io::need(c, "basepoints", "theorem-b"), k.d), k.d,
                                        cloud, subseed(k.seed, 2));
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const std::string tag = label(bases[i], i);
    const auto proj = project_cloud(projector_for(bases[i], k.d), cloud);
    const auto est = box_dim_euclidean(proj.points, k_lo, k_hi);
    json j = run.write_dim("dim_pi_" + tag, est);
    slopes.push_back(est.slope);
    run.add("pi_" + tag, "Euclidean box dimension of the projection within tolerance of s",
            std::abs(est.slope - s) <= tol,
            {{"basepoint", basepoint_json(bases[i])},
             {"estimate", j},
             {"excluded_basepoint", proj.basepoint},
             {"excluded_singular", proj.singular},
             {"target", s},
             {"tolerance", tol}});
  }
  const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
  run.add("spread", "max pairwise spread of all estimates", *hi - *lo <= spread_tol,
          {{"spread", *hi - *lo}, {"tolerance", spread_tol}, {"slopes", slopes}, {"moran", s}});
}

// --- vertical-line ------------------------------------------------------------------------

void run_vertical_line(const json& c, Runner& run, std::optional<std::uint64_t> seed_override) {
  validate_config(c);
  const Common k = common_from(c, seed_override);
  const TileSystem ts(k.d, k.b);
  const auto n = io::need(c, "samples", "vertical-line").get<std::size_t>();
  const auto srange = c.value("s_range", std::vector<double>{-1.0, 1.0});
  require(srange.size() == 2 && srange[0] < srange[1], "vertical-line: s_range must be [lo, hi]");
  const auto [m_lo, m_hi] = range_from(c, "koranyi_m_range", {1, 4});
  const auto [k_lo, k_hi] = range_from(c, "dyadic_range", {3, 9});
  const double piz_max = c.value("piZ_max", 0.1);
  const auto pi_range = c.value("pi_range", std::vector<double>{0.9, 1.1});
  require(pi_range.size() == 2, "vertical-line: pi_range must be [lo, hi]");
  const double target = c.value("koranyi_target", 2.0);
  const double ktol = c.value("koranyi_tolerance", 0.15);

  std::vector<HeisPoint> seg;
  seg.reserve(n);
  const std::uint64_t sseed = subseed(k.seed, 1);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(sseed, i);
    seg.emplace_back(CVec::Zero(k.d), rng.uniform(srange[0], srange[1]));
  }
  if (c.value("write_clouds", false)) run.write("segment.csv", io::heis_csv(seg));

  const auto kor = box_dim_koranyi(seg, ts, m_lo, m_hi);
  json korj = run.write_dim("dim_koranyi", kor);
  run.add("koranyi", "Koranyi box dimension of the segment", std::abs(kor.slope - target) <= ktol,
          {{"estimate", korj}, {"target", target}, {"tolerance", ktol}});

  std::vector<CVec> z;
  for (const auto& p : seg) z.push_back(p.u);
  const auto piz = box_dim_euclidean(z, k_lo, k_hi);
  json pizj = run.write_dim("dim_piZ", piz);
  run.add("piZ", "pi_Z collapses the segment to a point", piz.slope <= piz_max, {{"estimate", pizj}, {"max", piz_max}});

  const auto bases = resolve_basepoints(basepoint_plan_from(io::need(c, "basepoints", "vertical-line"), k.d), k.d,
                                        seg, subseed(k.seed, 2));
  for (std::size_t i = 0; i < bases.size(); ++i) {
    require(bases[i].has_value() && !bases[i]->is_vertical(),
            "vertical-line: basepoints must be finite and off the centre");
    const std::string tag = label(bases[i], i);
    const auto proj = project_cloud(projector_for(bases[i], k.d), seg);
    const auto est = box_dim_euclidean(proj.points, k_lo, k_hi);
    json j = run.write_dim("dim_pi_" + tag, est);
    run.add("pi_" + tag, "projection of the segment from a basepoint off the centre is a curve",
            est.slope >= pi_range[0] && est.slope <= pi_range[1],
            {{"basepoint", basepoint_json(bases[i])},
             {"estimate", j},
             {"excluded_singular", proj.singular},
             {"range", pi_range}});
  }
}

// --- schottky-stability ----------------------------------------------------------------------

void run_schottky(const json& c, Runner& run, std::optional<std::uint64_t> seed_override) {
  validate_config(c);
  const Common k = common_from(c, seed_override);
  const TileSystem ts(k.d, k.b);
  std::vector<BoundaryIsometry> gens;
  for (const auto& m : io::need(c, "generators", "schottky-stability")) {
    const BMat g = io::bmat_from(m);
    if (g.rows() != k.d + 2) throw DimensionMismatch("schottky-stability: generator size differs from d + 2");
    gens.emplace_back(g);
  }
  std::vector<BoundaryPoint> base;
  for (const auto& e : io::need(c, "base_points", "schottky-stability")) {
    if (e.is_string() && e.get<std::string>() == "infinity") {
      base.push_back(BoundaryPoint::infinity(k.d));
    } else {
      base.push_back(phi(io::heis_point_from(e)));
    }
  }
  const int len = io::need(c, "word_length", "schottky-stability").get<int>();
  const SchottkyGenerators sg(std::move(gens), std::move(base), len);
  const auto [m_lo, m_hi] = range_from(c, "koranyi_m_range", {1, 6});
  const auto [k_lo, k_hi] = range_from(c, "dyadic_range", {3, 9});
  const double spread_tol = c.value("spread_tolerance", 0.15);
  const double agree_tol = c.value("agreement_tolerance", 0.15);

  const auto pp = ping_pong_audit(sg, c.value("ping_pong_probes", std::size_t{3000}), subseed(k.seed, 3));
  json spheres = json::array();
  for (const auto& sp : pp.spheres) spheres.push_back({{"centre", io::to_json(sp.centre)}, {"radius", sp.radius}});
  json ppj = {{"min_gap", pp.min_gap}, {"probes", pp.probes}, {"violations", pp.violations}, {"ok", pp.ok},
              {"isometric_spheres", spheres}};
  run.write("ping_pong.json", io::dump(ppj));
  ppj["file"] = "ping_pong.json";
  run.add("ping-pong", "isometric spheres of the letters are disjoint and every letter plays ping-pong", pp.ok, ppj);

  const auto conv = schottky_convergence(sg, c.value("convergence_length", len));
  json convj = {{"level_gap", conv.level_gap}, {"ratios", conv.ratios}, {"mean_ratio", conv.mean_ratio},
                {"warning", conv.warning}};
  run.write("convergence.json", io::dump(convj));
  convj["file"] = "convergence.json";
  run.add("convergence", "level gaps shrink geometrically (ratio below 0.98)", !conv.warning, convj, false);

  const auto cloud = schottky_limit_sample(sg, len);
  if (c.value("write_clouds", false)) run.write("limit_set.csv", io::boundary_csv(cloud));

  const auto inv = schottky_invariance(sg, cloud, len, c.value("invariance_tested", std::size_t{100}),
                                       subseed(k.seed, 4));
  json invj = {{"tested", inv.tested}, {"max_distance", inv.max_distance}, {"resolution", inv.resolution},
               {"floor", kVisualFloor}, {"ok", inv.ok}};
  run.write("invariance.json", io::dump(invj));
  invj["file"] = "invariance.json";
  run.add("invariance", "generators map the cloud into itself at the cloud's resolution", inv.ok, invj);

  std::vector<HeisPoint> chart;
  std::size_t at_infinity = 0;
  for (const auto& y : cloud) {
    try {
      chart.push_back(phi_inverse(y));
    } catch (const PointAtInfinity&) {
      ++at_infinity;
    }
  }
  const auto kor = box_dim_koranyi(chart, ts, m_lo, m_hi);
  json korj = run.write_dim("dim_koranyi", kor);
  korj["excluded_at_infinity"] = at_infinity;

  const auto bases = resolve_basepoints(basepoint_plan_from(io::need(c, "basepoints", "schottky-stability"), k.d),
                                        k.d, chart, subseed(k.seed, 2));
  std::vector<double> slopes;
  json per = json::array();
  bool agree = true;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const std::string tag = label(bases[i], i);
    const auto proj = project_cloud(projector_for(bases[i], k.d), cloud);
    const auto est = box_dim_euclidean(proj.points, k_lo, k_hi);
    json j = run.write_dim("dim_pi_" + tag, est);
    slopes.push_back(est.slope);
    const bool ok = std::abs(est.slope - kor.slope) <= agree_tol;
    agree = agree && ok;
    per.push_back({{"basepoint", basepoint_json(bases[i])},
                   {"estimate", j},
                   {"excluded_basepoint", proj.basepoint},
                   {"excluded_singular", proj.singular},
                   {"agrees", ok}});
  }
  const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
  run.add("spread", "projected box dimensions agree across basepoints", *hi - *lo <= spread_tol,
          {{"spread", *hi - *lo}, {"tolerance", spread_tol}, {"slopes", slopes}});
  run.add("agreement", "each projected box dimension matches the Koranyi box dimension of the limit set", agree,
          {{"koranyi", korj}, {"tolerance", agree_tol}, {"projections", per}});
}

// --- entropy-averages ------------------------------------------------------------------------

void run_entropy_averages(const json& c, Runner& run, std::optional<std::uint64_t> seed_override) {
  validate_config(c);
  const Common k = common_from(c, seed_override);
  const TileSystem ts(k.d, k.b);
  HeisIFS ifs = io::ifs_from(io::need(c, "ifs", "entropy-averages"));
  if (ifs.dim() != k.d) throw DimensionMismatch("entropy-averages: IFS dimension differs from d");
  const double s = ifs.similarity_dimension();
  const auto qs = io::need(c, "q", "entropy-averages").get<std::vector<int>>();
  const int steps = io::need(c, "steps", "entropy-averages").get<int>();
  const auto starts_n = io::need(c, "starts", "entropy-averages").get<std::size_t>();
  const auto per_step = io::need(c, "samples_per_step", "entropy-averages").get<std::size_t>();
  const int start_len = c.value("start_word_length", 30);
  const double upper = c.value("upper_slack", 0.15);
  const double lower = c.value("lower_slack", 0.3);
  const SelfSimilarSource source(std::move(ifs), c.value("tail_length", 24), c.value("attempt_factor", std::size_t{400}));

  std::vector<std::optional<HeisPoint>> projectors;
  for (const auto& e : io::need(c, "projectors", "entropy-averages")) {
    if (e.is_string()) {
      if (e.get<std::string>() != "infinity") throw std::invalid_argument("projectors: unknown name " + e.dump());
      projectors.emplace_back(std::nullopt);
    } else {
      projectors.emplace_back(io::heis_point_from(e));
    }
  }
  const auto starts = sample_attractor(source.ifs(), RandomWords{starts_n, start_len, subseed(k.seed, 1)});

  for (std::size_t pi = 0; pi < projectors.size(); ++pi) {
    const ChainProjector proj = projector_for(projectors[pi], k.d);
    const std::string ptag = label(projectors[pi], pi);
    for (int q : qs) {
      json rows = json::array();
      double sum = 0.0;
      std::size_t used = 0;
      std::size_t partial = 0;
      int saturated = 0;
      for (std::size_t i = 0; i < starts.size(); ++i) {
        const auto r = local_entropy_average(source, starts[i], q, steps, ts, proj, per_step,
                                             subseed(k.seed, 1000 * (pi + 1) + 100 * static_cast<std::size_t>(q) + i));
        rows.push_back({{"start", io::to_json(starts[i])},
                        {"value", r.value},
                        {"n_achieved", r.n_achieved},
                        {"partial", r.partial},
                        {"saturated_steps", r.saturated_steps},
                        {"entropies", r.entropies}});
        saturated += r.saturated_steps;
        if (r.partial) ++partial;
        if (r.n_achieved > 0) {
          sum += r.value;
          ++used;
        }
      }
      const double mean = used > 0 ? sum / static_cast<double>(used) : 0.0;
      const std::string stem = "lea_" + ptag + "_q" + std::to_string(q);
      json report = {{"projector", basepoint_json(projectors[pi])},
                     {"q", q},
                     {"steps", steps},
                     {"samples_per_step", per_step},
                     {"mean", mean},
                     {"starts_used", used},
                     {"partial_starts", partial},
                     {"saturated_steps", saturated},
                     {"moran", s},
                     {"per_start", rows}};
      run.write(stem + ".json", io::dump(report));
      json detail = {{"mean", mean},      {"moran", s},          {"upper", s + upper}, {"lower", s - lower},
                     {"file", stem + ".json"}, {"starts_used", used}, {"q", q}};
      run.add(stem + "_upper", "local entropy average does not overshoot s", used > 0 && mean <= s + upper, detail);
      run.add(stem + "_band", "local entropy average lies in the O(1/q) band below s", mean >= s - lower, detail,
              false);
    }
  }
}

}  // namespace

ExperimentReport run_experiment(const json& config, const std::filesystem::path& out_dir,
                                std::optional<std::uint64_t> seed_override) {
  const std::string name = io::need(config, "experiment", "config").get<std::string>();
  Runner run{out_dir, {}};
  run.rep.name = name;
  if (name == "theorem-b") {
    run_theorem_b(config, run, seed_override);
  } else if (name == "vertical-line") {
    run_vertical_line(config, run, seed_override);
  } else if (name == "schottky-stability") {
    run_schottky(config, run, seed_override);
  } else if (name == "entropy-averages") {
    run_entropy_averages(config, run, seed_override);
  } else {
    throw std::invalid_argument("unknown experiment '" + name +
                                "' (expected theorem-b, schottky-stability, vertical-line or entropy-averages)");
  }
  io::write_atomic(out_dir / "verdict.json", io::dump(run.rep.verdict()));
  io::write_atomic(out_dir / "summary.txt", run.rep.summary());
  return run.rep;
}

}  // namespace heis
