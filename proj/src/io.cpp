#include "heis/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace heis::io {

std::string fmt(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- CSV ---------------------------------------------------------------------------------

namespace {

std::string complex_header(const char* prefix, int from, int to) {
  std::string h;
  for (int k = from; k < to; ++k) {
    if (!h.empty()) h += ',';
    h += prefix + std::to_string(k) + "_re," + prefix + std::to_string(k) + "_im";
  }
  return h;
}

void append_complex(std::string& row, cplx z) {
  row += fmt(z.real());
  row += ',';
  row += fmt(z.imag());
}

}  // namespace

std::string heis_csv(const std::vector<HeisPoint>& pts) {
  const int d = pts.empty() ? 1 : pts.front().dim();
  std::string out = complex_header("u", 1, d + 1) + ",s\n";
  for (const auto& p : pts) {
    for (int k = 0; k < d; ++k) {
      append_complex(out, p.u[k]);
      out += ',';
    }
    out += fmt(p.s);
    out += '\n';
  }
  return out;
}

std::string measure_csv(const PointMeasure& mu) {
  const int d = mu.dim();
  std::string out = complex_header("u", 1, d + 1) + ",s,w\n";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto& p = mu.points()[i];
    for (int k = 0; k < d; ++k) {
      append_complex(out, p.u[k]);
      out += ',';
    }
    out += fmt(p.s) + ',' + fmt(mu.weights()[i]) + '\n';
  }
  return out;
}

std::string plane_csv(const std::vector<CVec>& pts) {
  const int d = pts.empty() ? 1 : static_cast<int>(pts.front().size());
  std::string out = complex_header("z", 1, d + 1) + "\n";
  for (const auto& z : pts) {
    for (int k = 0; k < d; ++k) {
      if (k > 0) out += ',';
      append_complex(out, z[k]);
    }
    out += '\n';
  }
  return out;
}

std::string boundary_csv(const std::vector<BoundaryPoint>& pts) {
  const int n = pts.empty() ? 3 : static_cast<int>(pts.front().v().size());
  std::string out = complex_header("v", 0, n) + "\n";
  for (const auto& p : pts) {
    const BVec v = p.v() / p.v().norm();
    for (int k = 0; k < n; ++k) {
      if (k > 0) out += ',';
      append_complex(out, v[k]);
    }
    out += '\n';
  }
  return out;
}

std::string scale_csv(const DimEstimate& e) {
  std::string out = "scale,count,used\n";
  for (std::size_t i = 0; i < e.scales.size(); ++i) out += fmt(e.scales[i]) + ',' + fmt(e.counts[i]) + ",1\n";
  for (std::size_t i = 0; i < e.excluded_scales.size(); ++i) {
    out += fmt(e.excluded_scales[i]) + ',' + fmt(e.excluded_counts[i]) + ",0\n";
  }
  return out;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      double v = 0.0;
      const auto r = std::from_chars(p, end, v);
      if (r.ec != std::errc()) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": not a number");
      }
      row.push_back(v);
      p = r.ptr;
      if (p == end) break;
      if (*p != ',') throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected ','");
      ++p;
    }
    if (row.size() != t.header.size()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(t.header.size()) + " columns");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

int heis_columns(const Table& t, bool& weighted) {
  weighted = !t.header.empty() && t.header.back() == "w";
  const std::size_t n = t.header.size() - (weighted ? 1 : 0);
  if (n < 3 || n % 2 != 1 || t.header[n - 1] != "s") {
    throw std::runtime_error("expected columns u1_re,u1_im,...,s[,w]");
  }
  const int d = static_cast<int>((n - 1) / 2);
  check_dim(d);
  return d;
}

}  // namespace

std::vector<HeisPoint> heis_points(const Table& t) {
  bool weighted = false;
  const int d = heis_columns(t, weighted);
  std::vector<HeisPoint> pts;
  pts.reserve(t.rows.size());
  for (const auto& r : t.rows) pts.push_back(from_real(r.data(), d));
  return pts;
}

PointMeasure heis_measure(const Table& t, Ambient ambient) {
  bool weighted = false;
  const int d = heis_columns(t, weighted);
  if (t.rows.empty()) return PointMeasure(ambient, d);
  auto pts = heis_points(t);
  if (!weighted) return PointMeasure::uniform(ambient, std::move(pts));
  std::vector<double> w;
  for (const auto& r : t.rows) w.push_back(r.back());
  return {ambient, std::move(pts), std::move(w)};
}

std::vector<std::vector<double>> real_rows(const Table& t) { return t.rows; }

// --- JSON -----------------------------------------------------------------------------

void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& a : allowed) known = known || key == a;
    if (!known) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(where + ": missing key '" + key + "'");
  return j.at(key);
}

cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("complex numbers are written [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

CVec cvec_from(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nonempty list of complex numbers");
  check_dim(static_cast<int>(j.size()));
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = complex_from(j[k]);
  return v;
}

json to_json(const CVec& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(to_json(v[k]));
  return a;
}

namespace {

template <class M>
M matrix_from(const json& j, int max_rows) {
  if (!j.is_array() || j.empty() || static_cast<int>(j.size()) > max_rows) {
    throw std::invalid_argument("expected a square complex matrix as a list of rows");
  }
  const auto n = static_cast<Eigen::Index>(j.size());
  M m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument("matrix rows must all have length " + std::to_string(n));
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

template <class M>
json matrix_to(const M& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

CMat cmat_from(const json& j) { return matrix_from<CMat>(j, kMaxDim); }
json to_json(const CMat& m) { return matrix_to(m); }
BMat bmat_from(const json& j) { return matrix_from<BMat>(j, kMaxDim + 2); }
json to_json(const BMat& m) { return matrix_to(m); }

HeisPoint heis_point_from(const json& j) {
  check_keys(j, {"u", "s"}, "point");
  const json& s = need(j, "s", "point");
  if (!s.is_number()) throw std::invalid_argument("point: 's' must be a number");
  return {cvec_from(need(j, "u", "point")), s.get<double>()};
}

json to_json(const HeisPoint& p) { return {{"u", to_json(p.u)}, {"s", p.s}}; }

HeisSimilarity similarity_from(const json& j) {
  check_keys(j, {"U", "r", "translation"}, "map");
  return {cmat_from(need(j, "U", "map")), need(j, "r", "map").get<double>(),
          heis_point_from(need(j, "translation", "map"))};
}

HeisIFS ifs_from(const json& j) {
  check_keys(j, {"maps", "probabilities"}, "ifs");
  const json& maps = need(j, "maps", "ifs");
  if (!maps.is_array()) throw std::invalid_argument("ifs: 'maps' must be a list");
  std::vector<HeisSimilarity> fs;
  for (const auto& m : maps) fs.push_back(similarity_from(m));
  std::vector<double> p;
  if (j.contains("probabilities")) p = j.at("probabilities").get<std::vector<double>>();
  return {std::move(fs), std::move(p)};
}

OpenSetCandidate candidate_from(const json& j) {
  check_keys(j, {"disk", "square"}, "osc_candidate");
  if (j.size() != 1) throw std::invalid_argument("osc_candidate: give exactly one of 'disk' or 'square'");
  if (j.contains("disk")) {
    const json& d = j.at("disk");
    check_keys(d, {"centre", "radius"}, "disk");
    return DiskCandidate{cvec_from(need(d, "centre", "disk")), need(d, "radius", "disk").get<double>()};
  }
  const json& s = j.at("square");
  check_keys(s, {"centre", "half_side"}, "square");
  return SquareCandidate{complex_from(need(s, "centre", "square")), need(s, "half_side", "square").get<double>()};
}

json to_json(const DimEstimate& e) {
  return {{"slope", e.slope},
          {"stderr", e.stderr_},
          {"r2", e.r2},
          {"scales", e.scales},
          {"counts", e.counts},
          {"excluded_scales", e.excluded_scales},
          {"excluded_counts", e.excluded_counts},
          {"method", e.method},
          {"flags", e.flags}};
}

json to_json(const OscReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"min_separation", r.min_separation},
          {"containment_slack", r.containment_slack},
          {"worst_pair", {r.worst_i, r.worst_j}}};
}

json to_json(const TilingAudit& a) {
  return {{"samples", a.samples},
          {"unique", a.unique},
          {"multiple", a.multiple},
          {"unclaimed", a.unclaimed},
          {"unique_rate", a.unique_rate},
          {"boundary_ambiguity_rate", 1.0 - a.unique_rate},
          {"volume", a.volume},
          {"volume_stderr", a.volume_stderr},
          {"volume_fundamental", a.volume_fundamental},
          {"c_inner", a.c_inner},
          {"c_outer", a.c_outer},
          {"radius", a.radius}};
}

std::optional<HeisPoint> parse_basepoint(const std::string& text, int d) {
  if (text == "infinity") return std::nullopt;
  std::vector<double> v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    double x = 0.0;
    const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), x);
    if (r.ec != std::errc() || r.ptr != cell.data() + cell.size()) {
      throw std::invalid_argument("basepoint: '" + cell + "' is not a number");
    }
    v.push_back(x);
  }
  if (static_cast<int>(v.size()) != 2 * d + 1) {
    throw std::invalid_argument("basepoint needs " + std::to_string(2 * d + 1) + " numbers or 'infinity'");
  }
  return from_real(v.data(), d);
}

}  // namespace heis::io
