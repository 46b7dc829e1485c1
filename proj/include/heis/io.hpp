#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heis/boundary.hpp"
#include "heis/dimension.hpp"
#include "heis/generators.hpp"

namespace heis::io {

using nlohmann::json;

/// Shortest round-trip decimal form.
std::string fmt(double x);

/// Writes to a sibling temporary file, then renames over `path`. Creates parent directories.
void write_atomic(const std::filesystem::path& path, const std::string& content);

json load_json(const std::filesystem::path& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

// --- CSV ------------------------------------------------------------------------------

/// Header u1_re,u1_im,...,ud_re,ud_im,s then one row per point.
std::string heis_csv(const std::vector<HeisPoint>& pts);
/// Same with a trailing weight column w.
std::string measure_csv(const PointMeasure& mu);
/// Header z1_re,z1_im,...
std::string plane_csv(const std::vector<CVec>& pts);
/// Header v0_re,v0_im,...,v{d+1}_re,v{d+1}_im with representatives scaled to unit norm.
std::string boundary_csv(const std::vector<BoundaryPoint>& pts);
/// Header scale,count.
std::string scale_csv(const DimEstimate& e);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Numeric CSV with a header line. Throws std::runtime_error on malformed input.
Table read_csv(const std::filesystem::path& path);
/// Points from a table with columns u1_re,u1_im,...,s (and optionally w).
std::vector<HeisPoint> heis_points(const Table& t);
/// Weights from the w column, or uniform when there is none.
PointMeasure heis_measure(const Table& t, Ambient ambient);
std::vector<std::vector<double>> real_rows(const Table& t);

// --- JSON schema helpers ----------------------------------------------------------------

/// Throws std::invalid_argument naming the first key of `j` not in `allowed`.
void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where);
/// Value of a required key.
const json& need(const json& j, const char* key, const std::string& where);

cplx complex_from(const json& j);
json to_json(cplx z);
CVec cvec_from(const json& j);
json to_json(const CVec& v);
CMat cmat_from(const json& j);
json to_json(const CMat& m);
BMat bmat_from(const json& j);
json to_json(const BMat& m);

/// {"u": [[re, im], ...], "s": s}
HeisPoint heis_point_from(const json& j);
json to_json(const HeisPoint& p);
/// {"U": matrix, "r": ratio, "translation": point}
HeisSimilarity similarity_from(const json& j);
/// {"maps": [...], "probabilities": [...]}
HeisIFS ifs_from(const json& j);
/// {"disk": {"centre": [...], "radius": r}} or {"square": {"centre": [re, im], "half_side": h}}
OpenSetCandidate candidate_from(const json& j);

json to_json(const DimEstimate& e);
json to_json(const OscReport& r);
json to_json(const TilingAudit& a);

/// "infinity", or "u1_re,u1_im,...,s" as comma-separated numbers.
std::optional<HeisPoint> parse_basepoint(const std::string& text, int d);

}  // namespace heis::io
