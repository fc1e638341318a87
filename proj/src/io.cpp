#include "subtraj/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace subtraj {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ParsedRows {
  std::vector<Point> points;
  std::vector<char> flags;
  std::vector<double> params;       // optional (JSON only)
  std::vector<double> breakpoints;  // optional (JSON only)
};

ParsedRows parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  ParsedRows rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip whitespace-only lines
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    bool flagged = false;
    if (!cells.empty()) {
      std::string last = cells.back();
      last.erase(std::remove_if(last.begin(), last.end(),
                                [](unsigned char c) { return std::isspace(c); }),
                 last.end());
      if (last == "*") {
        flagged = true;
        cells.pop_back();
      }
    }
    if (cells.empty())
      throw IoError("line " + std::to_string(lineno) + ": no coordinates");
    Point p;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        const double v = std::stod(c, &used);
        while (used < c.size() && std::isspace(static_cast<unsigned char>(c[used])))
          ++used;
        if (used != c.size()) throw std::invalid_argument(c);
        p.push_back(v);
      } catch (const std::exception&) {
        throw IoError("line " + std::to_string(lineno) +
                      ": malformed number '" + c + "'");
      }
    }
    if (dim == 0) dim = p.size();
    if (p.size() != dim)
      throw IoError("line " + std::to_string(lineno) +
                    ": inconsistent dimension");
    rows.points.push_back(std::move(p));
    rows.flags.push_back(flagged ? 1 : 0);
  }
  if (rows.points.empty()) throw IoError(path + ": no points");
  return rows;
}

ParsedRows parse_json_input(const std::string& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  ParsedRows rows;
  if (!j.contains("points") || !j["points"].is_array())
    throw IoError(path + ": missing points array");
  for (const auto& pt : j["points"]) {
    Point p;
    for (const auto& c : pt) p.push_back(c.get<double>());
    rows.points.push_back(std::move(p));
    rows.flags.push_back(0);
  }
  if (rows.points.empty()) throw IoError(path + ": no points");
  if (j.contains("params"))
    rows.params = j["params"].get<std::vector<double>>();
  if (j.contains("breakpoints"))
    rows.breakpoints = j["breakpoints"].get<std::vector<double>>();
  return rows;
}

}  // namespace

std::pair<PolygonalCurve, BreakpointSet> ingest(const std::string& path,
                                                const IngestOptions& options) {
  ParsedRows rows = options.format == FileFormat::Csv ? parse_csv(path)
                                                      : parse_json_input(path);
  PolygonalCurve curve;
  try {
    curve = build_curve(rows.points, rows.params);
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }

  std::vector<double> values{0.0, 1.0};
  switch (options.mode) {
    case BreakpointMode::EveryVertex:
      values.assign(curve.params().begin(), curve.params().end());
      break;
    case BreakpointMode::EveryK: {
      const std::size_t k = std::max<std::size_t>(options.every_k, 1);
      for (std::size_t i = 0; i < curve.size(); i += k)
        values.push_back(curve.param(i));
      break;
    }
    case BreakpointMode::Flags: {
      if (!rows.breakpoints.empty()) {
        values.insert(values.end(), rows.breakpoints.begin(),
                      rows.breakpoints.end());
      } else {
        // flags refer to input rows; map through duplicate removal by
        // re-walking the kept vertices
        std::size_t kept = 0;
        for (std::size_t i = 0; i < rows.points.size(); ++i) {
          if (kept + 1 < curve.size() &&
              dist2(rows.points[i], curve.vertex(kept + 1)) <
                  dist2(rows.points[i], curve.vertex(kept)))
            ++kept;
          if (rows.flags[i]) values.push_back(curve.param(kept));
        }
      }
      break;
    }
    case BreakpointMode::ExplicitParams: {
      const auto& src = options.explicit_params.empty() ? rows.breakpoints
                                                        : options.explicit_params;
      values.insert(values.end(), src.begin(), src.end());
      break;
    }
  }
  for (const double t : values)
    if (t < -geom_epsilon() || t > 1.0 + geom_epsilon())
      throw IoError(path + ": breakpoint outside [0,1]");
  std::sort(values.begin(), values.end());
  std::vector<double> dedup;
  for (const double t : values) {
    const double c = std::clamp(t, 0.0, 1.0);
    if (dedup.empty() || c - dedup.back() > geom_epsilon()) dedup.push_back(c);
  }
  if (dedup.size() < 2) throw IoError(path + ": fewer than 2 breakpoints");
  dedup.front() = 0.0;
  dedup.back() = 1.0;
  return {std::move(curve), BreakpointSet(std::move(dedup))};
}

ResultDocument make_result_document(const PolygonalCurve& p,
                                    const BreakpointSet& bps,
                                    const ClusteringConfig& cfg,
                                    const ClusteringResult& result) {
  ResultDocument doc;
  doc.config = cfg;
  doc.dim = p.dim();
  doc.n = p.size();
  doc.breakpoints = bps.values();
  doc.centers = result.centers;
  doc.intervals = result.intervals;
  doc.selected_pairs = result.selected_pairs;
  doc.labeled_radius = result.labeled_radius;
  doc.radius_label = result.radius_label;
  doc.verified_radius = result.verified_radius;
  doc.passes_labeled = result.passes_labeled;
  doc.stats = result.stats;
  doc.algorithm = result.algorithm;
  return doc;
}

namespace {

ordered_json curve_to_json(const PolygonalCurve& c) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    ordered_json pt = ordered_json::array();
    for (const double x : c.vertex(i)) pt.push_back(x);
    arr.push_back(pt);
  }
  return arr;
}

PolygonalCurve curve_from_json(const ordered_json& arr) {
  std::vector<Point> pts;
  for (const auto& pt : arr) pts.push_back(pt.get<Point>());
  return build_curve(pts);
}

}  // namespace

std::string serialize_result(const ResultDocument& doc) {
  ordered_json j;
  j["schema"] = 1;
  j["config"] = {{"delta", doc.config.delta},
                 {"ell", doc.config.ell},
                 {"algorithm", algorithm_name(doc.config.algorithm)},
                 {"seed", doc.config.seed},
                 {"tolerance", doc.config.tol}};
  j["input"] = {{"dim", doc.dim}, {"n", doc.n}};
  j["breakpoints"] = doc.breakpoints;
  ordered_json centers = ordered_json::array();
  for (const auto& c : doc.centers) centers.push_back(curve_to_json(c));
  j["centers"] = centers;
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : doc.intervals)
    intervals.push_back({{"i", iv.i},
                         {"j", iv.j},
                         {"t_i", iv.t_i},
                         {"t_j", iv.t_j},
                         {"center", iv.center}});
  j["intervals"] = intervals;
  ordered_json pairs = ordered_json::array();
  for (const auto& pr : doc.selected_pairs)
    pairs.push_back({{"i", pr.i}, {"j", pr.j}});
  j["selected_pairs"] = pairs;
  j["labeled_radius"] = doc.labeled_radius;
  j["radius_label"] = doc.radius_label;
  j["verified_radius"] = doc.verified_radius;
  j["passes_labeled"] = doc.passes_labeled;
  j["diagnostics"] = {{"cover_size", doc.centers.size()},
                      {"iterations", doc.stats.iterations},
                      {"reweight_rounds", doc.stats.reweight_rounds},
                      {"resample_rounds", doc.stats.resample_rounds},
                      {"k_guess", doc.stats.k_guess},
                      {"sample_size", doc.stats.sample_size}};
  j["seed"] = doc.config.seed;
  return j.dump(2) + "\n";
}

ResultDocument parse_result(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad result document: ") + e.what());
  }
  if (!j.contains("schema") || j["schema"].get<int>() != 1)
    throw IoError("unsupported result schema");
  ResultDocument doc;
  const auto& cfg = j["config"];
  doc.config.delta = cfg["delta"].get<double>();
  doc.config.ell = cfg["ell"].get<std::size_t>();
  doc.config.algorithm = algorithm_from_name(cfg["algorithm"].get<std::string>());
  doc.config.seed = cfg["seed"].get<std::uint64_t>();
  doc.config.tol = cfg["tolerance"].get<double>();
  doc.dim = j["input"]["dim"].get<std::size_t>();
  doc.n = j["input"]["n"].get<std::size_t>();
  doc.breakpoints = j["breakpoints"].get<std::vector<double>>();
  for (const auto& c : j["centers"]) doc.centers.push_back(curve_from_json(c));
  for (const auto& iv : j["intervals"]) {
    CoverInterval cv;
    cv.i = iv["i"].get<std::size_t>();
    cv.j = iv["j"].get<std::size_t>();
    cv.t_i = iv["t_i"].get<double>();
    cv.t_j = iv["t_j"].get<double>();
    cv.center = iv["center"].get<std::size_t>();
    doc.intervals.push_back(cv);
  }
  for (const auto& pr : j["selected_pairs"])
    doc.selected_pairs.push_back(
        {pr["i"].get<std::size_t>(), pr["j"].get<std::size_t>()});
  doc.labeled_radius = j["labeled_radius"].get<double>();
  doc.radius_label = j["radius_label"].get<std::string>();
  doc.verified_radius = j["verified_radius"].get<double>();
  doc.passes_labeled = j["passes_labeled"].get<bool>();
  const auto& diag = j["diagnostics"];
  doc.stats.iterations = diag["iterations"].get<std::size_t>();
  doc.stats.reweight_rounds = diag["reweight_rounds"].get<std::size_t>();
  doc.stats.resample_rounds = diag["resample_rounds"].get<std::size_t>();
  doc.stats.k_guess = diag["k_guess"].get<std::size_t>();
  doc.stats.sample_size = diag["sample_size"].get<std::size_t>();
  doc.algorithm = algorithm_name(doc.config.algorithm);
  return doc;
}

void write_result_file(const ResultDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << serialize_result(doc);
}

ResultDocument read_result_file(const std::string& path) {
  return parse_result(read_file(path));
}

}  // namespace subtraj
