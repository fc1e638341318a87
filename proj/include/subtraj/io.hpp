#ifndef SUBTRAJ_IO_HPP
#define SUBTRAJ_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subtraj/cluster.hpp"
#include "subtraj/curve.hpp"

namespace subtraj {

/// Raised for unreadable or malformed input files; the CLI maps it to the
/// I/O exit code.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FileFormat { Csv, Json };
enum class BreakpointMode { Flags, EveryVertex, EveryK, ExplicitParams };

struct IngestOptions {
  FileFormat format = FileFormat::Csv;
  BreakpointMode mode = BreakpointMode::EveryVertex;
  std::size_t every_k = 1;
  std::vector<double> explicit_params;  // used by ExplicitParams when set
};

/// Reads a trajectory file and derives breakpoints.
/// CSV: one point per line, comma-separated reals, optional trailing `*`
/// marking a breakpoint. JSON: {"points": [[...],...]} with optional
/// "params" (curve parameterization) and "breakpoints" (parameter list).
/// The endpoints 0 and 1 are always breakpoints.
std::pair<PolygonalCurve, BreakpointSet> ingest(const std::string& path,
                                                const IngestOptions& options);

/// The result of a clustering run together with everything needed to verify
/// it independently: config echo, breakpoints, centers, certified cover
/// intervals, radii, and solver diagnostics.
struct ResultDocument {
  ClusteringConfig config;
  std::size_t dim = 0;
  std::size_t n = 0;
  std::vector<double> breakpoints;
  std::vector<PolygonalCurve> centers;
  std::vector<CoverInterval> intervals;
  std::vector<CandidatePair> selected_pairs;
  double labeled_radius = 0.0;
  std::string radius_label;
  double verified_radius = 0.0;
  bool passes_labeled = false;
  SolverStats stats;
  std::string algorithm;
};

ResultDocument make_result_document(const PolygonalCurve& p,
                                    const BreakpointSet& bps,
                                    const ClusteringConfig& cfg,
                                    const ClusteringResult& result);

/// Canonical JSON serialization ("schema": 1). Identical documents
/// serialize to identical bytes.
std::string serialize_result(const ResultDocument& doc);
ResultDocument parse_result(const std::string& text);

void write_result_file(const ResultDocument& doc, const std::string& path);
ResultDocument read_result_file(const std::string& path);

/// SVG rendering of a clustered 2-d trajectory: the input polyline,
/// breakpoint markers, color-coded centers, and cover intervals tinted by
/// their assigned center. Deterministic byte output for fixed inputs.
std::string render_svg(const PolygonalCurve& p, const BreakpointSet& bps,
                       const ResultDocument& doc);
void emit_svg(const PolygonalCurve& p, const BreakpointSet& bps,
              const ResultDocument& doc, const std::string& path);

/// CLI entry point; returns the process exit code (0 success, 1 infeasible
/// or failed verification, 2 usage error, 3 I/O error).
int run_cli(const std::vector<std::string>& args);

}  // namespace subtraj

#endif  // SUBTRAJ_IO_HPP
