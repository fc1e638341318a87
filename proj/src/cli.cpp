#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subtraj/frechet.hpp"
#include "subtraj/io.hpp"

namespace subtraj {

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

IngestOptions make_ingest_options(const std::string& format,
                                  const std::string& breakpoints) {
  IngestOptions opt;
  if (format == "csv")
    opt.format = FileFormat::Csv;
  else if (format == "json")
    opt.format = FileFormat::Json;
  else
    throw CLI::ValidationError("--format", "expected csv or json");
  if (breakpoints == "every-vertex") {
    opt.mode = BreakpointMode::EveryVertex;
  } else if (breakpoints == "flags") {
    opt.mode = BreakpointMode::Flags;
  } else if (breakpoints.rfind("every-", 0) == 0) {
    opt.mode = BreakpointMode::EveryK;
    try {
      opt.every_k = std::stoul(breakpoints.substr(6));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--breakpoints", "expected every-<k>");
    }
    if (opt.every_k < 1)
      throw CLI::ValidationError("--breakpoints", "k must be positive");
  } else if (breakpoints.rfind("explicit:", 0) == 0) {
    opt.mode = BreakpointMode::ExplicitParams;
    std::stringstream ss(breakpoints.substr(9));
    std::string cell;
    while (std::getline(ss, cell, ','))
      opt.explicit_params.push_back(std::stod(cell));
  } else if (breakpoints == "explicit") {
    opt.mode = BreakpointMode::ExplicitParams;  // values from the file
  } else {
    throw CLI::ValidationError(
        "--breakpoints",
        "expected flags, every-vertex, every-<k>, or explicit[:t1,t2,...]");
  }
  return opt;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"subtrajectory clustering under the Frechet distance"};
  app.require_subcommand(1);

  // cluster
  auto* cmd_cluster = app.add_subcommand("cluster", "compute a clustering");
  std::string in_path, format = "csv", breakpoints = "every-vertex";
  std::string algorithm = "bg-general", out_path, svg_path;
  double delta = 1.0, tol = 0.0;
  std::size_t ell = 2;
  std::uint64_t seed = 0;
  cmd_cluster->add_option("--input", in_path, "trajectory file")->required();
  cmd_cluster->add_option("--format", format, "csv or json");
  cmd_cluster->add_option("--breakpoints", breakpoints,
                          "flags | every-vertex | every-<k> | explicit[:...]");
  cmd_cluster->add_option("--delta", delta, "clustering radius parameter")
      ->required();
  cmd_cluster->add_option("--ell", ell, "max center complexity");
  cmd_cluster->add_option("--algorithm", algorithm,
                          "greedy-r0 | greedy-r1 | bg-segment | bg-general");
  cmd_cluster->add_option("--seed", seed, "random seed");
  cmd_cluster->add_option("--tol", tol, "numeric tolerance (0 = auto)");
  cmd_cluster->add_option("--out", out_path, "result JSON path");
  cmd_cluster->add_option("--svg", svg_path, "SVG rendering path (2-d only)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "check a result document");
  std::string v_input, v_format = "csv", v_result;
  double v_radius = -1.0;
  cmd_verify->add_option("--input", v_input, "trajectory file")->required();
  cmd_verify->add_option("--format", v_format, "csv or json");
  cmd_verify->add_option("--result", v_result, "result JSON")->required();
  cmd_verify->add_option("--radius", v_radius,
                         "radius to verify at (default: verified radius)");

  // phi
  auto* cmd_phi = app.add_subcommand("phi", "clustering cost by bisection");
  std::string p_input, p_format = "csv", p_result;
  double p_tol = 0.0;
  cmd_phi->add_option("--input", p_input, "trajectory file")->required();
  cmd_phi->add_option("--format", p_format, "csv or json");
  cmd_phi->add_option("--result", p_result, "result JSON with the centers")
      ->required();
  cmd_phi->add_option("--tol", p_tol, "bisection tolerance (0 = auto)");

  // frechet
  auto* cmd_frechet = app.add_subcommand("frechet", "distance of two curves");
  std::string f_a, f_b, f_format = "csv";
  double f_tol = 0.0;
  cmd_frechet->add_option("--a", f_a, "first curve")->required();
  cmd_frechet->add_option("--b", f_b, "second curve")->required();
  cmd_frechet->add_option("--format", f_format, "csv or json");
  cmd_frechet->add_option("--tol", f_tol, "bisection tolerance (0 = auto)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cmd_cluster->parsed()) {
      const IngestOptions opt = make_ingest_options(format, breakpoints);
      const auto [curve, bps] = ingest(in_path, opt);
      ClusteringConfig cfg;
      cfg.delta = delta;
      cfg.ell = ell;
      cfg.algorithm = algorithm_from_name(algorithm);
      cfg.seed = seed;
      cfg.tol = tol;
      const ClusteringResult result = cluster(curve, bps, cfg);
      const ResultDocument doc = make_result_document(curve, bps, cfg, result);
      if (!out_path.empty()) write_result_file(doc, out_path);
      if (!svg_path.empty()) emit_svg(curve, bps, doc, svg_path);
      std::cout << "centers: " << result.centers.size()
                << "  labeled radius: " << result.labeled_radius
                << "  verified radius: " << result.verified_radius << "\n";
      if (out_path.empty() && svg_path.empty())
        std::cout << serialize_result(doc);
      return kOk;
    }
    if (cmd_verify->parsed()) {
      const ResultDocument doc = read_result_file(v_result);
      IngestOptions opt = make_ingest_options(v_format, "explicit");
      opt.explicit_params = doc.breakpoints;
      const auto [curve, bps] = ingest(v_input, opt);
      double radius = v_radius;
      if (radius < 0)
        radius = doc.verified_radius +
                 std::max(1e-9, 2.0 * default_frechet_tol(curve, curve));
      const VerifyOutcome outcome =
          verify_cover(curve, bps, doc.centers, radius);
      if (outcome.covered) {
        std::cout << "PASS: covered at radius " << radius << " with "
                  << outcome.intervals.size() << " intervals\n";
        return kOk;
      }
      std::cout << "FAIL: piece " << outcome.failed_piece
                << " is not covered at radius " << radius << "\n";
      return kInfeasible;
    }
    if (cmd_phi->parsed()) {
      const ResultDocument doc = read_result_file(p_result);
      IngestOptions opt = make_ingest_options(p_format, "explicit");
      opt.explicit_params = doc.breakpoints;
      const auto [curve, bps] = ingest(p_input, opt);
      const double tol_eff =
          p_tol > 0 ? p_tol : default_frechet_tol(curve, curve);
      std::cout << phi(curve, bps, doc.centers, tol_eff) << "\n";
      return kOk;
    }
    if (cmd_frechet->parsed()) {
      IngestOptions opt = make_ingest_options(f_format, "every-vertex");
      const auto [a, abps] = ingest(f_a, opt);
      const auto [b, bbps] = ingest(f_b, opt);
      const double tol_eff = f_tol > 0 ? f_tol : default_frechet_tol(a, b);
      std::cout << compute_frechet(a, b, tol_eff) << "\n";
      return kOk;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace subtraj
