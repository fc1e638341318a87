#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "subtraj/io.hpp"
#include "support/test_oracles.hpp"

using namespace subtraj;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/subtraj_test_" + name) {
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv ingestion with every-vertex breakpoints") {
  TempFile f("a.csv", "0,0\n1,0\n2,0\n");
  IngestOptions opt;
  const auto [curve, bps] = ingest(f.path, opt);
  REQUIRE(curve.size() == 3);
  REQUIRE(bps.count() == 3);
  CHECK(bps.value(2) == doctest::Approx(0.5));
}

TEST_CASE("csv star flags mark breakpoints") {
  TempFile f("b.csv", "0,0\n1,0,*\n2,0\n3,0\n");
  IngestOptions opt;
  opt.mode = BreakpointMode::Flags;
  const auto [curve, bps] = ingest(f.path, opt);
  REQUIRE(bps.count() == 3);  // endpoints are implicit
  CHECK(bps.value(2) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("json explicit breakpoints pass through") {
  TempFile f("c.json",
             R"({"points": [[0,0],[1,0],[2,0]], "breakpoints": [0, 0.3, 1]})");
  IngestOptions opt;
  opt.format = FileFormat::Json;
  opt.mode = BreakpointMode::ExplicitParams;
  const auto [curve, bps] = ingest(f.path, opt);
  REQUIRE(bps.count() == 3);
  CHECK(bps.value(2) == 0.3);
}

TEST_CASE("malformed csv names the line") {
  TempFile f("d.csv", "0,0\n1,zz\n");
  try {
    ingest(f.path, {});
    FAIL("expected io error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("breakpoints outside the unit interval are rejected") {
  TempFile f("e.json", R"({"points": [[0,0],[1,0]], "breakpoints": [0,2,1]})");
  IngestOptions opt;
  opt.format = FileFormat::Json;
  opt.mode = BreakpointMode::ExplicitParams;
  CHECK_THROWS_AS(ingest(f.path, opt), IoError);
}

TEST_CASE("every-k breakpoints") {
  TempFile f("f.csv", "0,0\n1,0\n2,0\n3,0\n4,0\n");
  IngestOptions opt;
  opt.mode = BreakpointMode::EveryK;
  opt.every_k = 2;
  const auto [curve, bps] = ingest(f.path, opt);
  CHECK(bps.count() == 3);  // vertices 0,2,4
}

TEST_CASE("result document round trip") {
  std::mt19937_64 rng(113);
  const testing::PlantedInstance inst =
      testing::planted_oscillation_instance(rng, 6, 0.5);
  ClusteringConfig cfg;
  cfg.delta = inst.delta;
  cfg.ell = 2;
  cfg.algorithm = Algorithm::BgSegment;
  cfg.seed = 21;
  const ClusteringResult result = cluster(inst.curve, inst.bps, cfg);
  const ResultDocument doc =
      make_result_document(inst.curve, inst.bps, cfg, result);
  const std::string text = serialize_result(doc);
  const ResultDocument back = parse_result(text);
  CHECK(serialize_result(back) == text);
  CHECK(back.centers.size() == doc.centers.size());
  CHECK(back.labeled_radius == doc.labeled_radius);
  CHECK(back.verified_radius == doc.verified_radius);
  CHECK(back.breakpoints == doc.breakpoints);
}

TEST_CASE("determinism: same input and seed give identical bytes") {
  std::mt19937_64 rng(127);
  const testing::PlantedInstance inst =
      testing::planted_loop_instance(rng, 6, 0.5);
  ClusteringConfig cfg;
  cfg.delta = inst.delta;
  cfg.ell = inst.ell;
  cfg.algorithm = Algorithm::BgGeneral;
  cfg.seed = 4242;
  const ClusteringResult r1 = cluster(inst.curve, inst.bps, cfg);
  const ClusteringResult r2 = cluster(inst.curve, inst.bps, cfg);
  const std::string t1 =
      serialize_result(make_result_document(inst.curve, inst.bps, cfg, r1));
  const std::string t2 =
      serialize_result(make_result_document(inst.curve, inst.bps, cfg, r2));
  CHECK(t1 == t2);
  const std::string svg1 = render_svg(inst.curve, inst.bps,
                                      make_result_document(inst.curve, inst.bps, cfg, r1));
  const std::string svg2 = render_svg(inst.curve, inst.bps,
                                      make_result_document(inst.curve, inst.bps, cfg, r2));
  CHECK(svg1 == svg2);
}

TEST_CASE("svg rendering") {
  std::mt19937_64 rng(131);
  const testing::PlantedInstance inst =
      testing::planted_oscillation_instance(rng, 4, 0.5);
  ClusteringConfig cfg;
  cfg.delta = inst.delta;
  cfg.ell = 2;
  cfg.algorithm = Algorithm::GreedyR0;
  const ClusteringResult result = cluster(inst.curve, inst.bps, cfg);
  const ResultDocument doc =
      make_result_document(inst.curve, inst.bps, cfg, result);
  const std::string svg = render_svg(inst.curve, inst.bps, doc);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("class=\"trajectory\"") != std::string::npos);
  CHECK(svg.find("class=\"center\"") != std::string::npos);

  // interval tints union to [0,1]
  double coverage_hi = 0.0;
  std::size_t pos = 0;
  while ((pos = svg.find("data-from=\"", pos)) != std::string::npos) {
    pos += 11;
    const double from = std::stod(svg.substr(pos));
    const std::size_t tp = svg.find("data-to=\"", pos) + 9;
    const double to = std::stod(svg.substr(tp));
    if (from <= coverage_hi + 1e-9) coverage_hi = std::max(coverage_hi, to);
  }
  CHECK(coverage_hi == doctest::Approx(1.0));

  // 3-d input is refused
  const PolygonalCurve c3 = build_curve({{0, 0, 0}, {1, 1, 1}});
  const BreakpointSet b3({0.0, 1.0});
  ResultDocument d3;
  CHECK_THROWS_AS(render_svg(c3, b3, d3), std::invalid_argument);
}

TEST_CASE("straight line svg has one center polyline") {
  const PolygonalCurve line = build_curve({{0, 0}, {1, 0}, {2, 0}});
  const BreakpointSet bps = testing::every_vertex_breakpoints(line);
  ClusteringConfig cfg;
  cfg.delta = 0.1;
  cfg.ell = 2;
  cfg.algorithm = Algorithm::GreedyR0;
  const ClusteringResult result = cluster(line, bps, cfg);
  const ResultDocument doc = make_result_document(line, bps, cfg, result);
  const std::string svg = render_svg(line, bps, doc);
  std::size_t centers = 0, pos = 0;
  while ((pos = svg.find("class=\"center\"", pos)) != std::string::npos) {
    ++centers;
    pos += 10;
  }
  CHECK(centers == 1);
}

TEST_CASE("cli cluster, verify, phi, frechet") {
  std::mt19937_64 rng(137);
  const testing::PlantedInstance inst =
      testing::planted_oscillation_instance(rng, 6, 0.5);
  // write the instance as a csv with star flags at its breakpoints
  std::ostringstream csv;
  std::size_t next_bp = 1;
  for (std::size_t v = 0; v < inst.curve.size(); ++v) {
    csv << inst.curve.vertex(v)[0] << ',' << inst.curve.vertex(v)[1];
    if (next_bp <= inst.bps.count() &&
        std::abs(inst.curve.param(v) - inst.bps.value(next_bp)) < 1e-12) {
      csv << ",*";
      ++next_bp;
    }
    csv << '\n';
  }
  TempFile traj("traj.csv", csv.str());
  const std::string out = "/tmp/subtraj_test_result.json";
  const std::string svg = "/tmp/subtraj_test_result.svg";

  CHECK(run_cli({"cluster", "--input", traj.path, "--breakpoints", "flags",
                 "--delta", "0.5", "--ell", "2", "--algorithm", "bg-segment",
                 "--seed", "9", "--out", out, "--svg", svg}) == 0);
  CHECK(run_cli({"verify", "--input", traj.path, "--result", out}) == 0);

  // tamper: drop one center
  ResultDocument doc = read_result_file(out);
  if (doc.centers.size() > 1) {
    doc.centers.pop_back();
  } else {
    doc.centers[0] = build_curve({{100.0, 100.0}, {101.0, 100.0}});
  }
  const std::string tampered = "/tmp/subtraj_test_tampered.json";
  write_result_file(doc, tampered);
  CHECK(run_cli({"verify", "--input", traj.path, "--result", tampered}) == 1);

  CHECK(run_cli({"phi", "--input", traj.path, "--result", out}) == 0);

  TempFile a("fa.csv", "0,0\n2,0\n");
  TempFile b("fb.csv", "0,1\n2,1\n");
  CHECK(run_cli({"frechet", "--a", a.path, "--b", b.path}) == 0);

  CHECK(run_cli({"cluster", "--input", traj.path, "--no-such-flag"}) == 2);
  CHECK(run_cli({"cluster", "--input", "/no/such/file.csv", "--delta", "1"}) == 3);

  std::remove(out.c_str());
  std::remove(svg.c_str());
  std::remove(tampered.c_str());
}
