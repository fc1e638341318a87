#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subtraj/cluster.hpp"
#include "subtraj/curve.hpp"
#include "subtraj/frechet.hpp"
#include "subtraj/io.hpp"
#include "subtraj/simplify.hpp"

namespace py = pybind11;
using namespace subtraj;

namespace {

std::vector<Point> curve_points(const PolygonalCurve& c) {
  std::vector<Point> pts;
  pts.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    pts.emplace_back(c.vertex(i).begin(), c.vertex(i).end());
  return pts;
}

ClusteringConfig make_config(double delta, std::size_t ell,
                             const std::string& algorithm, std::uint64_t seed,
                             double tol) {
  ClusteringConfig cfg;
  cfg.delta = delta;
  cfg.ell = ell;
  cfg.algorithm = algorithm_from_name(algorithm);
  cfg.seed = seed;
  cfg.tol = tol;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_subtraj, m) {
  m.doc() = "subtrajectory clustering under the continuous Frechet distance";

  py::register_exception<InfeasibleError>(m, "InfeasibleError");

  py::class_<PolygonalCurve>(m, "Curve")
      .def(py::init([](const std::vector<Point>& pts,
                       const std::vector<double>& params) {
             return build_curve(pts, params);
           }),
           py::arg("points"), py::arg("params") = std::vector<double>{})
      .def_property_readonly("dim", &PolygonalCurve::dim)
      .def("__len__", &PolygonalCurve::size)
      .def_property_readonly("points", &curve_points)
      .def_property_readonly("params",
                             [](const PolygonalCurve& c) { return c.params(); })
      .def("point_at", [](const PolygonalCurve& c, double t) {
        return c.point_at(t);
      })
      .def("subcurve", &PolygonalCurve::subcurve, py::arg("a"), py::arg("b"))
      .def("reversed", &PolygonalCurve::reversed)
      .def("__repr__", [](const PolygonalCurve& c) {
        return "Curve(n=" + std::to_string(c.size()) +
               ", dim=" + std::to_string(c.dim()) + ")";
      });

  py::class_<BreakpointSet>(m, "Breakpoints")
      .def(py::init<std::vector<double>>(), py::arg("values"))
      .def_property_readonly("values",
                             [](const BreakpointSet& b) { return b.values(); })
      .def("__len__", &BreakpointSet::count);

  m.def("decide_frechet", &decide_frechet, py::arg("p"), py::arg("q"),
        py::arg("delta"));
  m.def("frechet_distance",
        [](const PolygonalCurve& p, const PolygonalCurve& q, double tol) {
          return compute_frechet(p, q, tol > 0 ? tol : default_frechet_tol(p, q));
        },
        py::arg("p"), py::arg("q"), py::arg("tol") = 0.0);
  m.def("simplify",
        [](const PolygonalCurve& p, std::size_t ell, double tol) {
          return ell_simplification(p, ell, tol > 0 ? tol : 1e-9);
        },
        py::arg("p"), py::arg("ell"), py::arg("tol") = 0.0,
        "curve with at most ell vertices close to p in Frechet distance");
  m.def("greedy_simplify",
        [](const PolygonalCurve& p, double eps, std::size_t max_vertices) {
          return agarwal_simplify(p, eps,
                                  max_vertices == 0 ? kUncapped : max_vertices)
              .curve;
        },
        py::arg("p"), py::arg("eps"), py::arg("max_vertices") = 0);

  py::class_<CoverInterval>(m, "CoverInterval")
      .def_readonly("i", &CoverInterval::i)
      .def_readonly("j", &CoverInterval::j)
      .def_readonly("center", &CoverInterval::center)
      .def_readonly("t_i", &CoverInterval::t_i)
      .def_readonly("t_j", &CoverInterval::t_j);

  py::class_<ClusteringResult>(m, "ClusteringResult")
      .def_readonly("centers", &ClusteringResult::centers)
      .def_readonly("intervals", &ClusteringResult::intervals)
      .def_readonly("labeled_radius", &ClusteringResult::labeled_radius)
      .def_readonly("radius_label", &ClusteringResult::radius_label)
      .def_readonly("verified_radius", &ClusteringResult::verified_radius)
      .def_readonly("passes_labeled", &ClusteringResult::passes_labeled)
      .def_readonly("algorithm", &ClusteringResult::algorithm)
      .def_property_readonly("size", [](const ClusteringResult& r) {
        return r.centers.size();
      });

  m.def("cluster",
        [](const PolygonalCurve& p, const BreakpointSet& bps, double delta,
           std::size_t ell, const std::string& algorithm, std::uint64_t seed,
           double tol) {
          return cluster(p, bps, make_config(delta, ell, algorithm, seed, tol));
        },
        py::arg("curve"), py::arg("breakpoints"), py::arg("delta"),
        py::arg("ell") = 2, py::arg("algorithm") = "bg-general",
        py::arg("seed") = 0, py::arg("tol") = 0.0);

  m.def("verify_cover",
        [](const PolygonalCurve& p, const BreakpointSet& bps,
           const std::vector<PolygonalCurve>& centers, double radius) {
          const VerifyOutcome out = verify_cover(p, bps, centers, radius);
          return py::make_tuple(out.covered, out.intervals);
        },
        py::arg("curve"), py::arg("breakpoints"), py::arg("centers"),
        py::arg("radius"));

  m.def("phi",
        [](const PolygonalCurve& p, const BreakpointSet& bps,
           const std::vector<PolygonalCurve>& centers, double tol) {
          return phi(p, bps, centers,
                     tol > 0 ? tol : default_frechet_tol(p, p));
        },
        py::arg("curve"), py::arg("breakpoints"), py::arg("centers"),
        py::arg("tol") = 0.0);

  m.def("run_cli", &run_cli, py::arg("args"));
}
