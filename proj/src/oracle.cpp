#include "subtraj/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "subtraj/frechet.hpp"

namespace subtraj {

namespace {

constexpr double kTouch = 1.0 - 1e-12;

std::vector<Point> breakpoint_points(const PolygonalCurve& p,
                                     const BreakpointSet& bps) {
  std::vector<Point> pts;
  pts.reserve(bps.count());
  for (std::size_t w = 1; w <= bps.count(); ++w)
    pts.push_back(p.point_at(bps.value(w)));
  return pts;
}

PolygonalCurve segment_between(const Point& a, const Point& b) {
  std::vector<double> coords(a.begin(), a.end());
  coords.insert(coords.end(), b.begin(), b.end());
  return PolygonalCurve(std::move(coords), a.size());
}

}  // namespace

NearBreakpointMatrix::NearBreakpointMatrix(const std::vector<Point>& bp_points,
                                           double radius)
    : m_(bp_points.size()), radius_(radius), table_(m_ * m_, m_ + 1) {
  const double reff = radius + geom_epsilon();
  parallel_for(m_, [&](std::size_t idx) {
    const std::size_t i = idx + 1;
    std::size_t next = m_ + 1;
    for (std::size_t j = m_; j >= 1; --j) {
      if (dist2(bp_points[i - 1], bp_points[j - 1]) <= reff * reff) next = j;
      table_[(i - 1) * m_ + (j - 1)] = next;
      if (j == 1) break;
    }
  });
}

SegmentOracle build_segment_oracle(const PolygonalCurve& p,
                                   const BreakpointSet& bps, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  SegmentOracle o;
  o.delta = delta;
  o.bps = bps;
  o.bp_points = breakpoint_points(p, bps);
  const std::size_t m = bps.count();
  o.x_limit.assign(m - 1, 1);
  o.y_limit.assign(m - 1, m);
  const double four_delta = 4.0 * delta;
  parallel_for(m - 1, [&](std::size_t idx) {
    const std::size_t z = idx + 1;
    // backward scan from z
    std::size_t xz = z;
    for (std::size_t x = z; x-- > 1;) {
      const PolygonalCurve sub = p.subcurve(bps.value(x), bps.value(z));
      const PolygonalCurve tau =
          segment_between(o.bp_points[x - 1], o.bp_points[z - 1]);
      if (!decide_frechet(sub, tau, four_delta)) break;
      xz = x;
    }
    o.x_limit[idx] = xz;
    // forward scan from z+1
    std::size_t yz = z + 1;
    for (std::size_t y = z + 2; y <= m; ++y) {
      const PolygonalCurve sub = p.subcurve(bps.value(z + 1), bps.value(y));
      const PolygonalCurve tau =
          segment_between(o.bp_points[z], o.bp_points[y - 1]);
      if (!decide_frechet(sub, tau, four_delta)) break;
      yz = y;
    }
    o.y_limit[idx] = yz;
  });
  o.near2 = NearBreakpointMatrix(o.bp_points, 2.0 * delta);
  return o;
}

bool segment_query(const SegmentOracle& o, std::size_t z, std::size_t i,
                   std::size_t j) {
  const std::size_t m = o.m();
  if (z < 1 || z >= m || i < 1 || j <= i || j > m)
    throw std::out_of_range("segment_query index out of range");
  if (!o.near2.any_near(i, o.x_limit[z - 1], z)) return false;
  if (!o.near2.any_near(j, z + 1, o.y_limit[z - 1])) return false;
  return segment_pair_test(o.bp_points[z - 1], o.bp_points[z],
                           o.bp_points[i - 1], o.bp_points[j - 1],
                           2.0 * o.delta);
}

GeneralOracle build_general_oracle(const PolygonalCurve& p,
                                   const BreakpointSet& bps, double delta,
                                   std::size_t ell) {
  GeneralOracle o;
  o.delta = delta;
  o.ell = ell;
  o.p = p;
  o.family = build_sigma_family(p, bps, delta, ell);
  o.bp_points = breakpoint_points(p, bps);
  o.near18 = NearBreakpointMatrix(o.bp_points, 18.0 * delta);
  return o;
}

namespace {

// kappa assembled from the three family parts, with the edge ranges of the
// gated portions and their per-edge breakpoint windows.
struct KappaData {
  PolygonalCurve curve;
  std::vector<char> entry_cols;  // per edge: active backward-portion edge
  std::vector<char> exit_cols;   // per edge: active forward-portion edge
  bool entry_at_start = false;   // degenerate backward portion gate
  bool exit_at_end = false;      // degenerate forward portion gate
};

PolygonalCurve concat_exact(const PolygonalCurve& a, const PolygonalCurve& b) {
  std::vector<double> coords(a.coords());
  std::size_t start = 0;
  if (dist2(a.vertex(a.size() - 1), b.vertex(0)) <=
      geom_epsilon() * geom_epsilon())
    start = 1;
  for (std::size_t k = start; k < b.size(); ++k)
    coords.insert(coords.end(), b.vertex(k).begin(), b.vertex(k).end());
  std::vector<double> params(coords.size() / a.dim());
  for (std::size_t k = 0; k < params.size(); ++k)
    params[k] = params.size() == 1
                    ? 0.0
                    : static_cast<double>(k) / static_cast<double>(params.size() - 1);
  return PolygonalCurve::raw(std::move(coords), a.dim(), std::move(params));
}

KappaData build_kappa(const GeneralOracle& o, std::size_t z, std::size_t i,
                      std::size_t j) {
  const SigmaFamily& fam = o.family;
  const std::size_t xz = fam.x_limit[z - 1];
  const std::size_t ynext = fam.y_limit[z];  // y_{z+1}

  const auto sminus = extract_sigma_minus(fam, o.p, xz, z);
  if (!sminus) throw std::logic_error("sigma_minus missing inside its window");
  const PolygonalCurve& scirc = *fam.circ[z - 1];
  PolygonalCurve splus =
      ynext <= z + 1 ? PolygonalCurve(o.bp_points[z], o.p.dim())
                     : *extract_sigma_plus(fam, o.p, z + 1, ynext);

  KappaData kd;
  kd.curve = concat_exact(concat_exact(*sminus, scirc), splus);
  const std::size_t nm = sminus->num_edges();
  const std::size_t nc = scirc.num_edges();
  const std::size_t np = splus.num_edges();
  if (kd.curve.num_edges() != nm + nc + np)
    throw std::logic_error("kappa parts do not join exactly");
  kd.entry_cols.assign(kd.curve.num_edges(), 0);
  kd.exit_cols.assign(kd.curve.num_edges(), 0);

  // Backward portion: forward edge k maps to stored minus edge nm-1-k; its
  // breakpoint range is clamped to the scan window [x_z, z].
  const FamilyEntry& mentry = fam.minus[z - 1];
  for (std::size_t k = 0; k < nm; ++k) {
    const std::size_t stored = nm - 1 - k;
    const std::size_t f = mentry.edge_first_bp[stored];
    const std::size_t l = mentry.edge_last_bp[stored];
    if (f == 0) continue;
    const std::size_t lo = std::max(f, xz);
    const std::size_t hi = std::min(l, z);
    if (o.near18.any_near(i, lo, hi)) kd.entry_cols[k] = 1;
  }
  if (nm == 0) kd.entry_at_start = o.near18.any_near(i, z, z);

  // Forward portion: edge k maps to stored plus edge k of z+1; window is
  // [z+1, y_{z+1}].
  const FamilyEntry& pentry = fam.plus[z];
  for (std::size_t k = 0; k < np; ++k) {
    const std::size_t f = pentry.edge_first_bp[k];
    const std::size_t l = pentry.edge_last_bp[k];
    if (f == 0) continue;
    const std::size_t lo = std::max(f, z + 1);
    const std::size_t hi = std::min(l, ynext);
    if (o.near18.any_near(j, lo, hi)) kd.exit_cols[nm + nc + k] = 1;
  }
  if (np == 0) kd.exit_at_end = o.near18.any_near(j, z + 1, z + 1);
  return kd;
}

// Degenerate query curve: look for a contiguous free run along kappa that
// touches an entry gate and later an exit gate.
bool run_scan(const KappaData& kd, const PolygonalCurve& target, double radius) {
  const PolygonalCurve& kappa = kd.curve;
  const PointView pt = target.vertex(0);
  bool entered = false;
  Interval prev{};
  bool prev_valid = false;
  for (std::size_t k = 0; k < kappa.num_edges(); ++k) {
    const Interval f = ball_segment_intersection(pt, kappa.vertex(k),
                                                 kappa.vertex(k + 1), radius);
    const bool connected = prev_valid && !prev.empty() && prev.hi >= kTouch &&
                           f.contains(0.0);
    if (f.empty()) {
      entered = false;
    } else {
      if (!connected) entered = false;
      if (k == 0 && kd.entry_at_start && f.contains(0.0)) entered = true;
      if (kd.entry_cols[k]) entered = true;
      if (entered && kd.exit_cols[k]) return true;
      if (entered && k + 1 == kappa.num_edges() && kd.exit_at_end &&
          f.hi >= kTouch)
        return true;
    }
    prev = f;
    prev_valid = true;
  }
  return false;
}

}  // namespace

OracleAnswer general_query(const GeneralOracle& o, std::size_t z, std::size_t i,
                           std::size_t j) {
  const std::size_t m = o.m();
  if (z < 1 || z >= m || i < 1 || j <= i || j > m)
    throw std::out_of_range("general_query index out of range");
  if (!o.family.circ[z - 1]) return OracleAnswer::No;
  const auto sp_ij = extract_sigma_plus(o.family, o.p, i, j);
  if (!sp_ij) return OracleAnswer::No;

  const KappaData kd = build_kappa(o, z, i, j);
  const double radius = 10.0 * o.delta;

  const bool any_entry =
      kd.entry_at_start ||
      std::any_of(kd.entry_cols.begin(), kd.entry_cols.end(),
                  [](char c) { return c != 0; });
  const bool any_exit =
      kd.exit_at_end || std::any_of(kd.exit_cols.begin(), kd.exit_cols.end(),
                                    [](char c) { return c != 0; });
  if (!any_entry || !any_exit) return OracleAnswer::No;

  if (kd.curve.size() == 1) {
    // Fully degenerate kappa: plain distance decision plus both gates.
    return (kd.entry_at_start && kd.exit_at_end &&
            decide_frechet(kd.curve, *sp_ij, radius))
               ? OracleAnswer::Yes
               : OracleAnswer::No;
  }
  if (sp_ij->size() == 1) {
    return run_scan(kd, *sp_ij, radius) ? OracleAnswer::Yes : OracleAnswer::No;
  }

  const FreeSpaceDiagram fd(kd.curve, *sp_ij, radius);
  const BottomSeededReach reach =
      sweep_from_bottom(fd, kd.entry_cols, kd.entry_at_start);
  for (std::size_t k = 0; k < kd.exit_cols.size(); ++k)
    if (kd.exit_cols[k] && !reach.top[k].empty()) return OracleAnswer::Yes;
  if (kd.exit_at_end) {
    const Interval last_top = reach.top.back();
    const bool corner = (!last_top.empty() && last_top.hi >= kTouch) ||
                        (!reach.last_right.empty() &&
                         reach.last_right.hi >= kTouch);
    if (corner) return OracleAnswer::Yes;
  }
  return OracleAnswer::No;
}

}  // namespace subtraj
