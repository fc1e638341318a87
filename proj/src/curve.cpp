#include "subtraj/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace subtraj {

namespace {

bool points_equal(PointView a, PointView b) {
  const double eps = geom_epsilon();
  return dist2(a, b) <= eps * eps;
}

}  // namespace

PolygonalCurve::PolygonalCurve(std::vector<double> coords, std::size_t dim,
                               std::vector<double> params)
    : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("curve dimension must be positive");
  if (coords.empty() || coords.size() % dim != 0)
    throw std::invalid_argument("curve needs at least one point");
  const std::size_t n = coords.size() / dim;
  const bool explicit_params = !params.empty();
  if (explicit_params) {
    if (params.size() != n)
      throw std::invalid_argument("one parameter per point required");
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(params[i] < params[i + 1]))
        throw std::invalid_argument("explicit parameters must be strictly increasing");
    if (n >= 2 && (params.front() != 0.0 || params.back() != 1.0))
      throw std::invalid_argument("explicit parameters must span [0,1]");
  }

  // Drop consecutive duplicates. For a run of equal points the first one is
  // kept, except that the parameter of a run ending at the last input point
  // is pinned to 1 so that s_n = 1 survives.
  coords_.reserve(coords.size());
  params_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PointView p(coords.data() + i * dim, dim);
    if (!params_.empty() &&
        points_equal(p, PointView(coords_.data() + (params_.size() - 1) * dim, dim))) {
      if (explicit_params && i + 1 == n) params_.back() = 1.0;
      continue;
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
    params_.push_back(explicit_params ? params[i] : 0.0);
  }
  const std::size_t kept = params_.size();
  if (kept == 1) {
    params_[0] = 0.0;
    if (n > 1)
      throw std::invalid_argument("all points identical but several requested");
    return;
  }
  if (!explicit_params) {
    double acc = 0.0;
    for (std::size_t i = 1; i < kept; ++i) {
      acc += dist(PointView(coords_.data() + (i - 1) * dim, dim),
                  PointView(coords_.data() + i * dim, dim));
      params_[i] = acc;
    }
    for (auto& s : params_) s /= acc;
    params_.front() = 0.0;
    params_.back() = 1.0;
  }
}

PolygonalCurve PolygonalCurve::raw(std::vector<double> coords, std::size_t dim,
                                   std::vector<double> params) {
  PolygonalCurve c;
  c.coords_ = std::move(coords);
  c.params_ = std::move(params);
  c.dim_ = dim;
  if (c.params_.empty() || c.coords_.size() != c.params_.size() * dim)
    throw std::invalid_argument("inconsistent raw curve data");
  for (std::size_t i = 0; i + 1 < c.params_.size(); ++i)
    if (!(c.params_[i] < c.params_[i + 1]))
      throw std::invalid_argument("raw curve parameters must increase");
  return c;
}

Point PolygonalCurve::point_at(double t) const {
  const double eps = geom_epsilon();
  if (t < -eps || t > 1.0 + eps)
    throw std::invalid_argument("parameter outside [0,1]");
  t = std::clamp(t, 0.0, 1.0);
  if (size() == 1) return Point(vertex(0).begin(), vertex(0).end());
  auto [e, r] = locate(t);
  PointView a = vertex(e);
  PointView b = vertex(e + 1);
  Point out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) out[k] = a[k] + r * (b[k] - a[k]);
  return out;
}

std::pair<std::size_t, double> PolygonalCurve::locate(double t) const {
  const auto it = std::upper_bound(params_.begin(), params_.end(), t);
  std::size_t e = static_cast<std::size_t>(it - params_.begin());
  e = e == 0 ? 0 : e - 1;
  if (e >= num_edges()) e = num_edges() - 1;
  const double lo = params_[e];
  const double hi = params_[e + 1];
  const double r = hi > lo ? (t - lo) / (hi - lo) : 0.0;
  return {e, std::clamp(r, 0.0, 1.0)};
}

PolygonalCurve PolygonalCurve::subcurve(double a, double b) const {
  const double eps = geom_epsilon();
  if (a > b) throw std::invalid_argument("subcurve requires a <= b");
  a = std::clamp(a, 0.0, 1.0);
  b = std::clamp(b, 0.0, 1.0);
  const Point pa = point_at(a);
  if (b - a <= eps || size() == 1) {
    return PolygonalCurve(pa, dim_);
  }
  std::vector<double> coords(pa.begin(), pa.end());
  std::vector<double> params{0.0};
  for (std::size_t i = 0; i < size(); ++i) {
    const double s = params_[i];
    if (s <= a + eps || s >= b - eps) continue;
    coords.insert(coords.end(), vertex(i).begin(), vertex(i).end());
    params.push_back((s - a) / (b - a));
  }
  const Point pb = point_at(b);
  coords.insert(coords.end(), pb.begin(), pb.end());
  params.push_back(1.0);
  return PolygonalCurve(std::move(coords), dim_, std::move(params));
}

PolygonalCurve PolygonalCurve::reversed() const {
  std::vector<double> coords;
  std::vector<double> params;
  coords.reserve(coords_.size());
  params.reserve(params_.size());
  for (std::size_t i = size(); i-- > 0;) {
    coords.insert(coords.end(), vertex(i).begin(), vertex(i).end());
    params.push_back(1.0 - params_[i]);
  }
  if (params.size() == 1) return PolygonalCurve(std::move(coords), dim_);
  return PolygonalCurve(std::move(coords), dim_, std::move(params));
}

double PolygonalCurve::max_vertex_distance(const PolygonalCurve& other) const {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < other.size(); ++j)
      best = std::max(best, dist2(vertex(i), other.vertex(j)));
  return std::sqrt(best);
}

double PolygonalCurve::joint_bbox_diagonal(const PolygonalCurve& a,
                                           const PolygonalCurve& b) {
  const std::size_t d = a.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  auto grow = [&](const PolygonalCurve& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      PointView p = c.vertex(i);
      for (std::size_t k = 0; k < d; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
  };
  grow(a);
  grow(b);
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) s += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  return std::sqrt(s);
}

PolygonalCurve build_curve(const std::vector<Point>& points,
                           const std::vector<double>& params) {
  if (points.empty()) throw std::invalid_argument("no points given");
  const std::size_t dim = points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim)
      throw std::invalid_argument("inconsistent point dimension");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PolygonalCurve(std::move(coords), dim, params);
}

PolygonalCurve concat_curves(const PolygonalCurve& a, const PolygonalCurve& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.dim() != b.dim())
    throw std::invalid_argument("dimension mismatch in concatenation");
  std::vector<double> coords(a.coords());
  coords.insert(coords.end(), b.coords().begin(), b.coords().end());
  return PolygonalCurve(std::move(coords), a.dim());
}

BreakpointSet::BreakpointSet(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2)
    throw std::invalid_argument("at least two breakpoints required");
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (!(values_[i] < values_[i + 1]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
  const double eps = geom_epsilon();
  if (std::abs(values_.front()) > eps || std::abs(values_.back() - 1.0) > eps)
    throw std::invalid_argument("breakpoints must start at 0 and end at 1");
  values_.front() = 0.0;
  values_.back() = 1.0;
}

}  // namespace subtraj
