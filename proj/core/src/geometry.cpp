#include "roadprior/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roadprior/errors.hpp"

namespace roadprior {

const char* to_string(ElementClass cls) {
  switch (cls) {
    case ElementClass::kPedCrossing:
      return "ped_crossing";
    case ElementClass::kDivider:
      return "divider";
    case ElementClass::kBoundary:
      return "boundary";
  }
  throw InternalError("unknown ElementClass value");
}

ElementClass element_class_from_string(const std::string& name) {
  if (name == "ped_crossing") return ElementClass::kPedCrossing;
  if (name == "divider") return ElementClass::kDivider;
  if (name == "boundary") return ElementClass::kBoundary;
  throw ClassMismatch("unknown element class '" + name + "'");
}

namespace geometry {

namespace {

double dist(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

// (y, x) lexicographic order used for canonical start points.
bool lex_less(const Point2& a, const Point2& b) {
  if (a.y != b.y) return a.y < b.y;
  return a.x < b.x;
}

double signed_area(const std::vector<Point2>& pts) {
  double acc = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = pts[i];
    const Point2& q = pts[(i + 1) % n];
    acc += p.x * q.y - q.x * p.y;
  }
  return 0.5 * acc;
}

}  // namespace

ElementVector to_vector(const std::vector<Point2>& points) {
  ElementVector r(2 * static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    r(2 * static_cast<Eigen::Index>(i)) = points[i].x;
    r(2 * static_cast<Eigen::Index>(i) + 1) = points[i].y;
  }
  return r;
}

ElementVector to_vector(const RoadElement& e) { return to_vector(e.points); }

std::vector<Point2> to_points(const ElementVector& r) {
  if (r.size() % 2 != 0) {
    throw DimensionMismatch("element vector length must be even, got " + std::to_string(r.size()));
  }
  std::vector<Point2> pts(static_cast<std::size_t>(r.size() / 2));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i].x = r(2 * static_cast<Eigen::Index>(i));
    pts[i].y = r(2 * static_cast<Eigen::Index>(i) + 1);
  }
  return pts;
}

std::vector<Point2> resample(const std::vector<Point2>& raw_points, std::size_t target_count,
                             bool closed) {
  if (raw_points.size() < 2) {
    throw DegenerateGeometry("resample needs at least 2 input points");
  }
  if (target_count == 0) {
    throw OutOfRange("target_count must be positive");
  }

  std::vector<Point2> chain = raw_points;
  if (closed) chain.push_back(raw_points.front());

  const std::size_t n_seg = chain.size() - 1;
  std::vector<double> cum(n_seg + 1, 0.0);
  for (std::size_t i = 0; i < n_seg; ++i) {
    cum[i + 1] = cum[i] + dist(chain[i], chain[i + 1]);
  }
  const double total = cum.back();
  if (total <= 0.0) {
    throw DegenerateGeometry("zero total arclength: all input points coincide");
  }

  std::vector<Point2> out(target_count);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < target_count; ++k) {
    if (!closed && k == 0) {
      out[k] = raw_points.front();
      continue;
    }
    if (!closed && k == target_count - 1) {
      out[k] = raw_points.back();
      continue;
    }
    const double s = closed
                         ? total * static_cast<double>(k) / static_cast<double>(target_count)
                         : total * static_cast<double>(k) / static_cast<double>(target_count - 1);
    while (seg + 1 < n_seg && cum[seg + 1] < s) ++seg;
    const double seg_len = cum[seg + 1] - cum[seg];
    const double t = seg_len > 0.0 ? (s - cum[seg]) / seg_len : 0.0;
    out[k].x = chain[seg].x + t * (chain[seg + 1].x - chain[seg].x);
    out[k].y = chain[seg].y + t * (chain[seg + 1].y - chain[seg].y);
  }
  return out;
}

RoadElement canonicalize(const RoadElement& e) {
  RoadElement out = e;
  if (out.points.size() < 2) return out;

  if (!out.is_closed) {
    if (lex_less(out.points.back(), out.points.front())) {
      std::reverse(out.points.begin(), out.points.end());
    }
    return out;
  }

  // Closed: counterclockwise winding first, then rotate the smallest point
  // (lowest index among ties) to the front.
  if (signed_area(out.points) < 0.0) {
    std::reverse(out.points.begin(), out.points.end());
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (lex_less(out.points[i], out.points[start])) start = i;
  }
  std::rotate(out.points.begin(), out.points.begin() + static_cast<std::ptrdiff_t>(start),
              out.points.end());
  return out;
}

double chamfer_distance(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) {
    throw DimensionMismatch("chamfer_distance needs nonempty point sets");
  }
  double sum_a = 0.0;
  for (const Point2& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& q : b) best = std::min(best, dist(p, q));
    sum_a += best;
  }
  double sum_b = 0.0;
  for (const Point2& q : b) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& p : a) best = std::min(best, dist(q, p));
    sum_b += best;
  }
  return 0.5 * (sum_a / static_cast<double>(a.size()) + sum_b / static_cast<double>(b.size()));
}

double chamfer_distance(const ElementVector& a, const ElementVector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("chamfer_distance: vector lengths differ");
  }
  return chamfer_distance(to_points(a), to_points(b));
}

}  // namespace geometry
}  // namespace roadprior
