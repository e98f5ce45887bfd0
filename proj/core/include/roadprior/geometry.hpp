#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <string>
#include <vector>

namespace roadprior {

enum class ElementClass { kPedCrossing = 0, kDivider = 1, kBoundary = 2 };

constexpr int kNumClasses = 3;

const char* to_string(ElementClass cls);
ElementClass element_class_from_string(const std::string& name);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }

// Ego-frame box every ingested point must lie in. x lateral, y longitudinal.
struct PerceptionRange {
  double x_min = -15.0;
  double x_max = 15.0;
  double y_min = -30.0;
  double y_max = 30.0;

  bool contains(const Point2& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

// One vectorized map element: fixed-length keypoint chain in ego coordinates.
// Pedestrian crossings are closed polygons, dividers and boundaries open
// polylines.
struct RoadElement {
  ElementClass cls = ElementClass::kDivider;
  std::vector<Point2> points;
  bool is_closed = false;
  std::string id;
};

// Flat interleaved [x1,y1,...,xP,yP] form of a keypoint chain, length 2P.
using ElementVector = Eigen::VectorXd;

namespace geometry {

ElementVector to_vector(const RoadElement& e);
ElementVector to_vector(const std::vector<Point2>& points);
std::vector<Point2> to_points(const ElementVector& r);

// Resamples a chain to target_count points equally spaced by arclength.
// Closed chains are treated as a cycle; the duplicated closing point is not
// emitted. Throws DegenerateGeometry when the total arclength is zero.
std::vector<Point2> resample(const std::vector<Point2>& raw_points, std::size_t target_count,
                             bool closed);

// Fixes the start-point/direction ambiguity: open chains get the
// lexicographically smaller endpoint (compare y, then x) first; closed chains
// are rotated so the smallest point leads and wound counterclockwise.
// Idempotent, preserves the point set.
RoadElement canonicalize(const RoadElement& e);

// Symmetric mean nearest-point distance between the two keypoint sets, in
// meters: 0.5 * (mean_a min_b |a-b| + mean_b min_a |b-a|).
double chamfer_distance(const ElementVector& a, const ElementVector& b);
double chamfer_distance(const std::vector<Point2>& a, const std::vector<Point2>& b);

}  // namespace geometry
}  // namespace roadprior
