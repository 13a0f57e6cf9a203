#pragma once

#include <vector>

namespace cutin {

/// Axis-aligned box in image coordinates: origin top-left, x rightwards,
/// y downwards. (cx, cy) is the center; w and h must be positive.
struct BoundingBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  double left() const { return cx - w / 2.0; }
  double right() const { return cx + w / 2.0; }
  double top() const { return cy - h / 2.0; }
  double bottom() const { return cy + h / 2.0; }
  double area() const { return w * h; }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

using Polygon = std::vector<Vec2>;

/// Intersection-over-union of two axis-aligned boxes, in [0, 1].
double iou(const BoundingBox& a, const BoundingBox& b);

/// Even-odd rule; points on an edge count as inside.
bool point_in_polygon(const Vec2& p, const Polygon& poly);

/// True if the closed segments [a1,a2] and [b1,b2] share at least one point.
bool segments_intersect(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2);

/// True if the box and the simple polygon overlap (shared area, touching
/// edges, or full containment either way).
bool box_intersects_polygon(const BoundingBox& box, const Polygon& poly);

}  // namespace cutin
