#include "cutin/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace cutin {

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::max(0.0, std::min(a.right(), b.right()) - std::max(a.left(), b.left()));
  const double iy = std::max(0.0, std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top()));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2) {
  const double d1 = cross(b1, b2, a1);
  const double d2 = cross(b1, b2, a2);
  const double d3 = cross(a1, a2, b1);
  const double d4 = cross(a1, a2, b2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(b1, b2, a1)) return true;
  if (d2 == 0 && on_segment(b1, b2, a2)) return true;
  if (d3 == 0 && on_segment(a1, a2, b1)) return true;
  if (d4 == 0 && on_segment(a1, a2, b2)) return true;
  return false;
}

bool point_in_polygon(const Vec2& p, const Polygon& poly) {
  const size_t n = poly.size();
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[j];
    const Vec2& b = poly[i];
    // Boundary counts as inside.
    if (cross(a, b, p) == 0 && on_segment(a, b, p)) return true;
    if ((b.y > p.y) != (a.y > p.y)) {
      const double x_at = (a.x - b.x) * (p.y - b.y) / (a.y - b.y) + b.x;
      if (p.x < x_at) inside = !inside;
    }
  }
  return inside;
}

bool box_intersects_polygon(const BoundingBox& box, const Polygon& poly) {
  if (poly.size() < 3) return false;
  const Vec2 corners[4] = {{box.left(), box.top()},
                           {box.right(), box.top()},
                           {box.right(), box.bottom()},
                           {box.left(), box.bottom()}};
  for (const Vec2& c : corners)
    if (point_in_polygon(c, poly)) return true;
  // Any polygon vertex inside the box.
  for (const Vec2& v : poly)
    if (v.x >= box.left() && v.x <= box.right() && v.y >= box.top() && v.y <= box.bottom())
      return true;
  // Crossing edges with no vertex containment.
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    for (int k = 0; k < 4; ++k) {
      if (segments_intersect(poly[j], poly[i], corners[k], corners[(k + 1) % 4])) return true;
    }
  }
  return false;
}

}  // namespace cutin
