#pragma once

// Taxicab geometry on an axis-aligned road grid.
//
// Coordinates follow the frame where roads are the lines x = i*rx and
// y = j*ry, the source sits at the origin and the destination lies on the
// diagonal at (-R/sqrt2, -R/sqrt2). Roads have zero width.

#include <cmath>
#include <string>

#include "mmv2v/error.hpp"

namespace mmv2v {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct GridGeometry {
  double rx = 50.0;   // spacing of vertical roads [m]
  double ry = 50.0;   // spacing of horizontal roads [m]
  double eta = 1.0;   // road length per unit area [1/m]; cancels in the area ratio

  void validate() const {
    if (!(rx > 0.0) || !(ry > 0.0)) throw DomainError("grid spacing must be positive");
    if (!(eta > 0.0)) throw DomainError("road-density coefficient eta must be positive");
  }
};

inline double manhattan_distance(Point a, Point b) noexcept {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Closed Manhattan ball: the boundary counts as in range.
inline bool in_range(Point center, Point other, double lt) noexcept {
  return manhattan_distance(center, other) <= lt;
}

// Signed Euclidean projection of (candidate - tx) onto the unit vector tx->dest.
inline double forward_progress(Point tx, Point candidate, Point dest) {
  const double ax = dest.x - tx.x;
  const double ay = dest.y - tx.y;
  const double norm = std::hypot(ax, ay);
  if (norm == 0.0) throw DomainError("forward progress undefined: transmitter coincides with destination");
  return ((candidate.x - tx.x) * ax + (candidate.y - tx.y) * ay) / norm;
}

// Areas of the two regions in the Manhattan ball of radius lt: the inner ball of
// radius dman (area_d) and the whole positive-progress half (area_total). Both
// carry the same factor, so it is dropped and area_d / area_total = dman^2 / lt^2.
struct RegionAreas {
  double area_d = 0.0;
  double area_total = 0.0;

  double ratio() const noexcept { return area_total > 0.0 ? area_d / area_total : 0.0; }
};

inline RegionAreas region_areas(double z, double lt, double dman) {
  if (z < 0.0 || lt < 0.0 || dman < 0.0)
    throw DomainError("region_areas: negative input");
  if (dman > lt)
    throw DomainError("region_areas: dman=" + std::to_string(dman) + " exceeds lt=" + std::to_string(lt));
  // z (the forward progress) does not enter the areas; it only labels the region.
  return RegionAreas{dman * dman, lt * lt};
}

}  // namespace mmv2v
