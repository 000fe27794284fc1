#pragma once

// Shifted-exponential headways and vehicle placement on the road grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mmv2v/error.hpp"
#include "mmv2v/geometry.hpp"

namespace mmv2v {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent stream seeds from a base
// seed and an index so results do not depend on evaluation order.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(base) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

// D_adj = d_safe + U with U ~ Exp(mu).
struct HeadwayModel {
  double d_safe = 4.0;  // [m]
  double mu = 0.08;     // [1/m]

  double mean() const noexcept { return d_safe + 1.0 / mu; }
  double density() const noexcept { return 1.0 / mean(); }

  double cdf(double d) const noexcept {
    return d <= d_safe ? 0.0 : -std::expm1(-mu * (d - d_safe));
  }

  void validate() const {
    if (!(d_safe >= 0.0)) throw DomainError("d_safe must be non-negative");
    if (!(mu > 0.0)) throw DomainError("mu must be positive");
  }
};

template <class URBG>
double sample_headway(const HeadwayModel& model, URBG& rng) {
  std::exponential_distribution<double> free_part(model.mu);
  return model.d_safe + free_part(rng);
}

// Forward recurrence time of the stationary renewal process: the distance from
// an arbitrary origin to the next vehicle. Its density is (1 - F(x)) / mean,
// i.e. flat at 1/mean on [0, d_safe] followed by an exponential tail.
template <class URBG>
double sample_equilibrium_offset(const HeadwayModel& model, URBG& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p_flat = model.d_safe / model.mean();
  if (unit(rng) < p_flat) return model.d_safe * unit(rng);
  std::exponential_distribution<double> tail(model.mu);
  return model.d_safe + tail(rng);
}

struct Bounds {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool empty() const noexcept { return !(x_max > x_min) || !(y_max > y_min); }
  bool contains(Point p) const noexcept {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

enum class Orientation : std::uint8_t { kVertical = 0, kHorizontal = 1 };

// One road line clipped to the field bounds. Vehicle positions are the free
// coordinate (y for vertical roads, x for horizontal ones), sorted ascending.
struct Road {
  int id = 0;
  Orientation orientation = Orientation::kVertical;
  long lattice_index = 0;     // road sits at lattice_index * spacing
  double offset = 0.0;        // fixed coordinate
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> positions;

  Point point_at(double s) const noexcept {
    return orientation == Orientation::kVertical ? Point{offset, s} : Point{s, offset};
  }
  double length() const noexcept { return hi - lo; }
};

struct Vehicle {
  Point position;
  int road_id = -1;  // -1 for injected source/destination vehicles
};

struct VehicleField {
  Bounds bounds;
  std::vector<Road> roads;  // vertical roads by x, then horizontal roads by y
  std::vector<Point> injected;

  std::size_t vertical_count = 0;

  std::span<const Road> vertical_roads() const noexcept {
    return std::span<const Road>(roads).first(vertical_count);
  }
  std::span<const Road> horizontal_roads() const noexcept {
    return std::span<const Road>(roads).subspan(vertical_count);
  }

  std::size_t size() const noexcept {
    std::size_t n = injected.size();
    for (const auto& r : roads) n += r.positions.size();
    return n;
  }

  // Flattened listing, road vehicles first, in road order.
  std::vector<Vehicle> vehicles() const {
    std::vector<Vehicle> out;
    out.reserve(size());
    for (const auto& r : roads)
      for (double s : r.positions) out.push_back({r.point_at(s), r.id});
    for (const auto& p : injected) out.push_back({p, -1});
    return out;
  }
};

namespace detail {

inline void fill_road(Road& road, const HeadwayModel& model, std::uint64_t seed) {
  Rng rng(seed);
  double s = road.lo + sample_equilibrium_offset(model, rng);
  while (s <= road.hi) {
    road.positions.push_back(s);
    s += sample_headway(model, rng);
  }
}

inline std::uint64_t road_seed(std::uint64_t seed, Orientation o, long lattice_index) {
  const auto idx = static_cast<std::uint64_t>(lattice_index) * 2 + static_cast<std::uint64_t>(o);
  return derive_seed(seed, idx);
}

}  // namespace detail

// Every road of the grid that crosses `bounds` gets an independent stationary
// shifted-exponential renewal process. Each road draws from its own stream,
// derived from `seed` and the road's lattice position.
inline VehicleField populate_grid(const GridGeometry& geom, const HeadwayModel& model,
                                  const Bounds& bounds, std::uint64_t seed) {
  geom.validate();
  model.validate();
  VehicleField field;
  field.bounds = bounds;
  if (bounds.empty()) return field;

  const long i_lo = static_cast<long>(std::ceil(bounds.x_min / geom.rx));
  const long i_hi = static_cast<long>(std::floor(bounds.x_max / geom.rx));
  const long j_lo = static_cast<long>(std::ceil(bounds.y_min / geom.ry));
  const long j_hi = static_cast<long>(std::floor(bounds.y_max / geom.ry));

  int id = 0;
  for (long i = i_lo; i <= i_hi; ++i) {
    Road r{id++, Orientation::kVertical, i, i * geom.rx, bounds.y_min, bounds.y_max, {}};
    detail::fill_road(r, model, detail::road_seed(seed, r.orientation, i));
    field.roads.push_back(std::move(r));
  }
  field.vertical_count = field.roads.size();
  for (long j = j_lo; j <= j_hi; ++j) {
    Road r{id++, Orientation::kHorizontal, j, j * geom.ry, bounds.x_min, bounds.x_max, {}};
    detail::fill_road(r, model, detail::road_seed(seed, r.orientation, j));
    field.roads.push_back(std::move(r));
  }
  return field;
}

}  // namespace mmv2v
