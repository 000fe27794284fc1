#pragma once

// Discrete-vehicle simulator for random relay selection.
//
// Each replication freezes a fresh vehicle field, then forwards the message
// from the source to the destination. At every hop the transmitter picks a
// relay uniformly among the vehicles within Manhattan distance lt that have
// positive forward progress. When the destination itself is in range it is
// chosen directly. Shadowing is drawn independently per hop.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "mmv2v/analytics.hpp"
#include "mmv2v/error.hpp"
#include "mmv2v/geometry.hpp"
#include "mmv2v/radiolink.hpp"
#include "mmv2v/traffic.hpp"

namespace mmv2v {

struct ScenarioConfig {
  double r_valid = 500.0 * std::numbers::sqrt2;  // source-destination Euclidean distance [m]
  double lt = 100.0;                             // Manhattan communication range [m]
  GridGeometry geom;
  HeadwayModel headway;
  LinkBudget budget;
  double epsilon = 5.0;                          // per-hop SNR threshold [dB]
  long replications = 10000;
  std::uint64_t seed = 1;
  long max_hops = 0;                             // 0: ten times the analytic hop count

  long effective_max_hops() const {
    if (max_hops > 0) return max_hops;
    return static_cast<long>(std::ceil(10.0 * hop_count(r_valid, lt) - 1e-9));
  }

  Point source() const noexcept { return {0.0, 0.0}; }
  Point destination() const noexcept {
    const double c = r_valid / std::numbers::sqrt2;
    return {-c, -c};
  }

  // Every transmitter that stays within r_valid of the destination has its
  // whole Manhattan ball inside this box.
  Bounds field_bounds() const noexcept {
    const Point d = destination();
    const double h = r_valid + lt;
    return {d.x - h, d.x + h, d.y - h, d.y + h};
  }

  void validate() const {
    if (!(r_valid > 0.0)) throw ConfigError("r_valid must be positive");
    if (!(lt > 0.0)) throw ConfigError("lt must be positive");
    if (!(lt < r_valid)) throw ConfigError("lt must be smaller than r_valid");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if (max_hops < 0) throw ConfigError("max_hops must be >= 0");
    if (max_hops > 0 && static_cast<double>(max_hops) < hop_count(r_valid, lt))
      throw ConfigError("max_hops is below the analytic hop count");
    geom.validate();
    headway.validate();
    budget.validate();
  }
};

struct Hop {
  Point tx;
  Point rx;
  double d_man = 0.0;
  double fp = 0.0;
  double snr_db = 0.0;
  double hop_delay_s = 0.0;
  bool hop_success = false;
};

enum class PathOutcome { kDelivered, kStranded, kHopCapExceeded };

struct PathRecord {
  std::vector<Hop> hops;
  PathOutcome outcome = PathOutcome::kStranded;
  double total_delay_s = std::numeric_limits<double>::quiet_NaN();

  bool delivered() const noexcept { return outcome == PathOutcome::kDelivered; }
  bool all_hops_succeeded() const noexcept {
    return std::all_of(hops.begin(), hops.end(), [](const Hop& h) { return h.hop_success; });
  }
};

struct Estimate {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double ci_halfwidth = std::numeric_limits<double>::quiet_NaN();  // 95 %, normal approximation
  long n = 0;
  double stranded_fraction = 0.0;
  bool valid = false;
};

struct SimulationResult {
  Estimate delay;        // over delivered paths
  Estimate reliability;  // over all replications
  double stranded_fraction = 0.0;
  double hop_cap_fraction = 0.0;
  double mean_hops = std::numeric_limits<double>::quiet_NaN();  // delivered paths
  long delivered = 0;
};

namespace detail {

// Index range [first, last) of a road's vehicles that lie in the Manhattan ball
// around `current` and have strictly positive forward progress towards `dest`.
// Both conditions are monotone along the road, so each bound is a partition point
// of the exact predicate.
inline std::pair<std::size_t, std::size_t> candidate_range(const Road& road, Point current, Point dest,
                                                          double lt) {
  const auto& pos = road.positions;
  const bool vertical = road.orientation == Orientation::kVertical;
  const double cross = vertical ? current.x : current.y;
  const double along = vertical ? current.y : current.x;
  if (std::abs(road.offset - cross) > lt) return {0, 0};

  auto at = [&](double s) { return road.point_at(s); };
  auto first = std::partition_point(pos.begin(), pos.end(), [&](double s) {
    return s < along && manhattan_distance(current, at(s)) > lt;
  });
  auto last = std::partition_point(first, pos.end(), [&](double s) {
    return s <= along || manhattan_distance(current, at(s)) <= lt;
  });

  const double axis = vertical ? dest.y - current.y : dest.x - current.x;
  if (axis > 0.0) {
    first = std::partition_point(first, last, [&](double s) { return forward_progress(current, at(s), dest) <= 0.0; });
  } else if (axis < 0.0) {
    last = std::partition_point(first, last, [&](double s) { return forward_progress(current, at(s), dest) > 0.0; });
  } else if (first != last && !(forward_progress(current, at(*first), dest) > 0.0)) {
    last = first;
  }
  return {static_cast<std::size_t>(first - pos.begin()), static_cast<std::size_t>(last - pos.begin())};
}

inline bool is_candidate(Point current, Point other, Point dest, double lt) {
  return in_range(current, other, lt) && forward_progress(current, other, dest) > 0.0;
}

}  // namespace detail

// Uniform random relay among in-range, positive-progress vehicles.
template <class URBG>
std::optional<Point> select_relay(Point current, Point dest, const VehicleField& field, double lt, URBG& rng) {
  if (current == dest) throw DomainError("select_relay: current position is the destination");
  if (in_range(current, dest, lt)) return dest;

  struct Span {
    const Road* road;
    std::size_t first, last;
  };
  std::vector<Span> spans;
  std::size_t total = 0;
  for (const auto& road : field.roads) {
    auto [f, l] = detail::candidate_range(road, current, dest, lt);
    if (l > f) {
      spans.push_back({&road, f, l});
      total += l - f;
    }
  }
  std::vector<Point> extra;
  for (const auto& p : field.injected)
    if (p != dest && detail::is_candidate(current, p, dest, lt)) extra.push_back(p);
  total += extra.size();
  if (total == 0) return std::nullopt;

  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
  for (const auto& s : spans) {
    const std::size_t n = s.last - s.first;
    if (pick < n) return s.road->point_at(s.road->positions[s.first + pick]);
    pick -= n;
  }
  return extra[pick];
}

// Field for one replication: the grid population plus the source and destination.
inline VehicleField make_field(const ScenarioConfig& config, std::uint64_t seed) {
  auto field = populate_grid(config.geom, config.headway, config.field_bounds(), seed);
  field.injected = {config.source(), config.destination()};
  return field;
}

template <class URBG>
PathRecord run_path(const ScenarioConfig& config, const VehicleField& field, URBG& rng) {
  const Point dest = config.destination();
  const long cap = config.effective_max_hops();
  std::normal_distribution<double> shadowing(0.0, 1.0);

  PathRecord rec;
  Point current = config.source();
  double delay_sum = 0.0;
  for (;;) {
    if (static_cast<long>(rec.hops.size()) >= cap) {
      rec.outcome = PathOutcome::kHopCapExceeded;
      return rec;
    }
    auto next = select_relay(current, dest, field, config.lt, rng);
    if (!next) {
      rec.outcome = PathOutcome::kStranded;
      return rec;
    }
    Hop h;
    h.tx = current;
    h.rx = *next;
    h.d_man = manhattan_distance(current, *next);
    h.fp = forward_progress(current, *next, dest);
    const double rho = config.budget.sigma * shadowing(rng);
    h.snr_db = snr_db(config.budget, h.d_man, rho);
    h.hop_delay_s = single_hop_delay(config.budget, h.snr_db);
    h.hop_success = single_hop_reliability_indicator(h.snr_db, config.epsilon);
    delay_sum += h.hop_delay_s;
    rec.hops.push_back(h);

    if (*next == dest) {
      rec.outcome = PathOutcome::kDelivered;
      rec.total_delay_s = delay_sum + static_cast<double>(rec.hops.size() - 1) * config.budget.t_proc;
      return rec;
    }
    current = *next;
  }
}

// Record of a single replication; the field and path streams are derived from
// (seed, replication index).
inline PathRecord run_replication(const ScenarioConfig& config, long replication) {
  const std::uint64_t rep_seed = derive_seed(config.seed, static_cast<std::uint64_t>(replication));
  const auto field = make_field(config, derive_seed(rep_seed, 0));
  Rng rng(derive_seed(rep_seed, 1));
  return run_path(config, field, rng);
}

namespace detail {

struct ReplicationSummary {
  PathOutcome outcome = PathOutcome::kStranded;
  bool reliable = false;
  double total_delay_s = 0.0;
  std::size_t hops = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

}  // namespace detail

inline SimulationResult estimate(const ScenarioConfig& config, unsigned workers = 1) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.replications);
  std::vector<detail::ReplicationSummary> out(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      const auto rec = run_replication(config, static_cast<long>(i));
      out[i] = {rec.outcome, rec.delivered() && rec.all_hops_succeeded(), rec.total_delay_s, rec.hops.size()};
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  // Sequential reduction in replication order keeps the result independent of
  // the worker count.
  long delivered = 0, stranded = 0, capped = 0, reliable = 0;
  double sum = 0.0, sum_sq = 0.0, hop_sum = 0.0;
  for (const auto& s : out) {
    if (s.reliable) ++reliable;
    switch (s.outcome) {
      case PathOutcome::kDelivered:
        ++delivered;
        sum += s.total_delay_s;
        sum_sq += s.total_delay_s * s.total_delay_s;
        hop_sum += static_cast<double>(s.hops);
        break;
      case PathOutcome::kStranded: ++stranded; break;
      case PathOutcome::kHopCapExceeded: ++capped; break;
    }
  }

  SimulationResult r;
  const double total = static_cast<double>(n);
  r.stranded_fraction = static_cast<double>(stranded) / total;
  r.hop_cap_fraction = static_cast<double>(capped) / total;
  r.delivered = delivered;

  const double p = static_cast<double>(reliable) / total;
  r.reliability = {p, detail::kZ95 * std::sqrt(p * (1.0 - p) / total), static_cast<long>(n), r.stranded_fraction, true};

  r.delay.n = delivered;
  r.delay.stranded_fraction = r.stranded_fraction;
  if (delivered > 0) {
    const double m = sum / static_cast<double>(delivered);
    r.delay.mean = m;
    r.delay.valid = true;
    r.mean_hops = hop_sum / static_cast<double>(delivered);
    if (delivered > 1) {
      const double var = std::max(0.0, (sum_sq - static_cast<double>(delivered) * m * m) / static_cast<double>(delivered - 1));
      r.delay.ci_halfwidth = detail::kZ95 * std::sqrt(var / static_cast<double>(delivered));
    } else {
      r.delay.ci_halfwidth = std::numeric_limits<double>::infinity();
    }
  }
  return r;
}

}  // namespace mmv2v
