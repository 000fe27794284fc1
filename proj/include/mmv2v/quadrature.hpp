#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature, QAG style: the interval
// with the largest error estimate is bisected until the total estimate meets
// max(abs_tol, rel_tol * |I|).

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "mmv2v/error.hpp"

namespace mmv2v {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  // Shadowing integration window in dB. Unset means [-8 sigma, 8 sigma].
  std::optional<std::pair<double, double>> db_integration_range;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
    if (db_integration_range && !(db_integration_range->first < db_integration_range->second))
      throw DomainError("dB integration range must satisfy lo < hi");
  }
};

struct AnalyticResult {
  double value = 0.0;
  double est_error = 0.0;
  long evaluations = 0;
};

namespace detail {

// Kronrod abscissae (positive half) and weights; Gauss weights for the
// embedded 7-point rule live on the odd Kronrod nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const noexcept { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double res_k = fc * kWgk[7];
  double res_g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    res_k += kWgk[j] * fsum;
    if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
  }
  return {a, b, res_k * half, std::abs((res_k - res_g) * half)};
}

}  // namespace detail

template <class F>
AnalyticResult integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  long evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return f(x);
  };
  if (a == b) return {0.0, 0.0, 0};

  std::priority_queue<detail::Segment> work;
  auto first = detail::gk15(counted, a, b);
  double total = first.value;
  double total_err = first.error;
  work.push(first);

  for (int splits = 0;; ++splits) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_err <= target) break;
    if (splits >= spec.max_subdivisions)
      throw NumericalError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "], error estimate " + std::to_string(total_err),
                           evals);
    auto worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15(counted, worst.a, mid);
    auto right = detail::gk15(counted, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
  }

  // Re-sum to shed the drift of the incremental updates.
  total = 0.0;
  total_err = 0.0;
  while (!work.empty()) {
    total += work.top().value;
    total_err += work.top().error;
    work.pop();
  }
  return {total, total_err, evals};
}

}  // namespace mmv2v
