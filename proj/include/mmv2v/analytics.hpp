#pragma once

// Continuum model of a random-relay multi-hop link.
//
// Relay positions are uniform over the positive-progress half of the Manhattan
// ball, which gives forward progress ~ U[0, lt/sqrt2] and Manhattan hop length
// with density 2d/lt^2. Shadowing rho ~ N(0, sigma^2) in dB is independent per
// hop. The headway parameters (d_safe, mu) do not appear here: the continuum
// model has no notion of discrete vehicles. Their effect is only visible in
// the Monte Carlo simulator.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "mmv2v/error.hpp"
#include "mmv2v/quadrature.hpp"
#include "mmv2v/radiolink.hpp"

namespace mmv2v {

inline double fp_pdf(double z, double lt) {
  if (!(lt > 0.0)) throw DomainError("lt must be positive");
  return (z >= 0.0 && z <= lt / std::numbers::sqrt2) ? std::numbers::sqrt2 / lt : 0.0;
}

inline double fp_cdf(double z, double lt) {
  if (!(lt > 0.0)) throw DomainError("lt must be positive");
  if (z <= 0.0) return 0.0;
  return std::min(1.0, std::numbers::sqrt2 * z / lt);
}

// k = R_valid / E[Z] = 2 sqrt2 R_valid / lt, kept real-valued.
inline double hop_count(double r_valid, double lt) {
  if (!(lt > 0.0) || !(r_valid > 0.0)) throw DomainError("hop_count needs positive r_valid and lt");
  return 2.0 * std::numbers::sqrt2 * r_valid / lt;
}

inline double manhattan_pdf(double d, double lt) {
  if (!(lt > 0.0)) throw DomainError("lt must be positive");
  return (d >= 0.0 && d <= lt) ? 2.0 * d / (lt * lt) : 0.0;
}

inline double manhattan_cdf(double d, double lt) {
  if (!(lt > 0.0)) throw DomainError("lt must be positive");
  if (d <= 0.0) return 0.0;
  if (d >= lt) return 1.0;
  return d * d / (lt * lt);
}

namespace detail {

inline void check_lt(double lt) {
  if (!(lt > 0.0)) throw DomainError("lt must be positive");
}

inline std::pair<double, double> shadowing_window(const LinkBudget& budget, const QuadratureSpec& quad) {
  if (quad.db_integration_range) return *quad.db_integration_range;
  return {-8.0 * budget.sigma, 8.0 * budget.sigma};
}

inline double normal_pdf(double x, double sigma) {
  constexpr double kInvSqrt2Pi = 0.39894228040143268;
  const double u = x / sigma;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * u * u);
}

}  // namespace detail

// P(SNR <= gamma) = 1/2 - 1/2 E_d[erf(Y)], Y = (M - gamma - 10 alpha log10 d) / (sqrt2 sigma).
// Evaluated as E_d[erfc(Y)] / 2, which is the same quantity without the
// cancellation in the upper tail.
inline AnalyticResult snr_cdf(double gamma_db, const LinkBudget& budget, double lt,
                              const QuadratureSpec& quad = {}) {
  detail::check_lt(lt);
  budget.validate();
  const double margin = link_margin_db(budget);
  const double slope = 10.0 * budget.alpha;

  if (budget.sigma == 0.0) {
    // SNR <= gamma exactly when d >= d*, with d* solving M - slope log10 d* = gamma.
    const double d_star = std::pow(10.0, (margin - gamma_db) / slope);
    return {1.0 - manhattan_cdf(d_star, lt), 0.0, 1};
  }

  const double scale = std::numbers::sqrt2 * budget.sigma;
  auto integrand = [&](double d) {
    const double y = (margin - gamma_db - slope * std::log10(d)) / scale;
    return 0.5 * std::erfc(y) * manhattan_pdf(d, lt);
  };
  auto r = integrate(integrand, 0.0, lt, quad);
  if (r.value < 0.0 || r.value > 1.0) {
    const double overshoot = r.value < 0.0 ? -r.value : r.value - 1.0;
    if (overshoot >= quad.abs_tol)
      throw NumericalError("SNR CDF left [0, 1] by " + std::to_string(overshoot), r.evaluations);
    r.value = std::clamp(r.value, 0.0, 1.0);
  }
  return r;
}

// E[1 / log2(1 + SNR)] over the hop-length and shadowing laws. Dimensionless;
// multiply by P_S / ((1 - tau/T_t) B) for the mean single-hop delay.
inline AnalyticResult mean_inverse_spectral_efficiency(const LinkBudget& budget, double lt,
                                                       const QuadratureSpec& quad = {}) {
  detail::check_lt(lt);
  budget.validate();
  quad.validate();
  const double margin = link_margin_db(budget);
  const double slope = 10.0 * budget.alpha;
  long inner_evals = 0;
  double inner_err = 0.0;

  auto inverse_efficiency = [](double snr) {
    const double se = log2_one_plus_db(snr);
    return se > 0.0 ? 1.0 / se : std::numeric_limits<double>::infinity();
  };

  QuadratureSpec inner_spec = quad;
  inner_spec.abs_tol = 0.1 * quad.abs_tol;
  inner_spec.rel_tol = 0.1 * quad.rel_tol;
  const auto [rho_lo, rho_hi] = detail::shadowing_window(budget, quad);

  auto per_distance = [&](double d) {
    // d = 0 is the limit SNR -> infinity, where the delay vanishes.
    if (d <= 0.0) return 0.0;
    const double median_snr = margin - slope * std::log10(d);
    if (budget.sigma == 0.0) return inverse_efficiency(median_snr) * manhattan_pdf(d, lt);
    auto over_rho = [&](double rho) {
      return inverse_efficiency(median_snr - rho) * detail::normal_pdf(rho, budget.sigma);
    };
    const auto r = integrate(over_rho, rho_lo, rho_hi, inner_spec);
    inner_evals += r.evaluations;
    inner_err = std::max(inner_err, r.est_error);
    return r.value * manhattan_pdf(d, lt);
  };
  auto r = integrate(per_distance, 0.0, lt, quad);
  r.est_error += inner_err;
  r.evaluations += inner_evals;
  return r;
}

// k E[T_hop] + (k - 1) T_proc.
inline AnalyticResult avg_total_delay(const LinkBudget& budget, double r_valid, double lt,
                                      const QuadratureSpec& quad = {}) {
  const double k = hop_count(r_valid, lt);
  const double scale = budget.p_s / (data_fraction(budget) * budget.b);
  auto e = mean_inverse_spectral_efficiency(budget, lt, quad);
  return {k * scale * e.value + (k - 1.0) * budget.t_proc, k * scale * e.est_error, e.evaluations};
}

// [1 - F_SNR(epsilon)]^k, evaluated as exp(k log1p(-F)).
inline AnalyticResult avg_total_reliability(const LinkBudget& budget, double r_valid, double lt,
                                            double epsilon_db, const QuadratureSpec& quad = {}) {
  const double k = hop_count(r_valid, lt);
  if (epsilon_db == -std::numeric_limits<double>::infinity()) return {1.0, 0.0, 0};
  const auto f = snr_cdf(epsilon_db, budget, lt, quad);
  const double per_hop = 1.0 - f.value;
  const double value = std::exp(k * std::log1p(-f.value));
  // First-order propagation of the CDF error through p^k.
  const double err = per_hop > 0.0 ? k * value / per_hop * f.est_error : f.est_error;
  return {value, err, f.evaluations};
}

}  // namespace mmv2v
