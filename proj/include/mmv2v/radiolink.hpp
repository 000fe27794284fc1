#pragma once

// Single-hop mmWave link model: sectorized antenna, 72 GHz path loss with
// log-normal shadowing, exhaustive beam sweep cost and Shannon rate.
//
// All link quantities stay in the dB domain. Linear SNR only appears inside
// the Shannon rate, through a numerically stable log2(1 + 10^(x/10)).

#include <cmath>
#include <limits>

#include "mmv2v/error.hpp"

namespace mmv2v {

enum class Side { kTx, kRx };

struct AntennaPattern {
  double g_main = 10.0;   // main lobe gain [dB]
  double g_side = -10.0;  // side lobe gain [dB]
  double psi_tx = 40.0;   // sector-level beamwidths [deg]
  double psi_rx = 40.0;
  double phi_tx = 10.0;   // beam-level beamwidths [deg]
  double phi_rx = 10.0;

  void validate() const {
    if (!(g_main > g_side)) throw DomainError("main lobe gain must exceed side lobe gain");
    auto ok = [](double phi, double psi) { return phi > 0.0 && phi <= psi && psi <= 360.0; };
    if (!ok(phi_tx, psi_tx) || !ok(phi_rx, psi_rx))
      throw DomainError("beamwidths must satisfy 0 < phi <= psi <= 360");
  }
};

// Path-loss intercept of the 72 GHz channel model [dB].
inline constexpr double kPathLossInterceptDb = 69.6;

struct LinkBudget {
  double p_t = 30.0;       // transmit power [dBm]
  double n0 = -174.0;      // noise density [dBm/Hz]
  double b = 200e6;        // bandwidth [Hz]
  double alpha = 2.9;      // path loss exponent
  double sigma = 4.0;      // shadowing std dev [dB]
  double t_t = 4e-3;       // slot duration [s]
  double t_p = 0.2e-3;     // pilot duration [s]
  double t_proc = 20e-6;   // relay processing delay [s]
  double p_s = 24000.0;    // packet size [bit]
  AntennaPattern antenna;

  void validate() const;
};

struct LinkSample {
  double d_man = 0.0;
  double rho = 0.0;
  double snr_db = 0.0;
  double rate_bps = 0.0;
  double delay_s = std::numeric_limits<double>::infinity();
};

inline double directivity_gain(const AntennaPattern& pattern, double alignment_error_deg, Side side) noexcept {
  const double phi = side == Side::kTx ? pattern.phi_tx : pattern.phi_rx;
  return std::abs(alignment_error_deg) <= phi / 2.0 ? pattern.g_main : pattern.g_side;
}

// Exhaustive beam-level sweep over all beam pairs inside the chosen sectors.
inline double alignment_delay(const AntennaPattern& pattern, double t_p) noexcept {
  return (pattern.psi_tx * pattern.psi_rx) / (pattern.phi_tx * pattern.phi_rx) * t_p;
}

inline void LinkBudget::validate() const {
  antenna.validate();
  if (!(b > 0.0)) throw DomainError("bandwidth must be positive");
  if (!(sigma >= 0.0)) throw DomainError("sigma must be non-negative");
  if (!(alpha > 0.0)) throw DomainError("path loss exponent must be positive");
  if (!(t_p > 0.0)) throw DomainError("pilot duration must be positive");
  if (!(t_proc >= 0.0)) throw DomainError("processing delay must be non-negative");
  if (!(p_s >= 0.0)) throw DomainError("packet size must be non-negative");
  if (!(alignment_delay(antenna, t_p) < t_t))
    throw DomainError("alignment delay leaves no time for data in the slot (tau >= T_t)");
}

// Path loss: 69.6 + 10 alpha log10(d) + rho. Subtracted in the SNR budget.
inline double channel_gain_db(const LinkBudget& budget, double d_man, double rho) {
  if (!(d_man > 0.0)) throw DomainError("channel gain needs d_man > 0");
  return kPathLossInterceptDb + 10.0 * budget.alpha * std::log10(d_man) + rho;
}

// Distance-independent part of the SNR with main-lobe gains on both ends:
// M = P_t - N_0 - 10 log10(B) + 2 G - 69.6.
inline double link_margin_db(const LinkBudget& budget) noexcept {
  return budget.p_t - budget.n0 - 10.0 * std::log10(budget.b) + 2.0 * budget.antenna.g_main -
         kPathLossInterceptDb;
}

inline double snr_db(const LinkBudget& budget, double d_man, double rho) {
  if (!(d_man > 0.0)) throw DomainError("SNR needs d_man > 0");
  return link_margin_db(budget) - 10.0 * budget.alpha * std::log10(d_man) - rho;
}

// log2(1 + 10^(x/10)) without overflow for large x or loss of digits for small x.
inline double log2_one_plus_db(double x_db) noexcept {
  constexpr double kLn10Over10 = 0.23025850929940458;
  constexpr double kLn2 = 0.69314718055994531;
  if (x_db == -std::numeric_limits<double>::infinity()) return 0.0;
  const double t = x_db * kLn10Over10;
  const double softplus = t > 30.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
  return softplus / kLn2;
}

inline double data_fraction(const LinkBudget& budget) {
  const double tau = alignment_delay(budget.antenna, budget.t_p);
  if (!(tau < budget.t_t)) throw DomainError("alignment delay leaves no time for data in the slot (tau >= T_t)");
  return 1.0 - tau / budget.t_t;
}

inline double effective_rate(const LinkBudget& budget, double snr_db_value) {
  return data_fraction(budget) * budget.b * log2_one_plus_db(snr_db_value);
}

// Infinite when the rate is zero; callers treat that as a failed hop.
inline double single_hop_delay(const LinkBudget& budget, double snr_db_value) {
  if (budget.p_s == 0.0) return 0.0;
  const double rate = effective_rate(budget, snr_db_value);
  if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
  return budget.p_s / rate;
}

inline bool single_hop_reliability_indicator(double snr_db_value, double epsilon_db) noexcept {
  return snr_db_value >= epsilon_db;
}

inline LinkSample evaluate_link(const LinkBudget& budget, double d_man, double rho) {
  LinkSample s;
  s.d_man = d_man;
  s.rho = rho;
  s.snr_db = snr_db(budget, d_man, rho);
  s.rate_bps = effective_rate(budget, s.snr_db);
  s.delay_s = single_hop_delay(budget, s.snr_db);
  return s;
}

}  // namespace mmv2v
