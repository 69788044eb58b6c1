#pragma once

#include <cmath>
#include <optional>
#include <string>

namespace mmlink {

enum class SnrMode { physical, normalized };

// Deterministic large-scale link parameters. Everything downstream works in
// terms of the reference SNR gamma_bar = Pt * hL / noise (linear): the
// instantaneous SNR is zeta * G * gamma_bar, so path loss and noise are
// absorbed and antenna gains / fading are excluded.
struct LinkBudget {
  double distance_m = 500.0;      // Z
  double carrier_ghz = 60.0;      // f_c
  double building_height_m = 25.0;  // h_b
  double noise_dbm = 30.0;        // normalized thermal noise power
  double nakagami_m = 3.0;        // fading shape, >= 0.5
  SnrMode snr_mode = SnrMode::normalized;
  double tx_power_dbm = 0.0;      // used in physical mode
  double ref_snr_db = 0.0;        // used in normalized mode

  void validate() const;  // throws std::invalid_argument
  // Non-fatal validity notes (e.g. path-loss parameterization range).
  std::optional<std::string> validity_warning() const;
};

// 3GPP-derived urban path loss in dB for the given budget.
double path_loss_db(const LinkBudget& budget);

// Reference SNR gamma_bar as a linear ratio.
double reference_snr(const LinkBudget& budget);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

// SNR threshold from a capacity threshold C_th: gamma_th = 2^C_th - 1.
double snr_threshold_from_capacity(double c_th);

}  // namespace mmlink
