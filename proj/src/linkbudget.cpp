#include "mmlink/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmlink {

void LinkBudget::validate() const {
  if (!(distance_m > 0.0)) throw std::invalid_argument("LinkBudget: distance_m <= 0");
  if (!(carrier_ghz > 0.0)) throw std::invalid_argument("LinkBudget: carrier_ghz <= 0");
  if (!(building_height_m > 0.0)) {
    throw std::invalid_argument("LinkBudget: building_height_m <= 0");
  }
  if (!(nakagami_m >= 0.5)) throw std::invalid_argument("LinkBudget: nakagami_m < 0.5");
  if (!std::isfinite(noise_dbm) || !std::isfinite(tx_power_dbm) ||
      !std::isfinite(ref_snr_db)) {
    throw std::invalid_argument("LinkBudget: non-finite dB parameter");
  }
}

std::optional<std::string> LinkBudget::validity_warning() const {
  if (building_height_m > 150.0) {
    return "building height above the 150 m path-loss fit range";
  }
  return std::nullopt;
}

double path_loss_db(const LinkBudget& budget) {
  budget.validate();
  const double z = budget.distance_m;
  const double fc = budget.carrier_ghz;
  const double hb = budget.building_height_m;
  const double hb173 = std::pow(hb, 1.73);
  return 20.0 * std::log10(40.0 * 3.141592653589793 * z * fc / 3.0) +
         std::min(0.03 * hb173, 10.0) * std::log10(z) -
         std::min(0.044 * hb173, 14.77) + 0.002 * std::log10(hb) * z;
}

double reference_snr(const LinkBudget& budget) {
  budget.validate();
  if (budget.snr_mode == SnrMode::normalized) {
    return db_to_linear(budget.ref_snr_db);
  }
  return db_to_linear(budget.tx_power_dbm - path_loss_db(budget) -
                      budget.noise_dbm);
}

double snr_threshold_from_capacity(double c_th) {
  if (!(c_th >= 0.0)) throw std::invalid_argument("snr_threshold_from_capacity: c_th < 0");
  return std::pow(2.0, c_th) - 1.0;
}

}  // namespace mmlink
