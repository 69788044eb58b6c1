#include "mmlink/antenna.hpp"

#include <cmath>
#include <stdexcept>

#include "mmlink/specfun.hpp"

namespace mmlink {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double lobe_gain(const UlaPattern& p, double abs_theta) {
  const double c = std::cos(0.5 * kPi * p.n_elements * abs_theta);
  // Lobe edge: cos(pi/2) only rounds to ~1e-17, clamp it to an exact zero so
  // edge sectors land in the zero atom instead of carrying denormal gains.
  if (c <= 1e-12) return 0.0;
  return p.n_elements * std::pow(c, p.lobe_exponent);
}

double sector_ref_angle(const UlaPattern& p, int sector, SectorRef ref) {
  const double width = 1.0 / (static_cast<double>(p.n_sectors) * p.n_elements);
  switch (ref) {
    case SectorRef::lower:
      return sector * width;
    case SectorRef::mid:
      return (sector + 0.5) * width;
    case SectorRef::upper:
      return (sector + 1.0) * width;
  }
  throw std::logic_error("sector_ref_angle: bad ref");
}

}  // namespace

void UlaPattern::validate() const {
  if (n_elements < 2) throw std::invalid_argument("UlaPattern: n_elements < 2");
  if (n_sectors < 1) throw std::invalid_argument("UlaPattern: n_sectors < 1");
  if (!(lobe_exponent > 0.0)) {
    throw std::invalid_argument("UlaPattern: lobe_exponent <= 0");
  }
}

void OrientationModel::validate() const {
  if (!std::isfinite(boresight)) {
    throw std::invalid_argument("OrientationModel: non-finite boresight");
  }
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw std::invalid_argument("OrientationModel: sigma must be >= 0");
  }
}

double exact_gain(const UlaPattern& pattern, double theta) {
  pattern.validate();
  const double n = pattern.n_elements;
  // Period 1 in theta; fold into [-1/2, 1/2).
  double t = theta - std::round(theta);
  const double s = std::sin(kPi * t);
  if (std::abs(s) < 1e-12) return n;
  const double sn = std::sin(kPi * n * t);
  return sn * sn / (n * s * s);
}

double cosine_gain(const UlaPattern& pattern, double theta) {
  pattern.validate();
  const double at = std::abs(theta);
  if (at * pattern.n_elements >= 1.0) return 0.0;
  return lobe_gain(pattern, at);
}

double sectorized_gain(const UlaPattern& pattern, double theta, SectorRef ref) {
  pattern.validate();
  const double at = std::abs(theta);
  if (at * pattern.n_elements >= 1.0) return 0.0;
  const int sector = static_cast<int>(at * pattern.n_sectors * pattern.n_elements);
  return lobe_gain(pattern, sector_ref_angle(pattern, sector, ref));
}

double SectorProbabilities::in_lobe() const {
  double sum = 0.0;
  for (double p : probs) sum += p;
  return sum;
}

SectorProbabilities sector_probabilities(const UlaPattern& pattern,
                                         const OrientationModel& orient) {
  pattern.validate();
  orient.validate();
  const int m_sectors = pattern.n_sectors;
  const double width = 1.0 / (static_cast<double>(m_sectors) * pattern.n_elements);
  SectorProbabilities out;
  out.probs.assign(m_sectors, 0.0);

  if (orient.sigma == 0.0) {
    const double at = std::abs(orient.boresight);
    if (at * pattern.n_elements >= 1.0) {
      out.zero_atom = 1.0;
    } else {
      out.probs[static_cast<int>(at / width)] = 1.0;
    }
    return out;
  }

  const double mu = orient.boresight;
  const double sigma = orient.sigma;
  for (int i = 0; i < m_sectors; ++i) {
    const double lo = i * width;
    const double hi = (i + 1) * width;
    out.probs[i] = specfun::q_function((lo - mu) / sigma) -
                   specfun::q_function((hi - mu) / sigma) +
                   specfun::q_function((-hi - mu) / sigma) -
                   specfun::q_function((-lo - mu) / sigma);
    if (out.probs[i] < 0.0) out.probs[i] = 0.0;
  }
  const double edge = 1.0 / pattern.n_elements;
  out.zero_atom = specfun::q_function((edge - mu) / sigma) +
                  specfun::q_function((edge + mu) / sigma);
  return out;
}

std::vector<double> sector_gains(const UlaPattern& pattern, SectorRef ref) {
  pattern.validate();
  std::vector<double> gains(pattern.n_sectors);
  for (int i = 0; i < pattern.n_sectors; ++i) {
    gains[i] = lobe_gain(pattern, sector_ref_angle(pattern, i, ref));
  }
  return gains;
}

double SectorGainTable::zero_atom() const {
  const int m_sectors = sectors();
  double live = 0.0;
  for (int i = 0; i < m_sectors; ++i) {
    for (int j = 0; j < m_sectors; ++j) {
      if (joint(i, j) > 0.0) live += probs_tx[i] * probs_rx[j];
    }
  }
  return 1.0 - live;
}

SectorGainTable build_sector_table(const UlaPattern& pattern,
                                   const OrientationModel& orient_tx,
                                   const OrientationModel& orient_rx,
                                   SectorRef ref) {
  SectorGainTable table;
  table.pattern = pattern;
  table.ref = ref;
  table.gains = sector_gains(pattern, ref);

  const SectorProbabilities pt = sector_probabilities(pattern, orient_tx);
  const SectorProbabilities pr = sector_probabilities(pattern, orient_rx);
  table.probs_tx = pt.probs;
  table.probs_rx = pr.probs;
  table.zero_atom_tx = pt.zero_atom;
  table.zero_atom_rx = pr.zero_atom;

  const int m_sectors = pattern.n_sectors;
  table.joint_gains.assign(static_cast<std::size_t>(m_sectors) * m_sectors, 0.0);
  for (int i = 0; i < m_sectors; ++i) {
    for (int j = 0; j < m_sectors; ++j) {
      table.joint_gains[static_cast<std::size_t>(i) * m_sectors + j] =
          table.gains[i] * table.gains[j];
    }
  }
  return table;
}

}  // namespace mmlink
