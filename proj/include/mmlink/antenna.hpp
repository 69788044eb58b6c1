#pragma once

#include <vector>

namespace mmlink {

// Uniform linear array description. theta in all gain functions is the
// angular deviation from boresight in radians, fed directly into the array
// factor; the main lobe occupies |theta| < 1/N.
struct UlaPattern {
  int n_elements = 8;         // N
  int n_sectors = 20;         // M, staircase resolution of the main lobe
  double lobe_exponent = 2.5; // d

  void validate() const;  // throws std::invalid_argument
};

// Gaussian orientation fluctuation of one node: theta ~ N(boresight, sigma^2).
struct OrientationModel {
  double boresight = 0.0;  // rad
  double sigma = 0.0;      // rad, >= 0

  void validate() const;
};

// Where within each sector the staircase gain is evaluated. `lower` is the
// printed sectorized-cosine model (sector 0 gain = N); `mid` tracks the
// continuous cosine lobe with no systematic bias; `upper` matches the
// published optimal-N tables (equivalent to a 1-based sector index).
enum class SectorRef { lower, mid, upper };

// Exact array (Fejer kernel) gain sin^2(pi N theta) / (N sin^2(pi theta)),
// with the removable singularities resolved to N. Periodic with period 1.
double exact_gain(const UlaPattern& pattern, double theta);

// Cosine main-lobe approximation: N cos(pi N theta / 2)^d on |theta| < 1/N.
double cosine_gain(const UlaPattern& pattern, double theta);

// Piecewise-constant sectorized-cosine gain; sector i covers
// i/(MN) <= |theta| < (i+1)/(MN) (left-closed), zero outside the lobe.
double sectorized_gain(const UlaPattern& pattern, double theta,
                       SectorRef ref = SectorRef::lower);

struct SectorProbabilities {
  std::vector<double> probs;  // A_i, i = 0..M-1
  double zero_atom = 0.0;     // Pr{ |theta| >= 1/N }
  double in_lobe() const;     // sum of probs
};

// Probability of the orientation landing in each gain sector (four-Q-term
// formula); sigma == 0 degenerates to an indicator for the boresight sector.
SectorProbabilities sector_probabilities(const UlaPattern& pattern,
                                         const OrientationModel& orient);

// Discrete distribution of the tx*rx directivity gain: per-sector single
// side gains g_i, joint gains B_ij = g_i g_j with probability A_ti * A_rj.
struct SectorGainTable {
  UlaPattern pattern;
  SectorRef ref = SectorRef::lower;
  std::vector<double> gains;        // g_i, size M
  std::vector<double> joint_gains;  // B_ij row-major, size M*M
  std::vector<double> probs_tx;     // A_ti
  std::vector<double> probs_rx;     // A_rj
  double zero_atom_tx = 0.0;
  double zero_atom_rx = 0.0;

  int sectors() const { return pattern.n_sectors; }
  double joint(int i, int j) const { return joint_gains[static_cast<std::size_t>(i) * sectors() + j]; }
  // Total probability of a zero directivity gain (either side off-lobe).
  double zero_atom() const;
};

// Per-sector single-side gains g_i = N cos(.)^d under the given reference.
std::vector<double> sector_gains(const UlaPattern& pattern,
                                 SectorRef ref = SectorRef::lower);

SectorGainTable build_sector_table(const UlaPattern& pattern,
                                   const OrientationModel& orient_tx,
                                   const OrientationModel& orient_rx,
                                   SectorRef ref = SectorRef::lower);

}  // namespace mmlink
