#pragma once

#include <string>
#include <vector>

#include "mmlink/antenna.hpp"
#include "mmlink/linkbudget.hpp"

// Closed-form SNR distributions and outage for the three link kinds.
// All densities/CDFs are expressed in the reference-SNR normalization:
// gamma = zeta * G * gamma_bar, so every rate parameter is m / (gamma_bar * B).
namespace mmlink::analytic {

enum class LinkKind { u2u, u2u2u, g2u2g };

std::string to_string(LinkKind kind);

// Sampled PDF/CDF of the SNR plus the probability atom at gamma = 0.
struct DistributionCurve {
  std::vector<double> gamma_grid;  // linear SNR points, ascending
  std::vector<double> pdf;
  std::vector<double> cdf;         // includes the zero atom
  double zero_atom = 0.0;
  LinkKind kind = LinkKind::u2u;
};

// ---- U2U (direct link) ----

// Continuous part of the SNR density (the atom is reported separately).
double u2u_pdf(const SectorGainTable& table, const LinkBudget& budget,
               double gamma);

// Full CDF including the zero atom.
double u2u_cdf(const SectorGainTable& table, const LinkBudget& budget,
               double gamma);

// ---- U2U2U (aerial relay; the relay angle is shared by both legs) ----

struct RelayLink {
  UlaPattern pattern;
  OrientationModel source;
  OrientationModel relay;
  OrientationModel destination;
  LinkBudget budget;          // per-leg reference SNR (legs assumed equal)
  SectorRef ref = SectorRef::lower;
};

// Triple-sector-sum density with the inner semi-infinite integral done by
// adaptive quadrature (substitution u = gamma_dr - gamma_sd).
double u2u2u_pdf(const RelayLink& link, double gamma_sd);

// Exact CDF of the end-to-end SNR via the survival-form quadrature
// (independent of the pdf integral; the two agree to quadrature tolerance).
double u2u2u_cdf(const RelayLink& link, double gamma_sd);

// min(gamma_sr, gamma_dr) upper-bound CDF (closed form, no quadrature).
double u2u2u_cdf_bound(const RelayLink& link, double gamma_sd);

// ---- G2U2G (ground nodes fixed, single fluctuating relay) ----

struct GroundRelayLink {
  UlaPattern pattern;
  OrientationModel relay;
  LinkBudget budget;
  SectorRef ref = SectorRef::lower;
};

double g2u2g_pdf(const GroundRelayLink& link, double gamma_sd);
double g2u2g_cdf(const GroundRelayLink& link, double gamma_sd);

// ---- Outage and curves ----

// F(gamma_th) for the configured link. gamma_th in linear units.
double outage_probability(const SectorGainTable& table, const LinkBudget& budget,
                          double gamma_th);
double outage_probability(const RelayLink& link, double gamma_th,
                          bool use_min_bound = false);
double outage_probability(const GroundRelayLink& link, double gamma_th);

// Log-spaced grid spanning [gamma_bar * 1e-6, gamma_bar * N^4 * 10].
std::vector<double> default_gamma_grid(const LinkBudget& budget, int n_elements,
                                       int points = 400);

DistributionCurve build_u2u_curve(const SectorGainTable& table,
                                  const LinkBudget& budget,
                                  const std::vector<double>& grid);
DistributionCurve build_u2u2u_curve(const RelayLink& link,
                                    const std::vector<double>& grid);
DistributionCurve build_g2u2g_curve(const GroundRelayLink& link,
                                    const std::vector<double>& grid);

}  // namespace mmlink::analytic
