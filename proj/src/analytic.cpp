#include "mmlink/analytic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mmlink/quadrature.hpp"
#include "mmlink/specfun.hpp"

namespace mmlink::analytic {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
// Exponent cutoff below which a gamma-density/survival term underflows.
constexpr double kExpCut = 800.0;

// One leg of a relay hop conditioned on the relay sector: a finite mixture
// of Gamma(m, rate) components over the fluctuating node's live sectors.
struct LegMixture {
  std::vector<double> w;
  std::vector<double> rate;
  double live_mass = 0.0;
  double min_rate = std::numeric_limits<double>::infinity();
  double m = 1.0;
  double log_gamma_m = 0.0;

  double pdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    const double lx = std::log(x);
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double t = m * std::log(rate[k]) + (m - 1.0) * lx - rate[k] * x -
                       log_gamma_m;
      if (t > -745.0) sum += w[k] * std::exp(t);
    }
    return sum;
  }

  // Continuous-part survival: sum_k w_k Q(m, rate_k x).
  double survival(double x) const {
    if (x <= 0.0) return live_mass;
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double ax = rate[k] * x;
      if (ax < 1500.0) sum += w[k] * specfun::reg_gamma_q(m, ax);
    }
    return sum;
  }

  double cdf_continuous(double x) const {
    if (x <= 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      sum += w[k] * specfun::reg_gamma_p(m, rate[k] * x);
    }
    return sum;
  }
};

LegMixture build_leg(const std::vector<double>& gains,
                     const std::vector<double>& probs, double relay_gain,
                     double m, double gamma_bar) {
  LegMixture leg;
  leg.m = m;
  leg.log_gamma_m = std::lgamma(m);
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const double b = gains[i] * relay_gain;
    if (b <= 0.0 || probs[i] <= 0.0) continue;
    leg.w.push_back(probs[i]);
    leg.rate.push_back(m / (gamma_bar * b));
    leg.live_mass += probs[i];
    leg.min_rate = std::min(leg.min_rate, leg.rate.back());
  }
  return leg;
}

// Relay-sector decomposition shared by the U2U2U pdf/cdf/bound.
struct RelayContext {
  std::vector<double> relay_w;    // A_Rj over live relay sectors
  std::vector<LegMixture> src;    // source leg given relay sector
  std::vector<LegMixture> dst;    // destination leg given relay sector
  double zero_atom = 0.0;         // Pr{gamma_sd = 0}
};

RelayContext build_relay_context(const RelayLink& link) {
  link.pattern.validate();
  link.budget.validate();
  const double gamma_bar = reference_snr(link.budget);
  const double m = link.budget.nakagami_m;

  const std::vector<double> gains = sector_gains(link.pattern, link.ref);
  const SectorProbabilities ps = sector_probabilities(link.pattern, link.source);
  const SectorProbabilities pr = sector_probabilities(link.pattern, link.relay);
  const SectorProbabilities pd =
      sector_probabilities(link.pattern, link.destination);

  RelayContext ctx;
  double live_total = 0.0;
  for (int j = 0; j < link.pattern.n_sectors; ++j) {
    if (gains[j] <= 0.0 || pr.probs[j] <= 0.0) continue;
    LegMixture s = build_leg(gains, ps.probs, gains[j], m, gamma_bar);
    LegMixture d = build_leg(gains, pd.probs, gains[j], m, gamma_bar);
    if (s.w.empty() || d.w.empty()) continue;
    live_total += pr.probs[j] * s.live_mass * d.live_mass;
    ctx.relay_w.push_back(pr.probs[j]);
    ctx.src.push_back(std::move(s));
    ctx.dst.push_back(std::move(d));
  }
  ctx.zero_atom = 1.0 - live_total;
  return ctx;
}

// Integrates f(e^v) e^v over v in [v_lo, v_hi]. The integrand is smooth but
// sharply localized, so the window is probed in unit-width segments first
// and only segments near the peak are integrated adaptively.
double integrate_log_window(const std::function<double(double)>& f_of_u,
                            double v_lo, double v_hi) {
  if (!(v_hi > v_lo)) return 0.0;
  const auto g = [&](double v) {
    const double u = std::exp(v);
    return f_of_u(u) * u;
  };
  const int n_seg =
      std::min(600, std::max(1, static_cast<int>(std::ceil(v_hi - v_lo))));
  const double width = (v_hi - v_lo) / n_seg;

  std::vector<double> probe(n_seg);
  double peak = 0.0;
  for (int i = 0; i < n_seg; ++i) {
    probe[i] = std::abs(g(v_lo + (i + 0.5) * width));
    peak = std::max(peak, probe[i]);
  }
  if (peak == 0.0) return 0.0;

  std::vector<char> active(n_seg, 0);
  for (int i = 0; i < n_seg; ++i) {
    if (probe[i] > peak * 1e-16) {
      for (int k = std::max(0, i - 2); k < std::min(n_seg, i + 3); ++k) {
        active[k] = 1;
      }
    }
  }
  double total = 0.0;
  for (int i = 0; i < n_seg; ++i) {
    if (!active[i]) continue;
    const double a = v_lo + i * width;
    total += quadrature::integrate(g, a, a + width, peak * width * 1e-14,
                                   1e-10, 22)
                 .value;
  }
  return total;
}

// Per-relay-sector harmonic-SNR density via the substitution
// gamma_sr = gamma + u, gamma_dr = gamma (gamma + u) / u.
double relay_sector_pdf(const LegMixture& s, const LegMixture& d,
                        double gamma) {
  const double y_cap = kExpCut / d.min_rate;  // largest viable dr-leg SNR
  if (y_cap <= gamma) return 0.0;
  const double u_min = gamma * gamma / (y_cap - gamma);
  const double u_max = kExpCut / s.min_rate + gamma;
  if (!(u_max > u_min)) return 0.0;
  const auto f = [&](double u) {
    const double su = gamma + u;
    const double dv = gamma * su / u;
    const double fs = s.pdf(su);
    if (fs == 0.0) return 0.0;
    const double fd = d.pdf(dv);
    if (fd == 0.0) return 0.0;
    return fs * fd * (su / u) * (su / u);
  };
  return integrate_log_window(f, std::log(std::max(u_min, 1e-290)),
                              std::log(u_max));
}

// Conditional survival Pr{gamma_sd > gamma | relay sector}.
double relay_sector_survival(const LegMixture& s, const LegMixture& d,
                             double gamma) {
  if (gamma <= 0.0) return s.live_mass * d.live_mass;
  const double y_cap = kExpCut / d.min_rate;
  if (y_cap <= gamma) return 0.0;
  const double u_min = gamma * gamma / (y_cap - gamma);
  const double u_max = kExpCut / s.min_rate + gamma;
  if (!(u_max > u_min)) return 0.0;
  const auto f = [&](double u) {
    const double su = gamma + u;
    const double fs = s.pdf(su);
    if (fs == 0.0) return 0.0;
    return fs * d.survival(gamma * su / u);
  };
  return integrate_log_window(f, std::log(std::max(u_min, 1e-290)),
                              std::log(u_max));
}

void parallel_map(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 4;
  workers = std::min<std::size_t>(workers, n == 0 ? 1 : n);
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// G2U2G decomposition: both legs share the relay sector and have equal
// Gamma rates, so the harmonic SNR has the closed Meijer-G form.
struct GroundContext {
  std::vector<double> relay_w;
  std::vector<double> b2;  // B'' = 4 m / (gamma_bar N g_j) per live sector
  double zero_atom = 0.0;
  double m = 1.0;
  double prefactor = 0.0;  // sqrt(pi) / (2^{2m-1} Gamma(m)^2)
};

GroundContext build_ground_context(const GroundRelayLink& link) {
  link.pattern.validate();
  link.budget.validate();
  const double gamma_bar = reference_snr(link.budget);
  const double m = link.budget.nakagami_m;
  const double n = link.pattern.n_elements;

  const std::vector<double> gains = sector_gains(link.pattern, link.ref);
  const SectorProbabilities pr = sector_probabilities(link.pattern, link.relay);

  GroundContext ctx;
  ctx.m = m;
  ctx.prefactor = std::sqrt(kPi) /
                  (std::pow(2.0, 2.0 * m - 1.0) * std::tgamma(m) * std::tgamma(m));
  double live = 0.0;
  for (int j = 0; j < link.pattern.n_sectors; ++j) {
    if (gains[j] <= 0.0 || pr.probs[j] <= 0.0) continue;
    ctx.relay_w.push_back(pr.probs[j]);
    ctx.b2.push_back(4.0 * m / (gamma_bar * n * gains[j]));
    live += pr.probs[j];
  }
  ctx.zero_atom = 1.0 - live;
  return ctx;
}

}  // namespace

std::string to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::u2u: return "u2u";
    case LinkKind::u2u2u: return "u2u2u";
    case LinkKind::g2u2g: return "g2u2g";
  }
  return "unknown";
}

double u2u_pdf(const SectorGainTable& table, const LinkBudget& budget,
               double gamma) {
  budget.validate();
  if (!(gamma > 0.0)) throw std::domain_error("u2u_pdf: gamma <= 0");
  const double gamma_bar = reference_snr(budget);
  const double m = budget.nakagami_m;
  const double lg = std::lgamma(m);
  const double lgam = std::log(gamma);
  const int ms = table.sectors();
  double sum = 0.0;
  for (int i = 0; i < ms; ++i) {
    if (table.probs_tx[i] <= 0.0) continue;
    for (int j = 0; j < ms; ++j) {
      const double b = table.joint(i, j);
      if (b <= 0.0 || table.probs_rx[j] <= 0.0) continue;
      const double rate = m / (gamma_bar * b);
      const double t = m * std::log(rate) + (m - 1.0) * lgam - rate * gamma - lg;
      if (t > -745.0) sum += table.probs_tx[i] * table.probs_rx[j] * std::exp(t);
    }
  }
  return sum;
}

double u2u_cdf(const SectorGainTable& table, const LinkBudget& budget,
               double gamma) {
  budget.validate();
  const double atom = table.zero_atom();
  if (!(gamma > 0.0)) return gamma < 0.0 ? 0.0 : atom;
  const double gamma_bar = reference_snr(budget);
  const double m = budget.nakagami_m;
  const int ms = table.sectors();
  double sum = atom;
  for (int i = 0; i < ms; ++i) {
    if (table.probs_tx[i] <= 0.0) continue;
    for (int j = 0; j < ms; ++j) {
      const double b = table.joint(i, j);
      if (b <= 0.0 || table.probs_rx[j] <= 0.0) continue;
      const double rate = m / (gamma_bar * b);
      sum += table.probs_tx[i] * table.probs_rx[j] *
             specfun::reg_gamma_p(m, rate * gamma);
    }
  }
  return std::min(sum, 1.0);
}

double u2u2u_pdf(const RelayLink& link, double gamma_sd) {
  if (!(gamma_sd > 0.0)) throw std::domain_error("u2u2u_pdf: gamma_sd <= 0");
  const RelayContext ctx = build_relay_context(link);
  double sum = 0.0;
  for (std::size_t j = 0; j < ctx.relay_w.size(); ++j) {
    sum += ctx.relay_w[j] * relay_sector_pdf(ctx.src[j], ctx.dst[j], gamma_sd);
  }
  return sum;
}

double u2u2u_cdf(const RelayLink& link, double gamma_sd) {
  const RelayContext ctx = build_relay_context(link);
  if (gamma_sd < 0.0) return 0.0;
  if (gamma_sd == 0.0) return ctx.zero_atom;
  double survival = 0.0;
  for (std::size_t j = 0; j < ctx.relay_w.size(); ++j) {
    survival +=
        ctx.relay_w[j] * relay_sector_survival(ctx.src[j], ctx.dst[j], gamma_sd);
  }
  return std::min(1.0, std::max(0.0, 1.0 - survival));
}

double u2u2u_cdf_bound(const RelayLink& link, double gamma_sd) {
  const RelayContext ctx = build_relay_context(link);
  if (gamma_sd < 0.0) return 0.0;
  double survival = 0.0;
  for (std::size_t j = 0; j < ctx.relay_w.size(); ++j) {
    survival += ctx.relay_w[j] * ctx.src[j].survival(gamma_sd) *
                ctx.dst[j].survival(gamma_sd);
  }
  return std::min(1.0, std::max(0.0, 1.0 - survival));
}

double g2u2g_pdf(const GroundRelayLink& link, double gamma_sd) {
  if (!(gamma_sd > 0.0)) throw std::domain_error("g2u2g_pdf: gamma_sd <= 0");
  const GroundContext ctx = build_ground_context(link);
  double sum = 0.0;
  for (std::size_t j = 0; j < ctx.relay_w.size(); ++j) {
    sum += ctx.relay_w[j] * ctx.prefactor * ctx.b2[j] *
           specfun::meijer_g_20_12(ctx.b2[j] * gamma_sd, ctx.m);
  }
  return sum;
}

double g2u2g_cdf(const GroundRelayLink& link, double gamma_sd) {
  const GroundContext ctx = build_ground_context(link);
  if (gamma_sd < 0.0) return 0.0;
  if (gamma_sd == 0.0) return ctx.zero_atom;
  double sum = ctx.zero_atom;
  for (std::size_t j = 0; j < ctx.relay_w.size(); ++j) {
    const double x = ctx.b2[j] * gamma_sd;
    sum += ctx.relay_w[j] * ctx.prefactor * x *
           specfun::meijer_g_21_23(x, ctx.m);
  }
  return std::min(1.0, std::max(0.0, sum));
}

double outage_probability(const SectorGainTable& table, const LinkBudget& budget,
                          double gamma_th) {
  return u2u_cdf(table, budget, gamma_th);
}

double outage_probability(const RelayLink& link, double gamma_th,
                          bool use_min_bound) {
  return use_min_bound ? u2u2u_cdf_bound(link, gamma_th)
                       : u2u2u_cdf(link, gamma_th);
}

double outage_probability(const GroundRelayLink& link, double gamma_th) {
  return g2u2g_cdf(link, gamma_th);
}

std::vector<double> default_gamma_grid(const LinkBudget& budget, int n_elements,
                                       int points) {
  budget.validate();
  if (points < 2) throw std::invalid_argument("default_gamma_grid: points < 2");
  const double gamma_bar = reference_snr(budget);
  const double lo = std::log(gamma_bar * 1e-6);
  const double hi = std::log(gamma_bar * std::pow(double(n_elements), 4) * 10.0);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = std::exp(lo + (hi - lo) * i / (points - 1));
  }
  return grid;
}

DistributionCurve build_u2u_curve(const SectorGainTable& table,
                                  const LinkBudget& budget,
                                  const std::vector<double>& grid) {
  DistributionCurve curve;
  curve.kind = LinkKind::u2u;
  curve.gamma_grid = grid;
  curve.zero_atom = table.zero_atom();
  curve.pdf.resize(grid.size());
  curve.cdf.resize(grid.size());
  parallel_map(grid.size(), [&](std::size_t i) {
    curve.pdf[i] = u2u_pdf(table, budget, grid[i]);
    curve.cdf[i] = u2u_cdf(table, budget, grid[i]);
  });
  return curve;
}

DistributionCurve build_u2u2u_curve(const RelayLink& link,
                                    const std::vector<double>& grid) {
  const RelayContext ctx = build_relay_context(link);
  DistributionCurve curve;
  curve.kind = LinkKind::u2u2u;
  curve.gamma_grid = grid;
  curve.zero_atom = ctx.zero_atom;
  curve.pdf.resize(grid.size());
  curve.cdf.resize(grid.size());
  parallel_map(grid.size(), [&](std::size_t i) {
    double pdf = 0.0;
    double survival = 0.0;
    for (std::size_t j = 0; j < ctx.relay_w.size(); ++j) {
      pdf += ctx.relay_w[j] * relay_sector_pdf(ctx.src[j], ctx.dst[j], grid[i]);
      survival += ctx.relay_w[j] *
                  relay_sector_survival(ctx.src[j], ctx.dst[j], grid[i]);
    }
    curve.pdf[i] = pdf;
    curve.cdf[i] = std::min(1.0, std::max(0.0, 1.0 - survival));
  });
  return curve;
}

DistributionCurve build_g2u2g_curve(const GroundRelayLink& link,
                                    const std::vector<double>& grid) {
  const GroundContext ctx = build_ground_context(link);
  DistributionCurve curve;
  curve.kind = LinkKind::g2u2g;
  curve.gamma_grid = grid;
  curve.zero_atom = ctx.zero_atom;
  curve.pdf.resize(grid.size());
  curve.cdf.resize(grid.size());
  parallel_map(grid.size(), [&](std::size_t i) {
    double pdf = 0.0;
    double cdf = ctx.zero_atom;
    for (std::size_t j = 0; j < ctx.relay_w.size(); ++j) {
      const double x = ctx.b2[j] * grid[i];
      pdf += ctx.relay_w[j] * ctx.prefactor * ctx.b2[j] *
             specfun::meijer_g_20_12(x, ctx.m);
      cdf += ctx.relay_w[j] * ctx.prefactor * x *
             specfun::meijer_g_21_23(x, ctx.m);
    }
    curve.pdf[i] = pdf;
    curve.cdf[i] = std::min(1.0, std::max(0.0, cdf));
  });
  return curve;
}

}  // namespace mmlink::analytic
