#include "mmlink/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mmlink/quadrature.hpp"

namespace mmlink::specfun {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7};

// Series expansion of P(m, x), valid for x < m + 1.
double gamma_p_series(double m, double x) {
  double term = 1.0 / m;
  double sum = term;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (m + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + m * std::log(x) - std::lgamma(m));
}

// Continued fraction for Q(m, x), valid for x >= m + 1.
double gamma_q_cf(double m, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - m;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - m);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + m * std::log(x) - std::lgamma(m)) * h;
}

// Real-axis log magnitude of the G^{2,0}_{1,2} Mellin integrand at s = c.
double g20_log_mag(double c, double m, double log_x) {
  return std::lgamma(m - 1.0 - c) + std::lgamma(2.0 * m - 1.0 - c) -
         std::lgamma(m - 0.5 - c) + c * log_x;
}

double g21_log_mag(double c, double m, double log_x) {
  return std::lgamma(m - 1.0 - c) + std::lgamma(2.0 * m - 1.0 - c) +
         std::lgamma(1.0 + c) - std::lgamma(m - 0.5 - c) -
         std::lgamma(2.0 + c) + c * log_x;
}

// Shared Mellin-Barnes driver: integrates exp(w(c + it) - w(c)) over t >= 0
// and restores the scale. `log_w` must return the full complex log of the
// integrand (gamma terms plus s log x).
double mellin_barnes(double c, double log_mag0,
                     const std::function<std::complex<double>(
                         std::complex<double>)>& log_w) {
  const auto integrand = [&](double t) {
    const std::complex<double> w = log_w({c, t});
    const double re = w.real() - log_mag0;
    if (re < -745.0) return 0.0;
    return std::exp(re) * std::cos(w.imag());
  };
  // Truncate where the envelope has decayed ~48 decades below the peak.
  double upper = 8.0;
  while (upper < 1e5) {
    if (log_w({c, upper}).real() - log_mag0 < -112.0) break;
    upper *= 2.0;
  }
  const auto r = quadrature::integrate(integrand, 0.0, upper,
                                       1e-15 * std::max(1.0, upper), 1e-12, 34);
  return std::exp(log_mag0) * r.value / kPi;
}

}  // namespace

double q_function(double x) {
  if (!std::isfinite(x)) throw std::domain_error("q_function: non-finite input");
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double lower_incomplete_gamma(double m, double x) {
  if (!(m > 0.0)) throw std::domain_error("lower_incomplete_gamma: m <= 0");
  if (x < 0.0) throw std::domain_error("lower_incomplete_gamma: x < 0");
  return reg_gamma_p(m, x) * std::tgamma(m);
}

double reg_gamma_p(double m, double x) {
  if (!(m > 0.0)) throw std::domain_error("reg_gamma_p: m <= 0");
  if (x < 0.0) throw std::domain_error("reg_gamma_p: x < 0");
  if (x == 0.0) return 0.0;
  return x < m + 1.0 ? gamma_p_series(m, x) : 1.0 - gamma_q_cf(m, x);
}

double reg_gamma_q(double m, double x) {
  if (!(m > 0.0)) throw std::domain_error("reg_gamma_q: m <= 0");
  if (x < 0.0) throw std::domain_error("reg_gamma_q: x < 0");
  if (x == 0.0) return 1.0;
  return x < m + 1.0 ? 1.0 - gamma_p_series(m, x) : gamma_q_cf(m, x);
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() <= 0.0) throw std::domain_error("log_gamma: Re(z) <= 0");
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double meijer_g_20_12(double x, double m) {
  if (!(x > 0.0)) throw std::domain_error("meijer_g_20_12: x <= 0");
  if (!(m >= 0.5)) throw std::domain_error("meijer_g_20_12: m < 1/2");
  const double log_x = std::log(x);

  // Pick the contour abscissa minimizing the real-axis integrand magnitude
  // (poles of the numerator gammas lie at s >= m - 1, so c < m - 1).
  double best_c = m - 1.0 - 1e-3;
  double best_mag = g20_log_mag(best_c, m, log_x);
  for (double delta = 1.0 / 64.0; delta < 1e13; delta *= 1.35) {
    const double c = m - 1.0 - delta;
    const double mag = g20_log_mag(c, m, log_x);
    if (mag < best_mag) {
      best_mag = mag;
      best_c = c;
    }
  }

  const auto log_w = [m, log_x](std::complex<double> s) {
    return log_gamma(m - 1.0 - s) + log_gamma(2.0 * m - 1.0 - s) -
           log_gamma(m - 0.5 - s) + s * log_x;
  };
  return mellin_barnes(best_c, best_mag, log_w);
}

double meijer_g_21_23(double x, double m) {
  if (!(x > 0.0)) throw std::domain_error("meijer_g_21_23: x <= 0");
  if (!(m >= 0.5)) throw std::domain_error("meijer_g_21_23: m < 1/2");
  const double log_x = std::log(x);

  // Contour between the left poles of Gamma(1 + s) (s <= -1) and the right
  // poles of Gamma(m - 1 - s) (s >= m - 1).
  const double lo = -1.0 + 1e-4;
  const double hi = m - 1.0 - 1e-4;
  double best_c = 0.5 * (lo + hi);
  double best_mag = g21_log_mag(best_c, m, log_x);
  for (int i = 0; i <= 400; ++i) {
    const double c = lo + (hi - lo) * i / 400.0;
    const double mag = g21_log_mag(c, m, log_x);
    if (mag < best_mag) {
      best_mag = mag;
      best_c = c;
    }
  }

  const auto log_w = [m, log_x](std::complex<double> s) {
    return log_gamma(m - 1.0 - s) + log_gamma(2.0 * m - 1.0 - s) +
           log_gamma(1.0 + s) - log_gamma(m - 0.5 - s) - log_gamma(2.0 + s) +
           s * log_x;
  };
  return mellin_barnes(best_c, best_mag, log_w);
}

}  // namespace mmlink::specfun
