#include "mmlink/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mmlink {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // Decorrelate streams by hashing (seed, stream_id) into the start counter.
  state_ = splitmix64(splitmix64(seed) ^ (stream_id * 0xd6e8feb86659fd93ULL));
}

std::uint64_t RngStream::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian(double mean, double sd) {
  if (!std::isfinite(mean) || !std::isfinite(sd) || sd < 0.0) {
    throw std::domain_error("next_gaussian: bad mean/sd");
  }
  if (sd == 0.0) return mean;
  if (has_spare_) {
    has_spare_ = false;
    return mean + sd * spare_gaussian_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_double() - 1.0;
    v = 2.0 * next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_gaussian_ = v * factor;
  has_spare_ = true;
  return mean + sd * (u * factor);
}

double RngStream::next_gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("next_gamma: shape and rate must be positive");
  }
  // Marsaglia-Tsang; boost shape < 1 with the u^{1/shape} trick.
  double boost = 1.0;
  double k = shape;
  if (k < 1.0) {
    const double u = next_double();
    boost = std::pow(u <= 0.0 ? 5e-324 : u, 1.0 / k);
    k += 1.0;
  }
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_gaussian(0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_double();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return boost * d * v / rate;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return boost * d * v / rate;
    }
  }
}

}  // namespace mmlink
