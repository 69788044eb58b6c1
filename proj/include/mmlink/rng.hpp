#pragma once

#include <cstdint>

namespace mmlink {

// Counter-based random stream (SplitMix64 family). The state is a plain
// 64-bit counter advanced by a fixed odd increment, so trial i of stream s
// is position-addressable and identical (seed, stream_id) pairs replay the
// same sequence regardless of how work is partitioned across workers.
// Streams are single-owner; parallel code allocates disjoint stream_ids.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_double();

  // N(mean, sd^2); sd == 0 returns mean exactly. Throws on sd < 0 or
  // non-finite arguments.
  double next_gaussian(double mean, double sd);

  // Gamma(shape, rate) with density rate^m t^{m-1} e^{-rate t} / Gamma(m).
  // Throws on non-positive shape or rate.
  double next_gamma(double shape, double rate);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mmlink
