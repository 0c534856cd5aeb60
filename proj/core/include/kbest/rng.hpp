#pragma once

#include <cstdint>

namespace kbest {

// Counter-keyed pseudo-random stream. The (seed, stream) pair fully
// determines the emitted sequence, so giving each Monte Carlo trial its own
// stream makes results independent of how trials are scheduled across
// threads. The core generator is SplitMix64; the key pair is decorrelated
// through two finalizer rounds before the walk starts.
//
// Not cryptographic. One stream must not be shared across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform draw strictly inside (0,1): safe under log() and pow().
  double uniform01();

  // Exponential with the given rate (mean 1/rate).
  double exponential(double rate);

  // Standard normal via Box-Muller; the second value of each pair is cached,
  // which keeps the draw sequence deterministic per stream.
  double normal();

  // Gamma(shape, scale) by Marsaglia-Tsang squeeze rejection, valid for every
  // real shape > 0 (shapes below 1 go through the Gamma(shape+1) boost).
  double gamma_dist(double shape, double scale);

 private:
  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace kbest
