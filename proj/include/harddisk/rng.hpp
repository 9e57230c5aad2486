#pragma once

#include <cstdint>
#include <random>

#include "harddisk/geometry.hpp"

namespace hd {

// One reproducible stream per (master_seed, stream_id). Streams are seeded
// through std::seed_seq from all four 32-bit halves, so neighbouring ids
// give unrelated sequences.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_id() const { return id_; }

  double uniform() { return unit_(engine_); }
  double uniform(double a, double b) { return a + (b - a) * unit_(engine_); }
  Point uniform_in(const Rect& r) { return {uniform(r.x0, r.x1), uniform(r.y0, r.y1)}; }
  std::uint64_t below(std::uint64_t n);
  std::uint64_t poisson(double mean);
  bool bernoulli(double p) { return unit_(engine_) < p; }
  double normal() { return normal_(engine_); }

  // Child stream for a nested sub-computation.
  RngStream split(std::uint64_t salt);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t id_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hd
