#include "harddisk/rng.hpp"

namespace hd {

namespace {
std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32),
                    0x68647331u};
  return std::mt19937_64(seq);
}
}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : seed_(master_seed), id_(stream_id), engine_(seeded(master_seed, stream_id)) {}

std::uint64_t RngStream::below(std::uint64_t n) {
  require(n > 0, ErrorKind::invalid_argument, "below(0)");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

std::uint64_t RngStream::poisson(double mean) {
  require(mean >= 0 && std::isfinite(mean), ErrorKind::invalid_argument, "bad Poisson mean");
  if (mean == 0) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(engine_);
}

RngStream RngStream::split(std::uint64_t salt) {
  const std::uint64_t child = engine_() ^ (salt * 0x9E3779B97F4A7C15ull);
  return RngStream(seed_ ^ child, id_ + salt + 1);
}

}  // namespace hd
