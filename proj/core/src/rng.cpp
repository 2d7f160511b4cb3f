#include "afc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace afc {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Substream::Substream(std::uint64_t master_seed, std::uint64_t stream_id,
                     std::uint64_t substream_id) {
  // Fold the address into the SplitMix64 state before expanding it into
  // the four xoshiro words; distinct addresses decorrelate immediately.
  std::uint64_t x = master_seed;
  (void)splitmix64(x);
  x ^= splitmix64(x) + 0x9E3779B97F4A7C15ULL * (stream_id + 1);
  x ^= splitmix64(x) + 0xC2B2AE3D27D4EB4FULL * (substream_id + 1);
  for (auto& word : state_) {
    word = splitmix64(x);
  }
  if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) {
    state_[0] = 1;  // xoshiro must not start from the all-zero state
  }
}

std::uint64_t Substream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Substream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Substream::next_below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("next_below: n must be positive");
  }
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) {
      return r % n;
    }
  }
}

double Substream::next_normal(double mean, double stddev) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + stddev * spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_uniform() - 1.0;
    v = 2.0 * next_uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return mean + stddev * u * scale;
}

}  // namespace afc
