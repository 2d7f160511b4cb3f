#pragma once

#include <cstdint>

namespace afc {

// Seed material for a family of reproducible random substreams.
struct SeedSpec {
  std::uint64_t master_seed = 0;
};

// xoshiro256++ generator addressed by (master_seed, stream, substream).
//
// Distinct (stream, substream) pairs give statistically independent
// sequences, and the mapping is stable across platforms and across
// sequential vs. parallel execution. Row estimators use stream = row id
// and substream = replicate id.
class Substream {
 public:
  Substream(std::uint64_t master_seed, std::uint64_t stream_id,
            std::uint64_t substream_id);
  Substream(const SeedSpec& seed, std::uint64_t stream_id,
            std::uint64_t substream_id)
      : Substream(seed.master_seed, stream_id, substream_id) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53-bit resolution.
  double next_uniform();

  bool next_bernoulli(double p) { return next_uniform() < p; }

  // Unbiased integer on [0, n); n must be positive.
  std::uint64_t next_below(std::uint64_t n);

  // Marsaglia polar method; the spare deviate is cached.
  double next_normal(double mean, double stddev);

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace afc
