#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace varspc::rng {

// Identifies one independent random stream. Streams with distinct
// (master_seed, stream_index) pairs never share counter blocks, so
// replications indexed by stream are reproducible in any execution order.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

// Threefry-2x64, 20 rounds. Pure function of (counter, key).
std::array<std::uint64_t, 2> threefry2x64(std::array<std::uint64_t, 2> ctr,
                                          std::array<std::uint64_t, 2> key);

// Standard normal generator over one stream: each counter block yields two
// uniforms in (0, 1], consumed by one polar Box-Muller attempt. Accepted
// attempts produce two normals; the second is cached for the next call.
class NormalSource {
 public:
  explicit NormalSource(RngStream stream)
      : key_{stream.master_seed, stream.stream_index} {}

  double next();

 private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t ctr_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::vector<double> standard_normal_draws(RngStream stream, std::size_t count);

}  // namespace varspc::rng
