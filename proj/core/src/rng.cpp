#include "varspc/rng.hpp"

#include <cmath>

namespace varspc::rng {

namespace {

constexpr std::uint64_t kParity = 0x1BD11BDAA9FC1A22ull;
constexpr int kRot[8] = {16, 42, 12, 31, 16, 32, 24, 21};

inline std::uint64_t rotl(std::uint64_t x, int r) {
  return (x << r) | (x >> (64 - r));
}

}  // namespace

std::array<std::uint64_t, 2> threefry2x64(std::array<std::uint64_t, 2> ctr,
                                          std::array<std::uint64_t, 2> key) {
  const std::uint64_t ks[3] = {key[0], key[1], kParity ^ key[0] ^ key[1]};
  std::uint64_t x0 = ctr[0] + ks[0];
  std::uint64_t x1 = ctr[1] + ks[1];
  for (int r = 0; r < 20; ++r) {
    x0 += x1;
    x1 = rotl(x1, kRot[r % 8]);
    x1 ^= x0;
    if ((r + 1) % 4 == 0) {
      const int s = (r + 1) / 4;
      x0 += ks[s % 3];
      x1 += ks[(s + 1) % 3] + static_cast<std::uint64_t>(s);
    }
  }
  return {x0, x1};
}

double NormalSource::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  for (;;) {
    const auto block = threefry2x64({ctr_, 0}, key_);
    ++ctr_;
    // (0, 1] uniforms from the high 53 bits; the +1 excludes zero.
    const double u = (static_cast<double>(block[0] >> 11) + 1.0) * 0x1p-53;
    const double w = (static_cast<double>(block[1] >> 11) + 1.0) * 0x1p-53;
    const double x = 2.0 * u - 1.0;
    const double y = 2.0 * w - 1.0;
    const double s = x * x + y * y;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      cached_ = y * f;
      has_cached_ = true;
      return x * f;
    }
  }
}

std::vector<double> standard_normal_draws(RngStream stream, std::size_t count) {
  NormalSource src(stream);
  std::vector<double> out(count);
  for (auto& z : out) z = src.next();
  return out;
}

}  // namespace varspc::rng
