#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace rootlts {

// Counter-based deterministic generator (splitmix64). One 64-bit seed
// drives every stream; independent streams are derived by mixing a
// stream id into the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id) {
    SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
    g.next_u64();
    return g;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Unbiased via multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    while (true) {
      std::uint64_t x = next_u64();
      __uint128_t m = static_cast<__uint128_t>(x) * n;
      std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= n || lo >= static_cast<std::uint64_t>(-n) % n) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() & 1u) != 0; }

 private:
  std::uint64_t state_;
};

// Compensated accumulator. Cumulative rerooting weights are sums of many
// small terms and the logarithmic bounds leave little slack.
class KahanSum {
 public:
  KahanSum() = default;
  explicit KahanSum(double v) : sum_(v) {}

  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative difference in log space, used for cost-equality assertions.
inline double rel_diff(double a, double b) {
  double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  return std::fabs(a - b) / scale;
}

// Rounds a bound value up by one ulp before comparing against an integer
// step count, so that exact-equality cases are never lost to rounding.
inline double ulp_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

}  // namespace rootlts
