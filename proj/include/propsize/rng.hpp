#ifndef PROPSIZE_RNG_HPP
#define PROPSIZE_RNG_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace propsize {

// Deterministic 64-bit generator with independent streams: the sequence
// depends only on (seed, stream), never on platform or call history.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(mix(seed) ^ mix(stream ^ 0x9E3779B97F4A7C15ull))) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Uniform integer in [0, bound); rejection keeps it exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t min = (-bound) % bound;
    std::uint64_t r;
    do {
      r = next();
    } while (r < min);
    return r % bound;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

 private:
  std::uint64_t state_;
};

// Draws uniform n-subsets of a population with M marked items and reports
// how many marked items were hit, via a partial Fisher-Yates shuffle.
class SubsetSampler {
 public:
  explicit SubsetSampler(std::int64_t N, std::int64_t M) : N_(N), M_(M) {}

  std::int64_t draw(Rng& rng, std::int64_t n) {
    perm_.resize(static_cast<std::size_t>(N_));
    std::iota(perm_.begin(), perm_.end(), std::int64_t{0});
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t j =
          i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(N_ - i)));
      std::swap(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(j)]);
      if (perm_[static_cast<std::size_t>(i)] < M_) ++hits;
    }
    return hits;
  }

 private:
  std::int64_t N_, M_;
  std::vector<std::int64_t> perm_;
};

}  // namespace propsize

#endif
