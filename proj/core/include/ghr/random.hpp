#pragma once

#include <cstdint>
#include <limits>

#include "ghr/quaternion.hpp"

namespace ghr {

// Splittable counter-based generator.
//
// A stream is a 64-bit key. Draw n (n = 1, 2, ...) is mix(key + n * G) where
// G = 0x9E3779B97F4A7C15 and mix is the SplitMix64 finalizer
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31.
// The root stream of seed s has key s, so it reproduces the SplitMix64 sequence.
// split(label) yields the stream with key mix(key ^ ((label + 1) * 0xD1B54A32D192ED03)),
// independent of how many draws the parent has made.
//
// uniform() = (draw >> 11) * 2^-53. normal() uses Box-Muller on two uniforms
// (u1 = 1 - uniform(), u2 = uniform()) and returns sqrt(-2 ln u1) cos(2 pi u2)
// followed by the paired sine value.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  Rng split(std::uint64_t label) const;

  double uniform();
  double uniform(double lo, double hi);
  double normal();

  // Components independently uniform in [lo, hi].
  Quaternion uniform_quaternion(double lo, double hi);
  // Components independently N(0, sigma^2).
  Quaternion gaussian_quaternion(double sigma);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t z);

// Test-point sampler: components uniform in [-2, 2], rejecting |q| < min_modulus.
Quaternion random_point(Rng& rng, double min_modulus = 0.1);

// Uniformly distributed on the unit 3-sphere.
Quaternion random_unit(Rng& rng);

}  // namespace ghr
