#include "ghr/random.hpp"

#include <cmath>
#include <numbers>

namespace ghr {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSplit = 0xD1B54A32D192ED03ULL;

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

Rng Rng::split(std::uint64_t label) const { return Rng(mix64(key_ ^ ((label + 1) * kSplit))); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Quaternion Rng::uniform_quaternion(double lo, double hi) {
  const double a = uniform(lo, hi);
  const double b = uniform(lo, hi);
  const double c = uniform(lo, hi);
  const double d = uniform(lo, hi);
  return {a, b, c, d};
}

Quaternion Rng::gaussian_quaternion(double sigma) {
  const double a = normal();
  const double b = normal();
  const double c = normal();
  const double d = normal();
  return sigma * Quaternion(a, b, c, d);
}

Quaternion random_point(Rng& rng, double min_modulus) {
  while (true) {
    const Quaternion q = rng.uniform_quaternion(-2.0, 2.0);
    if (modulus(q) >= min_modulus) {
      return q;
    }
  }
}

Quaternion random_unit(Rng& rng) {
  while (true) {
    const Quaternion q = rng.gaussian_quaternion(1.0);
    const double n = modulus(q);
    if (n > 1e-6) {
      return q / n;
    }
  }
}

}  // namespace ghr
