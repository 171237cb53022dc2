#include "ghr/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghr/errors.hpp"

namespace ghr {

Quaternion inverse(const Quaternion& q) {
  const double n2 = modulus_squared(q);
  if (n2 == 0.0) {
    throw DomainError("zero quaternion has no inverse");
  }
  return conjugate(q) / n2;
}

Quaternion rotate(const Quaternion& q, const Quaternion& mu) {
  const double n2 = modulus_squared(mu);
  if (n2 == 0.0) {
    throw DomainError("rotation by the zero quaternion is undefined");
  }
  return (mu * q * conjugate(mu)) / n2;
}

Quaternion reflect(const Quaternion& q, const Quaternion& eta) {
  if (std::abs(eta.a) > kPurityTolerance || std::abs(modulus(eta) - 1.0) > kPurityTolerance) {
    throw DomainError("reflection requires a pure unit quaternion, got " + to_string(eta));
  }
  return eta * q * eta;
}

MuBasis mu_basis(const Quaternion& mu) {
  const double n2 = modulus_squared(mu);
  if (n2 == 0.0) {
    throw DomainError("mu-basis requires a nonzero mu");
  }
  const double a = mu.a;
  const double b = mu.b;
  const double c = mu.c;
  const double d = mu.d;
  const double s = 1.0 / n2;

  MuBasis basis;
  basis.mu = mu;
  basis.m = {{
      {{s * (a * a + b * b - c * c - d * d), s * (2 * a * d + 2 * b * c), s * (2 * b * d - 2 * a * c)}},
      {{s * (2 * b * c - 2 * a * d), s * (a * a + c * c - b * b - d * d), s * (2 * c * d + 2 * a * b)}},
      {{s * (2 * a * c + 2 * b * d), s * (2 * c * d - 2 * a * b), s * (a * a + d * d - b * b - c * c)}},
  }};
  basis.i_mu = rotate(kI, mu);
  basis.j_mu = rotate(kJ, mu);
  basis.k_mu = rotate(kK, mu);
  return basis;
}

PolarForm::PolarForm(double modulus, const Quaternion& axis, double angle)
    : modulus_(modulus), axis_(axis), angle_(angle) {
  if (!(modulus >= 0.0) || !std::isfinite(modulus)) {
    throw DomainError("polar modulus must be finite and nonnegative");
  }
  if (!(angle >= 0.0 && angle <= std::numbers::pi)) {
    throw DomainError("polar angle must lie in [0, pi]");
  }
  if (std::abs(axis.a) > kPurityTolerance || std::abs(ghr::modulus(axis) - 1.0) > kPurityTolerance) {
    throw DomainError("polar axis must be a pure unit quaternion, got " + to_string(axis));
  }
}

Quaternion PolarForm::reassemble() const {
  return modulus_ * (Quaternion(std::cos(angle_)) + axis_ * std::sin(angle_));
}

PolarForm polar(const Quaternion& q) {
  const double r = modulus(q);
  const Quaternion v = vector_part(q);
  const double v_norm = modulus(v);
  if (!(v_norm > 0.0)) {
    return PolarForm(r, kI, q.a < 0.0 ? std::numbers::pi : 0.0);
  }
  return PolarForm(r, v / v_norm, std::atan2(v_norm, q.a));
}

Components components_from_involutions(const Quaternion& q) {
  const auto [q1, qi, qj, qk] = involutions(q);
  // Pairwise sums keep every intermediate an exact multiple of a component.
  const Quaternion sa = (q1 + qi) + (qj + qk);
  const Quaternion sb = (q1 + qi) - (qj + qk);
  const Quaternion sc = (q1 + qj) - (qi + qk);
  const Quaternion sd = (q1 + qk) - (qi + qj);
  return {
      (0.25 * sa).a,
      (-0.25 * (kI * sb)).a,
      (-0.25 * (kJ * sc)).a,
      (-0.25 * (kK * sd)).a,
  };
}

ConjugateLinks conjugate_links(const Quaternion& q) {
  const auto [q1, qi, qj, qk] = involutions(q);
  return {
      0.5 * ((qi + qj) + (qk - q1)),
      0.5 * ((q1 + qj) + (qk - qi)),
      0.5 * ((q1 + qi) + (qk - qj)),
      0.5 * ((q1 + qi) + (qj - qk)),
  };
}

bool near(const Quaternion& p, const Quaternion& q, double abs_tol, double rel_tol) {
  const double diff = modulus(p - q);
  return diff <= abs_tol || diff <= rel_tol * std::max(modulus(p), modulus(q));
}

}  // namespace ghr
