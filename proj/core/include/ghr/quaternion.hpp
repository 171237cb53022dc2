#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ghr {

// q = a + b i + c j + d k with i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double real) : a(real) {}  // NOLINT(google-explicit-constructor)
  constexpr Quaternion(double a_, double b_, double c_, double d_)
      : a(a_), b(b_), c(c_), d(d_) {}

  constexpr Quaternion& operator+=(const Quaternion& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    a -= o.a;
    b -= o.b;
    c -= o.c;
    d -= o.d;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    a *= s;
    b *= s;
    c *= s;
    d *= s;
    return *this;
  }
};

inline constexpr Quaternion kOne{1.0, 0.0, 0.0, 0.0};
inline constexpr Quaternion kI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kK{0.0, 0.0, 0.0, 1.0};

// The real basis {1, i, j, k}, in component order.
inline constexpr std::array<Quaternion, 4> kBasis{kOne, kI, kJ, kK};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.a, -q.b, -q.c, -q.d}; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator/(const Quaternion& q, double s) {
  return {q.a / s, q.b / s, q.c / s, q.d / s};
}

// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
          p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
          p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
          p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

constexpr Quaternion multiply(const Quaternion& p, const Quaternion& q) { return p * q; }

constexpr Quaternion conjugate(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

constexpr double modulus_squared(const Quaternion& q) {
  return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}

inline double modulus(const Quaternion& q) { return std::sqrt(modulus_squared(q)); }

constexpr Quaternion real_part(const Quaternion& q) { return {q.a, 0.0, 0.0, 0.0}; }
constexpr Quaternion vector_part(const Quaternion& q) { return {0.0, q.b, q.c, q.d}; }

inline bool is_finite(const Quaternion& q) {
  return std::isfinite(q.a) && std::isfinite(q.b) && std::isfinite(q.c) && std::isfinite(q.d);
}

// Throws DomainError for q = 0.
Quaternion inverse(const Quaternion& q);

// mu q mu^-1, evaluated as mu q mu* / |mu|^2. Throws DomainError for mu = 0.
Quaternion rotate(const Quaternion& q, const Quaternion& mu);

enum class Axis { i, j, k };

constexpr Quaternion unit(Axis axis) {
  switch (axis) {
    case Axis::i:
      return kI;
    case Axis::j:
      return kJ;
    case Axis::k:
      return kK;
  }
  return kOne;
}

// Rotation by pi about i, j or k: q^i = -i q i, and so on.
constexpr Quaternion involution(const Quaternion& q, Axis axis) {
  switch (axis) {
    case Axis::i:
      return {q.a, q.b, -q.c, -q.d};
    case Axis::j:
      return {q.a, -q.b, q.c, -q.d};
    case Axis::k:
      return {q.a, -q.b, -q.c, q.d};
  }
  return q;
}

// {q, q^i, q^j, q^k}.
constexpr std::array<Quaternion, 4> involutions(const Quaternion& q) {
  return {q, involution(q, Axis::i), involution(q, Axis::j), involution(q, Axis::k)};
}

// eta q eta for a pure unit eta. Throws DomainError otherwise.
Quaternion reflect(const Quaternion& q, const Quaternion& eta);

// Tolerance used when a quaternion must be pure and/or unit.
inline constexpr double kPurityTolerance = 1e-9;

struct MuBasis {
  Quaternion mu;
  Quaternion i_mu;
  Quaternion j_mu;
  Quaternion k_mu;
  // Row r holds the (i, j, k) coordinates of the r-th rotated unit.
  std::array<std::array<double, 3>, 3> m{};
};

MuBasis mu_basis(const Quaternion& mu);

class PolarForm {
 public:
  // Validates modulus >= 0, angle in [0, pi] and a pure unit axis.
  PolarForm(double modulus, const Quaternion& axis, double angle);

  double modulus() const { return modulus_; }
  const Quaternion& axis() const { return axis_; }
  double angle() const { return angle_; }

  Quaternion reassemble() const;

 private:
  double modulus_;
  Quaternion axis_;
  double angle_;
};

// Real inputs get angle 0 (pi when negative) and axis i.
PolarForm polar(const Quaternion& q);

struct Components {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

// Recovers the real components from {q, q^i, q^j, q^k}.
Components components_from_involutions(const Quaternion& q);

struct ConjugateLinks {
  Quaternion conj;    // q*
  Quaternion conj_i;  // q^{i*}
  Quaternion conj_j;  // q^{j*}
  Quaternion conj_k;  // q^{k*}
};

// Conjugate involutions expressed through {q, q^i, q^j, q^k}.
ConjugateLinks conjugate_links(const Quaternion& q);

// True when |p - q| <= abs_tol or |p - q| <= rel_tol * max(|p|, |q|).
bool near(const Quaternion& p, const Quaternion& q, double abs_tol = 1e-12,
          double rel_tol = 1e-10);

// "a+bi+cj+dk" with 17 significant digits per component.
std::string to_string(const Quaternion& q);

// Accepts any subset of the four terms in any order, e.g. "1-2.5j", "-k", "3e-2+i".
// Throws ParseError on malformed text.
Quaternion parse_quaternion(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace ghr
