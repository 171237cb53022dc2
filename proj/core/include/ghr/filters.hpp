#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ghr/derivative.hpp"
#include "ghr/quaternion.hpp"

namespace ghr {

using QVector = std::vector<Quaternion>;

// sum_m w_m x_m
Quaternion transpose_product(const QVector& w, const QVector& x);
// sum_m w_m* x_m
Quaternion hermitian_product(const QVector& w, const QVector& x);
QVector involution(const QVector& x, Axis axis);
QVector conjugate(const QVector& x);
// sqrt(sum_m |x_m|^2)
double norm(const QVector& x);

enum class Variant { QLMS, WLQLMS, QNGD };

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

// An output nonlinearity together with the four factors dPhi^{mu*}/ds* (mu = 1, i, j, k)
// used by the nonlinear gradient update, where Phi^{mu*} = (Phi^mu)*.
struct Nonlinearity {
  std::string name;
  QFunction phi;
  std::function<std::array<Quaternion, 4>(const Quaternion&)> conj_factors;
};

// Phi(s) = s with closed-form factors {1, 0, 0, 0}.
Nonlinearity identity_nonlinearity();
// tanh applied to each real component; factors from numerical GHR derivatives.
Nonlinearity componentwise_tanh();
// Any Phi, with factors from numerical GHR derivatives at step h.
Nonlinearity numerical_nonlinearity(std::string name, QFunction phi, double h = kFirstOrderStep);
// "identity" or "tanh".
std::optional<Nonlinearity> nonlinearity_from_name(const std::string& name);

struct FilterState {
  Variant variant = Variant::QLMS;
  double alpha = 0.0;
  QVector w;  // QLMS and QNGD
  QVector h;  // WL-QLMS: regressor x
  QVector g;  //          x^i
  QVector u;  //          x^j
  QVector v;  //          x^k
  std::optional<Nonlinearity> nonlinearity;
  std::size_t iteration = 0;

  std::size_t taps() const;
};

// Zero-initialised weights. Throws ConfigError for taps = 0, negative or non-finite alpha,
// or a QNGD filter without a nonlinearity.
FilterState make_filter(Variant variant, std::size_t taps, double alpha,
                        std::optional<Nonlinearity> nonlinearity = std::nullopt);

// e = d - w^T x; w_m += alpha e x_m*. Returns e.
Quaternion qlms_step(FilterState& state, const QVector& x, const Quaternion& d);

// e = d - (h^H x + g^H x^i + u^H x^j + v^H x^k); each weight vector moves along its
// regressor times e*. Returns e.
Quaternion wl_qlms_step(FilterState& state, const QVector& x, const Quaternion& d);

// s = w^T x; e = d - Phi(s); w_m += alpha (sum_mu e^mu dPhi^{mu*}/ds*) x_m*. Returns e.
Quaternion qngd_step(FilterState& state, const QVector& x, const Quaternion& d);

// Dispatches on state.variant.
Quaternion filter_step(FilterState& state, const QVector& x, const Quaternion& d);

}  // namespace ghr
