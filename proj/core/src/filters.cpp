#include "ghr/filters.hpp"

#include <cmath>
#include <utility>

#include "ghr/errors.hpp"

namespace ghr {
namespace {

void check_lengths(const FilterState& state, const QVector& x) {
  if (x.size() != state.taps()) {
    throw ConfigError("regressor length " + std::to_string(x.size()) +
                      " does not match tap count " + std::to_string(state.taps()));
  }
}

void check_pair(const QVector& w, const QVector& x) {
  if (w.size() != x.size()) {
    throw ConfigError("vector lengths differ: " + std::to_string(w.size()) + " vs " +
                      std::to_string(x.size()));
  }
}

// w_m += alpha * (left * r_m*) for each tap.
void right_update(QVector& w, double alpha, const Quaternion& left, const QVector& r) {
  for (std::size_t m = 0; m < w.size(); ++m) {
    w[m] += alpha * (left * conjugate(r[m]));
  }
}

// w_m += alpha * (r_m * right) for each tap.
void left_update(QVector& w, double alpha, const QVector& r, const Quaternion& right) {
  for (std::size_t m = 0; m < w.size(); ++m) {
    w[m] += alpha * (r[m] * right);
  }
}

}  // namespace

Quaternion transpose_product(const QVector& w, const QVector& x) {
  check_pair(w, x);
  Quaternion sum;
  for (std::size_t m = 0; m < w.size(); ++m) {
    sum += w[m] * x[m];
  }
  return sum;
}

Quaternion hermitian_product(const QVector& w, const QVector& x) {
  check_pair(w, x);
  Quaternion sum;
  for (std::size_t m = 0; m < w.size(); ++m) {
    sum += conjugate(w[m]) * x[m];
  }
  return sum;
}

QVector involution(const QVector& x, Axis axis) {
  QVector out(x.size());
  for (std::size_t m = 0; m < x.size(); ++m) {
    out[m] = involution(x[m], axis);
  }
  return out;
}

QVector conjugate(const QVector& x) {
  QVector out(x.size());
  for (std::size_t m = 0; m < x.size(); ++m) {
    out[m] = conjugate(x[m]);
  }
  return out;
}

double norm(const QVector& x) {
  double sum = 0.0;
  for (const Quaternion& q : x) {
    sum += modulus_squared(q);
  }
  return std::sqrt(sum);
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::QLMS:
      return "qlms";
    case Variant::WLQLMS:
      return "wl_qlms";
    case Variant::QNGD:
      return "qngd";
  }
  return "unknown";
}

std::optional<Variant> variant_from_name(const std::string& name) {
  if (name == "qlms") return Variant::QLMS;
  if (name == "wl_qlms" || name == "wlqlms") return Variant::WLQLMS;
  if (name == "qngd") return Variant::QNGD;
  return std::nullopt;
}

Nonlinearity identity_nonlinearity() {
  return {"identity", [](const Quaternion& s) { return s; },
          [](const Quaternion&) {
            return std::array<Quaternion, 4>{kOne, Quaternion(), Quaternion(), Quaternion()};
          }};
}

Nonlinearity numerical_nonlinearity(std::string name, QFunction phi, double h) {
  auto factors = [phi, h](const Quaternion& s) {
    std::array<Quaternion, 4> out;
    out[0] = left_hr([&](const Quaternion& p) { return conjugate(phi(p)); }, s, h).wrt_qc;
    const Axis axes[3] = {Axis::i, Axis::j, Axis::k};
    for (int k = 0; k < 3; ++k) {
      const Axis axis = axes[k];
      out[static_cast<std::size_t>(k) + 1] =
          left_hr([&](const Quaternion& p) { return conjugate(involution(phi(p), axis)); }, s, h)
              .wrt_qc;
    }
    return out;
  };
  return {std::move(name), std::move(phi), std::move(factors)};
}

Nonlinearity componentwise_tanh() {
  return numerical_nonlinearity("tanh", [](const Quaternion& s) {
    return Quaternion(std::tanh(s.a), std::tanh(s.b), std::tanh(s.c), std::tanh(s.d));
  });
}

std::optional<Nonlinearity> nonlinearity_from_name(const std::string& name) {
  if (name == "identity") return identity_nonlinearity();
  if (name == "tanh") return componentwise_tanh();
  return std::nullopt;
}

std::size_t FilterState::taps() const { return variant == Variant::WLQLMS ? h.size() : w.size(); }

FilterState make_filter(Variant variant, std::size_t taps, double alpha,
                        std::optional<Nonlinearity> nonlinearity) {
  if (taps == 0) {
    throw ConfigError("filter needs at least one tap");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("step size must be finite and nonnegative");
  }
  FilterState state;
  state.variant = variant;
  state.alpha = alpha;
  if (variant == Variant::WLQLMS) {
    state.h.assign(taps, Quaternion());
    state.g.assign(taps, Quaternion());
    state.u.assign(taps, Quaternion());
    state.v.assign(taps, Quaternion());
  } else {
    state.w.assign(taps, Quaternion());
  }
  if (variant == Variant::QNGD) {
    if (!nonlinearity || !nonlinearity->phi || !nonlinearity->conj_factors) {
      throw ConfigError("QNGD requires a nonlinearity with a derivative provider");
    }
    state.nonlinearity = std::move(nonlinearity);
  }
  return state;
}

Quaternion qlms_step(FilterState& state, const QVector& x, const Quaternion& d) {
  check_lengths(state, x);
  const Quaternion e = d - transpose_product(state.w, x);
  right_update(state.w, state.alpha, e, x);
  ++state.iteration;
  return e;
}

Quaternion wl_qlms_step(FilterState& state, const QVector& x, const Quaternion& d) {
  check_lengths(state, x);
  const QVector xi = involution(x, Axis::i);
  const QVector xj = involution(x, Axis::j);
  const QVector xk = involution(x, Axis::k);
  const Quaternion y = hermitian_product(state.h, x) + hermitian_product(state.g, xi) +
                       hermitian_product(state.u, xj) + hermitian_product(state.v, xk);
  const Quaternion e = d - y;
  const Quaternion ec = conjugate(e);
  left_update(state.h, state.alpha, x, ec);
  left_update(state.g, state.alpha, xi, ec);
  left_update(state.u, state.alpha, xj, ec);
  left_update(state.v, state.alpha, xk, ec);
  ++state.iteration;
  return e;
}

Quaternion qngd_step(FilterState& state, const QVector& x, const Quaternion& d) {
  check_lengths(state, x);
  if (!state.nonlinearity) {
    throw ConfigError("QNGD step requires a nonlinearity");
  }
  const Nonlinearity& phi = *state.nonlinearity;
  const Quaternion s = transpose_product(state.w, x);
  const Quaternion y = phi.phi(s);
  if (!is_finite(y)) {
    throw EvaluationError("nonlinearity returned a non-finite value", s);
  }
  const Quaternion e = d - y;
  const std::array<Quaternion, 4> factors = phi.conj_factors(s);
  const std::array<Quaternion, 4> e_inv = involutions(e);
  Quaternion gradient_left;
  for (std::size_t k = 0; k < 4; ++k) {
    gradient_left += e_inv[k] * factors[k];
  }
  right_update(state.w, state.alpha, gradient_left, x);
  ++state.iteration;
  return e;
}

Quaternion filter_step(FilterState& state, const QVector& x, const Quaternion& d) {
  switch (state.variant) {
    case Variant::QLMS:
      return qlms_step(state, x, d);
    case Variant::WLQLMS:
      return wl_qlms_step(state, x, d);
    case Variant::QNGD:
      return qngd_step(state, x, d);
  }
  throw ConfigError("unknown filter variant");
}

}  // namespace ghr
