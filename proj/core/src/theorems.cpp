#include "ghr/theorems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ghr/errors.hpp"

namespace ghr {
namespace {

using Hessian = std::array<std::array<Quaternion, 4>, 4>;

// H[nu][mu] = d/dq^nu of the inner derivative selected by `inner` (index mu).
// One nested stencil serves all sixteen entries.
template <typename InnerSelector>
Hessian nested_hr(const QFunction& f, const Quaternion& q0, double h2, InnerSelector inner) {
  std::array<RealPartials, 4> outer{};
  double Quaternion::*coords[4] = {&Quaternion::a, &Quaternion::b, &Quaternion::c, &Quaternion::d};
  for (int axis = 0; axis < 4; ++axis) {
    Quaternion plus = q0;
    Quaternion minus = q0;
    plus.*coords[axis] += h2;
    minus.*coords[axis] -= h2;
    const double spacing = plus.*coords[axis] - minus.*coords[axis];
    const std::array<Quaternion, 4> hi = inner(left_hr(f, plus, h2));
    const std::array<Quaternion, 4> lo = inner(left_hr(f, minus, h2));
    for (int mu = 0; mu < 4; ++mu) {
      const Quaternion diff = (hi[mu] - lo[mu]) / spacing;
      switch (axis) {
        case 0:
          outer[mu].d_qa = diff;
          break;
        case 1:
          outer[mu].d_qb = diff;
          break;
        case 2:
          outer[mu].d_qc = diff;
          break;
        default:
          outer[mu].d_qd = diff;
          break;
      }
    }
  }
  Hessian h{};
  for (int mu = 0; mu < 4; ++mu) {
    outer[mu].point = q0;
    outer[mu].step = h2;
    const std::array<Quaternion, 4> by_nu = left_hr(outer[mu]).plain();
    for (int nu = 0; nu < 4; ++nu) {
      h[nu][mu] = by_nu[nu];
    }
  }
  return h;
}

Quaternion checked_eval(const QFunction& f, const Quaternion& p) {
  Quaternion v;
  try {
    v = f(p);
  } catch (const DomainError& e) {
    throw EvaluationError(e.what(), p);
  }
  if (!is_finite(v)) {
    throw EvaluationError("non-finite function value", p);
  }
  return v;
}

template <typename Integrand>
SegmentCheck simpson(const QFunction& f, const Quaternion& q0, const Quaternion& q1, int panels,
                     Integrand integrand) {
  if (panels < 2 || panels % 2 != 0) {
    throw ConfigError("quadrature panels must be even and at least 2");
  }
  SegmentCheck check;
  check.q0 = q0;
  check.q1 = q1;
  check.lambda = q1 - q0;
  check.quadrature_panels = panels;

  const double dt = 1.0 / panels;
  Quaternion sum;
  for (int k = 0; k <= panels; ++k) {
    const double t = k == panels ? 1.0 : k * dt;
    const double weight = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    try {
      const Quaternion node = q0 + t * check.lambda;
      checked_eval(f, node);
      sum += weight * integrand(node);
    } catch (const EvaluationError& e) {
      throw SegmentError(e, t);
    }
  }
  check.rhs = (dt / 3.0) * sum;
  Quaternion f0;
  Quaternion f1;
  try {
    f0 = checked_eval(f, q0);
  } catch (const EvaluationError& e) {
    throw SegmentError(e, 0.0);
  }
  try {
    f1 = checked_eval(f, q1);
  } catch (const EvaluationError& e) {
    throw SegmentError(e, 1.0);
  }
  check.lhs = f1 - f0;
  check.residual = modulus(check.lhs - check.rhs);
  return check;
}

}  // namespace

Quaternion mvt_integrand(const QFunction& f, const Quaternion& q, const Quaternion& lambda,
                         double h) {
  const std::array<Quaternion, 4> d = left_hr(f, q, h).plain();
  const std::array<Quaternion, 4> l = involutions(lambda);
  return d[0] * l[0] + d[1] * l[1] + d[2] * l[2] + d[3] * l[3];
}

double mvt_integrand_real(const QFunction& f, const Quaternion& q, const Quaternion& lambda,
                          double h) {
  return 4.0 * (left_hr(f, q, h).wrt_q * lambda).a;
}

SegmentCheck mvt_left(const QFunction& f, const Quaternion& q0, const Quaternion& q1, int panels,
                      double h) {
  const Quaternion lambda = q1 - q0;
  return simpson(f, q0, q1, panels,
                 [&](const Quaternion& q) { return mvt_integrand(f, q, lambda, h); });
}

SegmentCheck mvt_left_real(const QFunction& f, const Quaternion& q0, const Quaternion& q1,
                           int panels, double h) {
  const Quaternion lambda = q1 - q0;
  return simpson(f, q0, q1, panels, [&](const Quaternion& q) {
    return Quaternion(mvt_integrand_real(f, q, lambda, h));
  });
}

ErrorBound mvt_error_bound_check(const QFunction& f, const Quaternion& q0, const Quaternion& q1,
                                 double lipschitz, double h) {
  const Quaternion lambda = q1 - q0;
  const Quaternion increment = mvt_integrand(f, q0, lambda, h);
  ErrorBound out;
  out.observed = modulus(checked_eval(f, q1) - checked_eval(f, q0) - increment);
  out.bound = 2.0 * lipschitz * modulus_squared(lambda);
  return out;
}

Quaternion taylor1_left(const QFunction& f, const Quaternion& q0, const Quaternion& lambda,
                        double h) {
  return checked_eval(f, q0) + mvt_integrand(f, q0, lambda, h);
}

Quaternion taylor2_left(const QFunction& f, const Quaternion& q0, const Quaternion& lambda,
                        double h, double h2) {
  const Hessian hess =
      nested_hr(f, q0, h2, [](const DerivativeSet& s) { return s.plain(); });
  const std::array<Quaternion, 4> l = involutions(lambda);
  Quaternion second;
  for (int nu = 0; nu < 4; ++nu) {
    for (int mu = 0; mu < 4; ++mu) {
      second += hess[nu][mu] * l[nu] * l[mu];
    }
  }
  return taylor1_left(f, q0, lambda, h) + 0.5 * second;
}

Quaternion taylor2_center(const QFunction& f, const Quaternion& q0, const Quaternion& lambda,
                          double h, double h2) {
  const Hessian hess =
      nested_hr(f, q0, h2, [](const DerivativeSet& s) { return s.conjugates(); });
  const std::array<Quaternion, 4> l = involutions(lambda);
  Quaternion second;
  for (int nu = 0; nu < 4; ++nu) {
    for (int mu = 0; mu < 4; ++mu) {
      second += conjugate(l[mu]) * hess[nu][mu] * l[nu];
    }
  }
  return taylor1_left(f, q0, lambda, h) + 0.5 * second;
}

std::vector<double> geometric_scales(double largest, double smallest, int n) {
  if (n < 2 || !(largest > smallest) || !(smallest > 0.0)) {
    throw ConfigError("geometric scales need n >= 2 and largest > smallest > 0");
  }
  std::vector<double> scales(static_cast<std::size_t>(n));
  const double ratio = std::log(smallest / largest) / (n - 1);
  for (int k = 0; k < n; ++k) {
    scales[static_cast<std::size_t>(k)] = largest * std::exp(ratio * k);
  }
  scales.back() = smallest;
  return scales;
}

TaylorFit taylor_remainder_slope(const QFunction& f, const Quaternion& q0,
                                 const Quaternion& direction, const std::vector<double>& scales) {
  if (scales.size() < 4) {
    throw ConfigError("remainder fit needs at least 4 scales");
  }
  for (std::size_t k = 0; k < scales.size(); ++k) {
    if (!(scales[k] > 0.0) || (k > 0 && !(scales[k] < scales[k - 1]))) {
      throw ConfigError("remainder scales must be positive and strictly decreasing");
    }
  }
  if (scales.front() / scales.back() < 100.0) {
    throw ConfigError("remainder scales must span at least two decades");
  }
  if (modulus_squared(direction) == 0.0) {
    throw ConfigError("remainder direction must be nonzero");
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double h = kFirstOrderStep;
  const double h2 = kSecondOrderStep;
  const Quaternion f0 = checked_eval(f, q0);
  const double dir = modulus(direction);

  TaylorFit fit;
  fit.base_point = q0;
  fit.direction = direction;
  fit.scales = scales;
  std::vector<double> xs;
  std::vector<double> ys;
  for (double s : scales) {
    const Quaternion lambda = s * direction;
    const Quaternion exact = checked_eval(f, q0 + lambda);
    const double error = modulus(exact - taylor2_left(f, q0, lambda, h, h2));
    // Rounding in the function values, amplified by the first- and second-order stencils.
    const double magnitude = 1.0 + modulus(f0) + modulus(exact);
    const double step = s * dir;
    const double floor = 4.0 * eps * magnitude * (1.0 + 4.0 * step / h + 8.0 * (step / h2) * (step / h2));
    const bool floored = error <= floor;
    fit.errors.push_back(error);
    fit.noise_floors.push_back(floor);
    fit.floored.push_back(floored);
    if (!floored) {
      xs.push_back(std::log(s));
      ys.push_back(std::log(error));
    }
  }
  if (xs.size() >= 2) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      mx += xs[k];
      my += ys[k];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    fit.slope = sxy / sxx;
  }
  return fit;
}

DescentTrace steepest_descent(const QFunction& f, const Quaternion& q_init,
                              const DescentOptions& options, const GradientFn& gradient) {
  if (!(options.alpha > 0.0) || !std::isfinite(options.alpha)) {
    throw ConfigError("descent step size must be positive and finite");
  }
  if (options.max_iters < 0) {
    throw ConfigError("descent iteration limit must be nonnegative");
  }
  if (!(options.grad_tol >= 0.0)) {
    throw ConfigError("descent gradient tolerance must be nonnegative");
  }
  if (!is_real_valued(f, q_init)) {
    throw DomainError("steepest descent requires a real-valued objective");
  }
  const GradientFn grad = gradient ? gradient : GradientFn([&f](const Quaternion& q) {
    return left_hr(f, q).wrt_qc;
  });

  DescentTrace trace;
  trace.step = options.alpha;
  Quaternion q = q_init;
  int increases = 0;
  for (int iter = 0;; ++iter) {
    const double value = checked_eval(f, q).a;
    const Quaternion g = grad(q);
    const double gn = modulus(g);
    if (!std::isfinite(value) || !is_finite(g)) {
      throw DivergenceError("descent produced a non-finite iterate", static_cast<std::size_t>(iter));
    }
    if (!trace.values.empty()) {
      increases = value > trace.values.back() ? increases + 1 : 0;
    }
    trace.iterates.push_back(q);
    trace.values.push_back(value);
    trace.grad_norms.push_back(gn);
    if (increases >= options.divergence_window) {
      throw DivergenceError("step size too large: objective increased for " +
                                std::to_string(increases) + " consecutive iterations",
                            static_cast<std::size_t>(iter));
    }
    if (gn < options.grad_tol) {
      trace.converged = true;
      break;
    }
    if (iter == options.max_iters) {
      break;
    }
    q = q - options.alpha * g;
  }
  return trace;
}

DescentTrace steepest_descent(const TableEntry& objective, const Quaternion& q_init,
                              const DescentOptions& options) {
  if (!objective.real_valued()) {
    throw DomainError("steepest descent requires a real-valued objective, got " +
                      objective.label());
  }
  return steepest_descent(objective.function(), q_init, options, [&objective](const Quaternion& q) {
    return derivative(objective, q, kOne).d_mu_conj_times_mu;
  });
}

DirectionCheck steepest_direction_check(const QFunction& f, const Quaternion& q, Rng& rng,
                                        std::size_t samples, double h) {
  const Quaternion grad = left_hr(f, q, h).wrt_q;
  const double gn = modulus(grad);
  DirectionCheck check;
  check.samples = samples;
  check.optimal_value = gn > 0.0 ? (grad * (-conjugate(grad) / gn)).a : 0.0;
  check.min_sampled = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const Quaternion d = random_unit(rng);
    check.min_sampled = std::min(check.min_sampled, (grad * d).a);
  }
  return check;
}

}  // namespace ghr
