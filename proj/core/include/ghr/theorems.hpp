#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ghr/derivative.hpp"
#include "ghr/quaternion.hpp"
#include "ghr/random.hpp"
#include "ghr/table.hpp"

namespace ghr {

inline constexpr int kDefaultPanels = 1000;

struct SegmentCheck {
  Quaternion q0;
  Quaternion q1;
  Quaternion lambda;
  int quadrature_panels = 0;
  Quaternion lhs;
  Quaternion rhs;
  double residual = 0.0;
};

// sum over eta in {1, i, j, k} of df(q)/dq^eta lambda^eta, from left HR derivatives.
Quaternion mvt_integrand(const QFunction& f, const Quaternion& q, const Quaternion& lambda,
                         double h = kFirstOrderStep);

// 4 R(df(q)/dq lambda) for real-valued f.
double mvt_integrand_real(const QFunction& f, const Quaternion& q, const Quaternion& lambda,
                          double h = kFirstOrderStep);

// Composite Simpson quadrature of the mean-value integrand over t in [0, 1].
// panels must be even and >= 2. Evaluation failures surface as SegmentError.
SegmentCheck mvt_left(const QFunction& f, const Quaternion& q0, const Quaternion& q1,
                      int panels = kDefaultPanels, double h = kFirstOrderStep);

// Same quadrature with the real-valued integrand 4 R(df/dq lambda).
SegmentCheck mvt_left_real(const QFunction& f, const Quaternion& q0, const Quaternion& q1,
                           int panels = kDefaultPanels, double h = kFirstOrderStep);

struct ErrorBound {
  double observed = 0.0;  // |f(q1) - f(q0) - first-order increment at q0|
  double bound = 0.0;     // 2 L |lambda|^2
};

// lipschitz bounds every left HR derivative's Lipschitz constant on the segment.
ErrorBound mvt_error_bound_check(const QFunction& f, const Quaternion& q0, const Quaternion& q1,
                                 double lipschitz, double h = kFirstOrderStep);

// f(q0) + sum_mu df/dq^mu lambda^mu + 1/2 sum_{mu,nu} d2f/dq^nu dq^mu lambda^nu lambda^mu.
Quaternion taylor2_left(const QFunction& f, const Quaternion& q0, const Quaternion& lambda,
                        double h = kFirstOrderStep, double h2 = kSecondOrderStep);

// Second-order expansion with the quadratic term
// 1/2 sum_{mu,nu} lambda^{mu*} d2f/dq^nu dq^{mu*} lambda^nu, for real-valued f.
Quaternion taylor2_center(const QFunction& f, const Quaternion& q0, const Quaternion& lambda,
                          double h = kFirstOrderStep, double h2 = kSecondOrderStep);

// f(q0) + sum_mu df/dq^mu lambda^mu.
Quaternion taylor1_left(const QFunction& f, const Quaternion& q0, const Quaternion& lambda,
                        double h = kFirstOrderStep);

struct TaylorFit {
  Quaternion base_point;
  Quaternion direction;
  std::vector<double> scales;
  std::vector<double> errors;
  std::vector<double> noise_floors;
  std::vector<bool> floored;
  // Least-squares log-log slope over the unfloored scales; empty when fewer than two remain.
  std::optional<double> slope;

  bool exact_to_floor() const { return !slope.has_value(); }
};

// Expansion error |f(q0 + s d) - taylor2_left(f, q0, s d)| at each scale s. Errors at or
// below the estimated finite-difference noise are reported as floored and excluded from
// the fit. Requires >= 4 strictly decreasing positive scales spanning >= 2 decades.
TaylorFit taylor_remainder_slope(const QFunction& f, const Quaternion& q0,
                                 const Quaternion& direction, const std::vector<double>& scales);

// n geometric scales from `largest` down to `smallest`.
std::vector<double> geometric_scales(double largest, double smallest, int n);

struct DescentTrace {
  std::vector<Quaternion> iterates;
  std::vector<double> values;
  std::vector<double> grad_norms;
  double step = 0.0;
  bool converged = false;
};

// Returns df/dq* at q.
using GradientFn = std::function<Quaternion(const Quaternion&)>;

struct DescentOptions {
  double alpha = 0.4;
  int max_iters = 100;
  double grad_tol = 1e-8;
  int divergence_window = 10;
};

// q_{k+1} = q_k - alpha df(q_k)/dq*, stopping when |df/dq*| < grad_tol or after max_iters
// steps. Throws DivergenceError after divergence_window consecutive value increases.
DescentTrace steepest_descent(const QFunction& f, const Quaternion& q_init,
                              const DescentOptions& options, const GradientFn& gradient = {});

// Uses the table's closed-form d/dq* for the objective.
DescentTrace steepest_descent(const TableEntry& objective, const Quaternion& q_init,
                              const DescentOptions& options);

struct DirectionCheck {
  double optimal_value = 0.0;  // R(df/dq d) at d = -(df/dq)*/|df/dq|
  double min_sampled = 0.0;    // smallest R(df/dq d) over the sampled unit directions
  std::size_t samples = 0;
  bool optimal() const { return min_sampled >= optimal_value - 1e-12; }
};

// Compares the steepest-descent direction against random unit directions.
DirectionCheck steepest_direction_check(const QFunction& f, const Quaternion& q, Rng& rng,
                                        std::size_t samples = 1000, double h = kFirstOrderStep);

}  // namespace ghr
