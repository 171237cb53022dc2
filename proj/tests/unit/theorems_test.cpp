#include <cmath>

#include <gtest/gtest.h>

#include "ghr/errors.hpp"
#include "ghr/table.hpp"
#include "ghr/theorems.hpp"
#include "support.hpp"

namespace ghr {
namespace {

const QFunction kSquare = [](const Quaternion& q) { return q * q; };
const QFunction kNormSq = [](const Quaternion& q) { return Quaternion(modulus_squared(q)); };
const Quaternion kQ0(0.3, -0.2, 0.5, 0.1);
const Quaternion kQ1(0.8, 0.4, -0.3, 0.6);

TEST(MeanValue, SimpsonResidualSmall) {
  for (const QFunction& f : {kSquare, kNormSq, TableEntry::exponential().function()}) {
    const SegmentCheck check = mvt_left(f, kQ0, kQ1);
    EXPECT_LT(check.residual, 1e-7);
    EXPECT_EQ(check.quadrature_panels, kDefaultPanels);
    EXPECT_QUAT_NEAR(check.lambda, kQ1 - kQ0, 1e-15);
  }
}

TEST(MeanValue, RefinementConvergesUntilFloor) {
  const QFunction f = TableEntry::exponential().function();
  double previous = mvt_left(f, kQ0, kQ1, 2).residual;
  for (int panels : {8, 32, 128}) {
    const double r = mvt_left(f, kQ0, kQ1, panels).residual;
    if (previous > 1e-10) {
      EXPECT_GE(previous / r, 10.0) << panels;
    }
    previous = r;
  }
}

TEST(MeanValue, RealFormAgreesPointwise) {
  Rng rng(41);
  for (int n = 0; n < 50; ++n) {
    const Quaternion q = random_point(rng);
    const Quaternion lambda = random_point(rng);
    for (const QFunction& f : {kNormSq, TableEntry(Family::Modulus).function()}) {
      EXPECT_QUAT_NEAR(mvt_integrand(f, q, lambda), mvt_integrand_real(f, q, lambda), 1e-8);
    }
  }
  EXPECT_LT(mvt_left_real(kNormSq, kQ0, kQ1).residual, 1e-7);
}

TEST(MeanValue, PanelValidation) {
  EXPECT_THROW(mvt_left(kSquare, kQ0, kQ1, 3), ConfigError);
  EXPECT_THROW(mvt_left(kSquare, kQ0, kQ1, 0), ConfigError);
}

TEST(MeanValue, SingularSegmentReportsParameter) {
  const QFunction inv = TableEntry(Family::Inverse).function();
  try {
    mvt_left(inv, Quaternion(-1.0), Quaternion(1.0), 10);
    FAIL() << "expected SegmentError";
  } catch (const SegmentError& e) {
    EXPECT_NEAR(e.t(), 0.5, 1e-12);
  }
}

TEST(MeanValue, FirstOrderErrorBound) {
  // The increment error of q^2 and |q|^2 is exactly quadratic in the step; L = 1.
  Rng rng(42);
  for (int n = 0; n < 30; ++n) {
    const Quaternion q0 = random_point(rng);
    const Quaternion q1 = q0 + 0.3 * random_unit(rng);
    for (const QFunction& f : {kSquare, kNormSq}) {
      const ErrorBound b = mvt_error_bound_check(f, q0, q1, 1.0);
      EXPECT_LE(b.observed, 1.1 * b.bound);
      EXPECT_NEAR(b.observed, modulus_squared(q1 - q0), 1e-8);
    }
  }
}

TEST(Taylor, RemainderSlopes) {
  const std::vector<double> scales = geometric_scales(1e-1, 1e-3, 8);
  const Quaternion dir(0.3, 0.5, -0.2, 0.7);
  for (const TableEntry& e : {TableEntry::power(3), TableEntry::exponential()}) {
    const TaylorFit fit = taylor_remainder_slope(e.function(), kQ0, dir, scales);
    ASSERT_TRUE(fit.slope.has_value()) << e.label();
    EXPECT_GE(*fit.slope, 2.7) << e.label();
    EXPECT_LE(*fit.slope, 3.3) << e.label();
  }
  for (const QFunction& f : {kSquare, kNormSq}) {
    EXPECT_TRUE(taylor_remainder_slope(f, kQ0, dir, scales).exact_to_floor());
  }
}

TEST(Taylor, ScaleValidation) {
  const Quaternion dir = kOne;
  EXPECT_THROW(taylor_remainder_slope(kSquare, kQ0, dir, {1e-1, 1e-2, 1e-3}), ConfigError);
  EXPECT_THROW(taylor_remainder_slope(kSquare, kQ0, dir, {1e-1, 1e-2, 1e-2, 1e-3}), ConfigError);
  EXPECT_THROW(taylor_remainder_slope(kSquare, kQ0, dir, {1e-1, 8e-2, 6e-2, 4e-2}), ConfigError);
  EXPECT_THROW(taylor_remainder_slope(kSquare, kQ0, Quaternion(), geometric_scales(1e-1, 1e-3, 5)),
               ConfigError);
  EXPECT_THROW(geometric_scales(1e-3, 1e-1, 5), ConfigError);
}

TEST(Taylor, QuadraticsAreExactAtSecondOrder) {
  const Quaternion lambda(0.2, -0.1, 0.3, 0.05);
  EXPECT_QUAT_NEAR(taylor2_left(kSquare, kQ0, lambda), kSquare(kQ0 + lambda), 1e-7);
  EXPECT_QUAT_NEAR(taylor2_center(kNormSq, kQ0, lambda), kNormSq(kQ0 + lambda), 1e-7);
}

TEST(Taylor, FirstOrderMatchesRealForm) {
  // For real f the first-order term is 4 Re(df/dq lambda).
  Rng rng(43);
  for (int n = 0; n < 30; ++n) {
    const Quaternion q0 = random_point(rng);
    const Quaternion lambda = 1e-2 * random_unit(rng);
    const Quaternion expected =
        kNormSq(q0) + 4.0 * real_part(left_hr(kNormSq, q0).wrt_q * lambda);
    EXPECT_QUAT_NEAR(taylor1_left(kNormSq, q0, lambda), expected, 1e-9);
    EXPECT_LE(modulus(taylor1_left(kNormSq, q0, lambda) - kNormSq(q0 + lambda)),
              1.01 * modulus_squared(lambda));
  }
}

Quaternion center() { return {1, 2, 3, 4}; }

QFunction distance_squared() {
  return [](const Quaternion& q) { return Quaternion(modulus_squared(q - center())); };
}

TEST(Descent, ConvergesToCenter) {
  const DescentTrace trace = steepest_descent(distance_squared(), Quaternion(), DescentOptions{});
  EXPECT_TRUE(trace.converged);
  EXPECT_LE(trace.iterates.size(), 101u);
  EXPECT_QUAT_NEAR(trace.iterates.back(), center(), 1e-6);
  EXPECT_LT(trace.grad_norms.back(), 1e-6);
}

TEST(Descent, ClosedFormGradientAgrees) {
  const TableEntry objective(Family::LinearModulusSquared, {kOne, kOne, -center()});
  const DescentTrace closed = steepest_descent(objective, Quaternion(), DescentOptions{});
  const DescentTrace numeric = steepest_descent(distance_squared(), Quaternion(), DescentOptions{});
  ASSERT_TRUE(closed.converged);
  EXPECT_QUAT_NEAR(closed.iterates.back(), center(), 1e-6);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_QUAT_NEAR(closed.iterates[k], numeric.iterates[k], 1e-8);
  }
}

TEST(Descent, ContractionFactor) {
  // grad of |q - c|^2 wrt q* is (q - c) / 2, so each step scales the error by 1 - alpha/2.
  DescentOptions options;
  options.alpha = 0.4;
  const DescentTrace t = steepest_descent(distance_squared(), Quaternion(), options);
  for (std::size_t k = 1; k < 10; ++k) {
    EXPECT_NEAR(modulus(t.iterates[k] - center()) / modulus(t.iterates[k - 1] - center()), 0.8,
                1e-7);
  }
}

TEST(Descent, MonotoneForSmallSteps) {
  for (double alpha : {0.05, 0.3, 0.6, 0.95}) {
    DescentOptions options;
    options.alpha = alpha;
    options.max_iters = 40;
    const DescentTrace t = steepest_descent(distance_squared(), Quaternion(-1, 0.5, 2, 0), options);
    for (std::size_t k = 1; k < t.values.size(); ++k) {
      EXPECT_LT(t.values[k], t.values[k - 1]) << alpha;
    }
  }
}

TEST(Descent, StartAtMinimiser) {
  const DescentTrace t = steepest_descent(distance_squared(), center(), DescentOptions{});
  EXPECT_TRUE(t.converged);
  EXPECT_EQ(t.iterates.size(), 1u);
}

TEST(Descent, DetectsDivergence) {
  DescentOptions options;
  options.alpha = 5.0;
  EXPECT_THROW(steepest_descent(distance_squared(), Quaternion(), options), DivergenceError);
}

TEST(Descent, RejectsBadInput) {
  DescentOptions options;
  options.alpha = 0.0;
  EXPECT_THROW(steepest_descent(distance_squared(), Quaternion(), options), ConfigError);
  EXPECT_THROW(steepest_descent(kSquare, Quaternion(0.3, 1, 0, 0), DescentOptions{}), DomainError);
  EXPECT_THROW(steepest_descent(TableEntry(Family::Square), kOne, DescentOptions{}), DomainError);
}

TEST(Descent, SteepestDirectionIsOptimal) {
  Rng rng(44);
  for (int n = 0; n < 5; ++n) {
    const DirectionCheck c = steepest_direction_check(distance_squared(), random_point(rng), rng);
    EXPECT_EQ(c.samples, 1000u);
    EXPECT_TRUE(c.optimal());
    EXPECT_LT(c.optimal_value, 0.0);
  }
}

}  // namespace
}  // namespace ghr
