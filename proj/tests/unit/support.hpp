#pragma once

#include <array>

#include <gtest/gtest.h>

#include "ghr/quaternion.hpp"

namespace ghr::testing {

// Hamilton product from the unit multiplication table, independent of operator*.
inline Quaternion table_product(const Quaternion& p, const Quaternion& q) {
  // e_m e_n = sign * e_index over the basis (1, i, j, k)
  static constexpr int kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static constexpr int kIndex[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const std::array<double, 4> x{p.a, p.b, p.c, p.d};
  const std::array<double, 4> y{q.a, q.b, q.c, q.d};
  std::array<double, 4> out{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      out[kIndex[m][n]] += kSign[m][n] * x[m] * y[n];
    }
  }
  return {out[0], out[1], out[2], out[3]};
}

inline ::testing::AssertionResult QuatNear(const char* lhs_expr, const char* rhs_expr,
                                           const char*, const Quaternion& lhs,
                                           const Quaternion& rhs, double tol) {
  const double err = modulus(lhs - rhs);
  if (err <= tol) {
    return ::testing::AssertionSuccess();
  }
  return ::testing::AssertionFailure() << lhs_expr << " = " << lhs << "\n"
                                       << rhs_expr << " = " << rhs << "\n"
                                       << "distance " << err << " > " << tol;
}

}  // namespace ghr::testing

#define EXPECT_QUAT_NEAR(a, b, tol) EXPECT_PRED_FORMAT3(::ghr::testing::QuatNear, a, b, tol)
