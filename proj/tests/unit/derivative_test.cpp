#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ghr/derivative.hpp"
#include "ghr/errors.hpp"
#include "ghr/random.hpp"
#include "support.hpp"

namespace ghr {
namespace {

const QFunction kIdentity = [](const Quaternion& q) { return q; };
const QFunction kConj = [](const Quaternion& q) { return conjugate(q); };
const QFunction kSquare = [](const Quaternion& q) { return q * q; };
const QFunction kNormSq = [](const Quaternion& q) { return Quaternion(modulus_squared(q)); };

TEST(RealPartials, LinearFunctionIsExact) {
  const RealPartials p = real_partials(kIdentity, Quaternion(0.3, -1.2, 0.7, 2.0));
  EXPECT_QUAT_NEAR(p.d_qa, kOne, 1e-9);
  EXPECT_QUAT_NEAR(p.d_qb, kI, 1e-9);
  EXPECT_QUAT_NEAR(p.d_qc, kJ, 1e-9);
  EXPECT_QUAT_NEAR(p.d_qd, kK, 1e-9);
}

TEST(RealPartials, ModulusSquaredGolden) {
  const RealPartials p = real_partials(kNormSq, Quaternion(1, 2, 3, 4));
  EXPECT_QUAT_NEAR(p.d_qa, 2.0, 1e-8);
  EXPECT_QUAT_NEAR(p.d_qb, 4.0, 1e-8);
  EXPECT_QUAT_NEAR(p.d_qc, 6.0, 1e-8);
  EXPECT_QUAT_NEAR(p.d_qd, 8.0, 1e-8);
}

TEST(RealPartials, SquareAtI) {
  const RealPartials p = real_partials(kSquare, kI);
  EXPECT_QUAT_NEAR(p.d_qa, 2.0 * kI, 1e-9);
  EXPECT_QUAT_NEAR(p.d_qb, -2.0, 1e-9);
}

TEST(RealPartials, Errors) {
  EXPECT_THROW(real_partials(kIdentity, kOne, 0.0), ConfigError);
  EXPECT_THROW(real_partials(kIdentity, kOne, -1e-6), ConfigError);
  const QFunction blows_up = [](const Quaternion& q) {
    return q.b > 0.0 ? Quaternion(std::numeric_limits<double>::infinity()) : q;
  };
  try {
    real_partials(blows_up, Quaternion(1.0), 1e-3);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NEAR(e.point().b, 1e-3, 1e-15);
  }
}

TEST(LeftHr, PropertiesOfIdentity) {
  const DerivativeSet d = left_hr(kIdentity, Quaternion(0.5, 1.5, -0.5, 0.25));
  EXPECT_QUAT_NEAR(d.wrt_q, 1.0, 1e-9);
  EXPECT_QUAT_NEAR(d.wrt_qc, -0.5, 1e-9);
  EXPECT_QUAT_NEAR(d.wrt_qi, 0.0, 1e-9);
  EXPECT_QUAT_NEAR(d.wrt_qj, 0.0, 1e-9);
  EXPECT_QUAT_NEAR(d.wrt_qk, 0.0, 1e-9);
  EXPECT_QUAT_NEAR(d.wrt_qic, 0.5, 1e-9);
  EXPECT_QUAT_NEAR(d.wrt_qjc, 0.5, 1e-9);
  EXPECT_QUAT_NEAR(d.wrt_qkc, 0.5, 1e-9);
  EXPECT_EQ(d.flavor, Flavor::left);
}

TEST(LeftHr, PropertiesOfConjugate) {
  const DerivativeSet d = left_hr(kConj, Quaternion(0.5, 1.5, -0.5, 0.25));
  EXPECT_QUAT_NEAR(d.wrt_qc, 1.0, 1e-9);
  EXPECT_QUAT_NEAR(d.wrt_q, -0.5, 1e-9);
}

TEST(LeftHr, WorkedExamples) {
  Rng rng(21);
  for (int n = 0; n < 100; ++n) {
    const Quaternion q = random_point(rng);
    EXPECT_QUAT_NEAR(left_hr(kSquare, q).wrt_q, q + real_part(q), 1e-6);
    EXPECT_QUAT_NEAR(left_hr(kNormSq, q).wrt_q, 0.5 * conjugate(q), 1e-6);
  }
}

TEST(RightHr, IdentityAndLeftMultiple) {
  const Quaternion q(0.2, -0.7, 1.1, 0.4);
  EXPECT_QUAT_NEAR(right_hr(kIdentity, q).wrt_q, 1.0, 1e-9);
  const QFunction iq = [](const Quaternion& p) { return kI * p; };
  EXPECT_QUAT_NEAR(left_hr(iq, q).wrt_q, kI, 1e-9);
  EXPECT_QUAT_NEAR(right_hr(iq, q).wrt_q, 0.0, 1e-9);
  EXPECT_EQ(right_hr(iq, q).flavor, Flavor::right);
}

TEST(RightHr, RealValuedMatchesLeft) {
  Rng rng(22);
  for (int n = 0; n < 50; ++n) {
    const Quaternion q = random_point(rng);
    const DerivativeSet l = left_hr(kNormSq, q);
    const DerivativeSet r = right_hr(kNormSq, q);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_QUAT_NEAR(l.plain()[k], r.plain()[k], 1e-8);
      EXPECT_QUAT_NEAR(l.conjugates()[k], r.conjugates()[k], 1e-8);
    }
  }
}

TEST(LeftGhr, LinearRows) {
  Rng rng(23);
  for (int n = 0; n < 100; ++n) {
    const Quaternion q = random_point(rng);
    const Quaternion mu = random_point(rng);
    const GhrPair g = left_ghr(kIdentity, q, mu);
    EXPECT_QUAT_NEAR(g.d_mu * mu, real_part(mu), 1e-8);
    EXPECT_QUAT_NEAR(g.d_mu_conj * mu, -0.5 * conjugate(mu), 1e-8);
  }
}

TEST(LeftGhr, ReducesToHrAtOne) {
  const Quaternion q(0.9, -0.3, 0.6, 1.2);
  EXPECT_QUAT_NEAR(left_ghr(kSquare, q, kOne).d_mu, left_hr(kSquare, q).wrt_q, 1e-10);
  EXPECT_QUAT_NEAR(left_ghr(kSquare, q, kI).d_mu, left_hr(kSquare, q).wrt_qi, 1e-10);
  EXPECT_QUAT_NEAR(left_ghr(kSquare, q, kK).d_mu_conj, left_hr(kSquare, q).wrt_qkc, 1e-10);
  EXPECT_QUAT_NEAR(right_ghr(kSquare, q, kJ).d_mu, right_hr(kSquare, q).wrt_qj, 1e-10);
}

TEST(LeftGhr, ZeroAxisThrows) {
  EXPECT_THROW(left_ghr(kIdentity, kOne, Quaternion()), DomainError);
  EXPECT_THROW(right_ghr(kIdentity, kOne, Quaternion()), DomainError);
}

TEST(LeftGhr, AxisScaleInvariant) {
  const Quaternion q(0.4, 1.0, -0.2, 0.3);
  const Quaternion mu(0.5, -1.0, 2.0, 1.0);
  EXPECT_QUAT_NEAR(left_ghr(kSquare, q, mu).d_mu, left_ghr(kSquare, q, 4.0 * mu).d_mu, 1e-12);
}

TEST(SecondOrder, NestedSquareOracle) {
  // d/dq (q + Re q) = 1 + 1/4
  const SecondOrder s = second_order_left(kSquare, Quaternion(0.3, 0.8, -0.4, 1.1), kOne, kOne);
  EXPECT_QUAT_NEAR(s.mu_nu, 1.25, 1e-3);
}

TEST(SecondOrder, LaplacianOfModulusSquared) {
  Rng rng(24);
  for (int n = 0; n < 20; ++n) {
    const Quaternion mu = random_point(rng);
    const SecondOrder s = second_order_left(kNormSq, random_point(rng), mu, mu);
    EXPECT_QUAT_NEAR(s.mu_nuc, 0.5, 1e-3);
    EXPECT_QUAT_NEAR(s.muc_nu, 0.5, 1e-3);
  }
}

TEST(SecondOrder, MixedDerivativesDoNotCommute) {
  const QFunction cd = [](const Quaternion& q) { return Quaternion(q.c * q.d); };
  const Quaternion q(0.7, 0.2, -1.3, 0.5);
  const Quaternion ij = second_order_left(cd, q, kI, kJ).mu_nu;
  const Quaternion ji = second_order_left(cd, q, kJ, kI).mu_nu;
  EXPECT_QUAT_NEAR(ij, Quaternion(0, -0.125, 0, 0), 1e-6);
  EXPECT_QUAT_NEAR(ji, Quaternion(0, 0.125, 0, 0), 1e-6);
  EXPECT_QUAT_NEAR(involution(ij, Axis::k), ji, 1e-6);
}

TEST(SecondOrder, RightAndLeftSwapOrderForRealFunctions) {
  const QFunction re_sq = [](const Quaternion& q) { return Quaternion(q.a * q.a); };
  const QFunction cd = [](const Quaternion& q) { return Quaternion(q.c * q.d); };
  Rng rng(29);
  for (const QFunction& f : {kNormSq, re_sq, cd}) {
    for (int n = 0; n < 5; ++n) {
      const Quaternion q = random_point(rng);
      const Quaternion mu = random_point(rng);
      const Quaternion nu = random_point(rng);
      const QFunction inner = [&](const Quaternion& p) {
        return right_ghr(f, p, nu, kSecondOrderStep).d_mu;
      };
      const Quaternion right = right_ghr(inner, q, mu, kSecondOrderStep).d_mu;
      const SecondOrder swapped = second_order_left(f, q, nu, mu);
      EXPECT_QUAT_NEAR(right, swapped.mu_nu, 1e-5);
      const SecondOrder left = second_order_left(f, q, mu, nu);
      EXPECT_QUAT_NEAR(conjugate(left.mu_nu), swapped.muc_nuc, 1e-5);
    }
  }
}

TEST(SecondOrder, MixedDerivativesOfSquareCoincide) {
  const Quaternion q(0.7, 0.2, -1.3, 0.5);
  EXPECT_QUAT_NEAR(second_order_left(kSquare, q, kI, kJ).mu_nu, -0.25, 1e-6);
  EXPECT_QUAT_NEAR(second_order_left(kSquare, q, kJ, kI).mu_nu, -0.25, 1e-6);
}

TEST(ProductRule, WorkedExamples) {
  const Quaternion q(1.0, -0.5, 0.7, 0.2);
  EXPECT_LT(check_product_rule(kIdentity, kIdentity, q, kOne), 1e-6);
  EXPECT_LT(check_product_rule(kIdentity, kConj, q, kOne), 1e-6);
  const QFunction constant = [](const Quaternion&) { return Quaternion(0.5, 1, -2, 0.25); };
  EXPECT_LT(check_product_rule(constant, kSquare, q, Quaternion(0.3, 1, 1, -1)), 1e-6);
}

TEST(ProductRule, RandomAxes) {
  Rng rng(25);
  const QFunction inv = [](const Quaternion& p) { return inverse(p); };
  for (int n = 0; n < 50; ++n) {
    const Quaternion q = random_point(rng, 0.5);
    const Quaternion mu = random_point(rng);
    EXPECT_LT(check_product_rule(kSquare, inv, q, mu), 1e-5);
    EXPECT_LT(check_product_rule(kNormSq, kSquare, q, mu), 1e-5);
  }
}

TEST(ProductRule, DegenerateAxisThrows) {
  const QFunction zero = [](const Quaternion&) { return Quaternion(); };
  EXPECT_THROW(check_product_rule(kIdentity, zero, kOne, kOne), PreconditionError);
}

TEST(ChainRule, IdentityInnerFunction) {
  const Quaternion q(0.6, -0.4, 1.0, 0.2);
  EXPECT_LT(check_chain_rule(kSquare, kIdentity, q, Quaternion(1, 2, 0, -1), kOne), 1e-6);
}

TEST(ChainRule, ModulusOfLinearMap) {
  Rng rng(26);
  for (int n = 0; n < 30; ++n) {
    const Quaternion omega = random_point(rng);
    const QFunction g = [omega](const Quaternion& p) { return omega * p; };
    EXPECT_LT(check_chain_rule(kNormSq, g, random_point(rng), random_point(rng),
                               random_point(rng)),
              1e-6 * (1 + modulus_squared(omega) * 16));
  }
}

TEST(ChainRule, RealCorollary) {
  const QFunction re_square = [](const Quaternion& p) { return real_part(p * p); };
  Rng rng(27);
  for (int n = 0; n < 30; ++n) {
    const double r = check_real_chain_rule([](double s) { return s * s; },
                                           [](double s) { return 2.0 * s; }, re_square,
                                           random_point(rng), random_point(rng));
    EXPECT_LT(r, 1e-5);
  }
  EXPECT_THROW(check_real_chain_rule([](double s) { return s; }, [](double) { return 1.0; },
                                     kSquare, Quaternion(0.3, 1, 0, 0), kOne),
               PreconditionError);
}

TEST(ChainRule, DegenerateAxisThrows) {
  EXPECT_THROW(check_chain_rule(kSquare, kIdentity, kOne, Quaternion(), kOne), PreconditionError);
}

TEST(ConjugationRelation, LinearAndRealFunctions) {
  Rng rng(28);
  for (int n = 0; n < 30; ++n) {
    const Quaternion q = random_point(rng);
    const Quaternion mu = random_point(rng);
    const Quaternion omega = random_point(rng);
    EXPECT_LT(conjugation_relation(kIdentity, q, mu), 1e-10);
    EXPECT_LT(conjugation_relation(kNormSq, q, mu), 1e-8);
    const QFunction scaled = [omega](const Quaternion& p) { return omega * p; };
    EXPECT_LT(conjugation_relation(scaled, q, mu), 1e-6);
  }
}

TEST(RealValued, Detection) {
  const Quaternion q(0.3, 0.4, -0.1, 0.9);
  EXPECT_TRUE(is_real_valued(kNormSq, q));
  EXPECT_FALSE(is_real_valued(kSquare, q));
}

TEST(Combinators, ComposeProductConjugated) {
  const Quaternion q(0.3, 0.4, -0.1, 0.9);
  EXPECT_QUAT_NEAR(compose(kSquare, kConj)(q), conjugate(q) * conjugate(q), 0.0);
  EXPECT_QUAT_NEAR(product(kIdentity, kConj)(q), modulus_squared(q), 1e-15);
  EXPECT_QUAT_NEAR(conjugated(kSquare)(q), conjugate(q * q), 0.0);
}

}  // namespace
}  // namespace ghr
