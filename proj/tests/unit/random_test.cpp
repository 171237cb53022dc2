#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ghr/random.hpp"

namespace ghr {
namespace {

TEST(Rng, MatchesSplitMix64Reference) {
  Rng rng(0);
  EXPECT_EQ(rng.next_u64(), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, FrozenStream) {
  Rng rng(42);
  EXPECT_EQ(rng.next_u64(), 0xBDD732262FEB6E95ULL);
  EXPECT_EQ(rng.next_u64(), 0x28EFE333B266F103ULL);
  EXPECT_EQ(rng.next_u64(), 0x47526757130F9F52ULL);
  EXPECT_EQ(rng.counter(), 3u);
}

TEST(Rng, FrozenSplit) {
  Rng child = Rng(42).split(0);
  EXPECT_EQ(child.key(), 0x6BB150A2DF30D29BULL);
  EXPECT_EQ(child.next_u64(), 0xC68C225B193B126AULL);
}

TEST(Rng, UniformUsesTop53Bits) {
  Rng rng(42);
  EXPECT_DOUBLE_EQ(rng.uniform(), 0.7415648787718233);
}

TEST(Rng, SplitDoesNotAdvanceParent) {
  Rng a(7);
  Rng b(7);
  (void)a.split(3);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(Rng(7).split(1).key(), Rng(7).split(2).key());
}

TEST(Rng, UniformRange) {
  Rng rng(1);
  for (int n = 0; n < 10000; ++n) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform(-2.0, 3.0);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, 3.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng rng(2);
  const int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Rng, RandomPointRespectsBounds) {
  Rng rng(3);
  for (int n = 0; n < 2000; ++n) {
    const Quaternion q = random_point(rng, 0.5);
    EXPECT_GE(modulus(q), 0.5);
    for (double x : {q.a, q.b, q.c, q.d}) {
      EXPECT_LE(std::abs(x), 2.0);
    }
    EXPECT_NEAR(modulus(random_unit(rng)), 1.0, 1e-15);
  }
}

TEST(Rng, StandardDistributionCompatible) {
  Rng rng(4);
  std::vector<int> v{1, 2, 3, 4, 5};
  std::shuffle(v.begin(), v.end(), rng);
  std::sort(v.begin(), v.end());
  EXPECT_EQ(v, (std::vector<int>{1, 2, 3, 4, 5}));
}

}  // namespace
}  // namespace ghr
