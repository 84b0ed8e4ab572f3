#include <gtest/gtest.h>

#include "jmap/counterexamples.hpp"

using namespace jmap;

namespace {

std::function<Scalar(const Scalar&)> power(std::uint64_t k) {
  return [k](const Scalar& s) { return s.pow(k); };
}

void expect_witnesses_hold(const CounterexampleBundle& b) {
  const auto& a = b.non_additive;
  EXPECT_EQ(b.map(a.x), a.fx);
  EXPECT_EQ(b.map(a.y), a.fy);
  EXPECT_EQ(b.map(a.x + a.y), a.fsum);
  EXPECT_NE(a.fsum, a.fx + a.fy);
  EXPECT_NE(b.map(b.non_constant.x), b.map(b.non_constant.y));
  EXPECT_TRUE(b.evidence.passed());
  EXPECT_TRUE(b.replay());
}

}  // namespace

TEST(Counterexamples, TriangularOverF3IsExhaustive) {
  const auto b = triangular_example(Field::prime(3), 2, power(2));
  ASSERT_EQ(b.points.size(), 27U);
  EXPECT_TRUE(b.evidence.strategy.is_exhaustive());
  EXPECT_EQ(b.evidence.pairs_checked, 729U);
  expect_witnesses_hold(b);
}

TEST(Counterexamples, TriangularOverF5) {
  const auto b = triangular_example(Field::prime(5), 2, power(2));
  EXPECT_EQ(b.points.size(), 125U);
  EXPECT_EQ(b.evidence.pairs_checked, 15625U);
  expect_witnesses_hold(b);
}

TEST(Counterexamples, TriangularBruteForceOracle) {
  // Independent scan: every pair of upper-triangular 2x2 matrices over F_3.
  const Field f = Field::prime(3);
  const auto b = triangular_example(f, 2, power(2));
  for (std::uint64_t i = 0; i < 81; ++i) {
    const Mat x = Mat::from_index(f, 2, 2, i);
    if (!x(1, 0).is_zero()) continue;
    for (std::uint64_t j = 0; j < 81; ++j) {
      const Mat y = Mat::from_index(f, 2, 2, j);
      if (!y(1, 0).is_zero()) continue;
      EXPECT_EQ(b.map(jordan_circ(x, y)), jordan_circ(b.map(x), b.map(y)));
    }
  }
  EXPECT_THROW(b.map(Mat::unit(f, 2, 2, 1)), DomainError);
}

TEST(Counterexamples, TriangularOverQIsSampled) {
  const auto b = triangular_example(Field::rational(), 3, power(2), 5);
  EXPECT_TRUE(b.points.empty());
  EXPECT_FALSE(b.evidence.strategy.is_exhaustive());
  EXPECT_EQ(b.evidence.pairs_checked, 2000U);
  expect_witnesses_hold(b);
}

TEST(Counterexamples, TriangularRejectsAdditiveOrNonMultiplicativeOmega) {
  // x^3 is the Frobenius of F_3, hence additive
  EXPECT_THROW(triangular_example(Field::prime(3), 2, power(3)), InvalidArgument);
  EXPECT_THROW(triangular_example(Field::prime(5), 2, [](const Scalar& s) { return s + s; }), InvalidArgument);
  EXPECT_THROW(triangular_example(Field::prime(2), 2, power(2)), Unsupported);
}

TEST(Counterexamples, Char2Example) {
  const Field f = Field::prime(2);
  const Mat a = Mat::unit(f, 2, 1, 1);
  const Mat bm = Mat::unit(f, 2, 1, 2);
  const auto b = char2_example(a, bm);
  EXPECT_EQ(b.evidence.pairs_checked, 256U);
  EXPECT_EQ(b.evidence.mode, Product::diamond);
  EXPECT_EQ(b.non_additive.x, Mat::from_ints(f, {{1, 1}, {0, 0}}));
  EXPECT_EQ(b.non_additive.y, Mat::unit(f, 2, 1, 2));
  expect_witnesses_hold(b);
  // no X⋄Y has trace one
  for (std::uint64_t i = 0; i < 16; ++i) {
    for (std::uint64_t j = 0; j < 16; ++j) {
      EXPECT_TRUE(jordan_diamond(Mat::from_index(f, 2, 2, i), Mat::from_index(f, 2, 2, j)).trace().is_zero());
    }
  }
}

TEST(Counterexamples, Char2OverF4AndLargerN) {
  const Field f4 = Field::galois(2, {1, 1, 1});
  const auto b = char2_example(Mat::unit(f4, 2, 2, 2), f4.generator() * Mat::identity(f4, 2), 3);
  EXPECT_EQ(b.evidence.pairs_checked, 65536U);
  expect_witnesses_hold(b);
  const Field f2 = Field::prime(2);
  const auto c = char2_example(Mat::unit(f2, 4, 1, 1), Mat::unit(f2, 4, 4, 1), 3);
  EXPECT_FALSE(c.evidence.strategy.is_exhaustive());
  expect_witnesses_hold(c);
}

TEST(Counterexamples, Char2RejectsBadInputs) {
  const Field f = Field::prime(2);
  EXPECT_THROW(char2_example(Mat::unit(f, 2, 1, 2), Mat::unit(f, 2, 1, 2)), InvalidArgument);
  EXPECT_THROW(char2_example(Mat::unit(f, 2, 1, 1), Mat::zero(f, 2)), InvalidArgument);
  EXPECT_THROW(char2_example(Mat::unit(Field::prime(3), 2, 1, 1), Mat::unit(Field::prime(3), 2, 1, 2)),
               InvalidArgument);
  // the normalized product does not exist here
  EXPECT_THROW(jordan_circ(Mat::unit(f, 2, 1, 1), Mat::unit(f, 2, 1, 1)), Unsupported);
}

TEST(Counterexamples, BlockEmbedding) {
  const Field f = Field::prime(3);
  const auto b = block_embedding_example(Mat::unit(f, 2, 1, 1));
  EXPECT_EQ(b.evidence.pairs_checked, 6561U);
  EXPECT_EQ(b.map.m(), 4U);
  expect_witnesses_hold(b);
  const auto c = block_embedding_example(Mat::identity(Field::rational(), 2), 2);
  expect_witnesses_hold(c);
  EXPECT_THROW(block_embedding_example(Mat::zero(f, 2)), InvalidArgument);
  EXPECT_THROW(block_embedding_example(Mat::unit(f, 2, 1, 2)), InvalidArgument);
}

TEST(Counterexamples, ReplayNoticesTampering) {
  auto b = triangular_example(Field::prime(3), 2, power(2));
  b.non_additive.fsum = b.non_additive.fx + b.non_additive.fy;
  EXPECT_FALSE(b.replay());
}
