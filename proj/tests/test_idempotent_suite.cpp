#include <gtest/gtest.h>

#include "jmap/idempotent_suite.hpp"

using namespace jmap;

namespace {

const ItemReport& item(const IdempotentSuiteReport& r, char c) { return r.items[static_cast<std::size_t>(c - 'a')]; }

}  // namespace

TEST(IdempotentSuite, GenuineMapsPassEveryItem) {
  Rng rng(31);
  const Field f9 = Field::galois(3, {1, 0, 1});
  for (const Field& f : {Field::rational(), Field::prime(5), f9}) {
    const auto endos = enumerate_endomorphisms(f);
    for (std::size_t n : {2, 3, 4}) {
      const JordanMap phi = JordanMap::conjugation(random_invertible(f, n, rng), endos[rng.below(endos.size())],
                                                   rng.coin(), Product::circ);
      const auto r = idempotent_suite(phi, 3, 7);
      EXPECT_TRUE(r.all_passed()) << f.name() << " n = " << n << " first failure " << r.first_failure().value_or('-');
      for (const auto& it : r.items) {
        EXPECT_TRUE(it.applicable);
        EXPECT_GT(it.checks, 0U) << it.item;
      }
    }
  }
}

TEST(IdempotentSuite, DiamondMapIsReduced) {
  const Field f = Field::prime(7);
  const JordanMap phi =
      JordanMap::conjugation(Mat::from_ints(f, {{1, 2}, {3, 4}}), RingEndo::identity(f), false, Product::diamond);
  EXPECT_TRUE(idempotent_suite(phi, 2, 1).all_passed());
}

TEST(IdempotentSuite, ConstantMapSkipsReducedItems) {
  const Field f = Field::prime(5);
  const auto r = idempotent_suite(JordanMap::constant(3, Mat::unit(f, 3, 2, 2), Product::circ), 2, 1);
  EXPECT_TRUE(r.all_passed());
  EXPECT_TRUE(item(r, 'a').applicable);
  EXPECT_TRUE(item(r, 'b').applicable);
  for (char c = 'c'; c <= 'h'; ++c) {
    EXPECT_FALSE(item(r, c).applicable) << c;
    EXPECT_FALSE(item(r, c).precondition.empty());
  }
}

TEST(IdempotentSuite, NonSquareTargetSkipsSquareItems) {
  const Field f = Field::prime(5);
  // X -> diag(X, 0) into M_4
  const JordanMap phi = JordanMap::oracle(f, 2, 4, Product::circ, [&](const Mat& x) {
    Mat y = Mat::zero(f, 4);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) y = y.with(r, c, x(r, c));
    }
    return y;
  });
  const auto r = idempotent_suite(phi, 2, 1);
  EXPECT_TRUE(r.all_passed());
  for (char c = 'a'; c <= 'd'; ++c) EXPECT_TRUE(item(r, c).applicable) << c;
  for (char c = 'e'; c <= 'h'; ++c) EXPECT_FALSE(item(r, c).applicable) << c;
}

TEST(IdempotentSuite, MutatedDiagonalUnitIsCaught) {
  const Field f = Field::prime(5);
  const JordanMap phi = JordanMap::conjugation(Mat::identity(f, 2), RingEndo::identity(f), false, Product::circ);
  const JordanMap bad = mutate_entry(phi, Mat::unit(f, 2, 1, 1), 0, 1, f.one());
  EXPECT_EQ(bad(Mat::unit(f, 2, 1, 1)), Mat::from_ints(f, {{1, 1}, {0, 0}}));
  EXPECT_EQ(bad(Mat::unit(f, 2, 2, 2)), Mat::unit(f, 2, 2, 2));
  const auto r = idempotent_suite(bad, 2, 1);
  ASSERT_FALSE(r.all_passed());
  const auto& first = item(r, *r.first_failure());
  ASSERT_TRUE(first.witness);
  EXPECT_FALSE(first.witness->relation.empty());
  EXPECT_THROW(mutate_entry(phi, Mat::unit(f, 2, 1, 1), 2, 0, f.one()), InvalidArgument);
}

TEST(IdempotentSuite, MutationScanDetectsMost) {
  const Field f = Field::prime(7);
  Rng rng(4);
  const JordanMap phi = JordanMap::conjugation(random_invertible(f, 3, rng), RingEndo::identity(f), true, Product::circ);
  const auto scan = mutation_scan(phi, 40, 3, 9);
  EXPECT_EQ(scan.outcomes.size(), 40U);
  EXPECT_GE(scan.detected(), 36U);
  EXPECT_EQ(scan.detected() + scan.survivors().size(), 40U);
}

TEST(IdempotentSuite, InputsAreRecorded) {
  const Field f = Field::prime(3);
  const JordanMap phi = JordanMap::conjugation(Mat::identity(f, 2), RingEndo::identity(f), false, Product::circ);
  const auto r = idempotent_suite(phi, 1, 0);
  EXPECT_FALSE(r.inputs.empty());
  const auto again = idempotent_suite(phi, 1, 0);
  EXPECT_EQ(r.inputs.size(), again.inputs.size());
}

TEST(IdempotentSuite, RejectsCharacteristicTwo) {
  const Field f = Field::prime(2);
  EXPECT_THROW(idempotent_suite(JordanMap::constant(2, Mat::zero(f, 2), Product::diamond), 1, 0), Unsupported);
}
