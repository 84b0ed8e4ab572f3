#include <gtest/gtest.h>

#include "jmap/jordan_order.hpp"
#include "jmap/random.hpp"

using namespace jmap;

namespace {

std::vector<Mat> all_matrices(const Field& f, std::size_t n) {
  std::vector<Mat> out;
  for (std::uint64_t i = 0; i < *Mat::domain_size(f, n, n); ++i) out.push_back(Mat::from_index(f, n, n, i));
  return out;
}

}  // namespace

TEST(JordanOrder, IdempotentCountOverF3) {
  // 0, I, and the q^2 + q = 12 rank-one idempotents of M_2(F_3)
  int count = 0;
  for (const Mat& m : all_matrices(Field::prime(3), 2)) count += m.is_idempotent() ? 1 : 0;
  EXPECT_EQ(count, 14);
}

TEST(JordanOrder, CalcEquivalencesExhaustiveM2F3) {
  const auto all = all_matrices(Field::prime(3), 2);
  for (const Mat& p : all) {
    if (!p.is_idempotent()) continue;
    for (const Mat& a : all) EXPECT_TRUE(jordan_calc_check(p, a).all()) << p << "\n" << a;
  }
}

TEST(JordanOrder, CalcEquivalencesSampledQ) {
  Rng rng(3);
  const Field q = Field::rational();
  for (int t = 0; t < 200; ++t) {
    const Mat p = random_idempotent(q, 3, rng.below(4), rng);
    const Mat a = rng.coin() ? random_idempotent(q, 3, rng.below(4), rng) : random_sparse_matrix(q, 3, rng);
    EXPECT_TRUE(jordan_calc_check(p, a).all());
  }
}

TEST(JordanOrder, OrderAndOrthogonalityMatchProducts) {
  const auto all = all_matrices(Field::prime(3), 2);
  std::vector<Mat> idem;
  for (const Mat& m : all) {
    if (m.is_idempotent()) idem.push_back(m);
  }
  for (const Mat& p : idem) {
    for (const Mat& q : idem) {
      EXPECT_EQ(jordan_perp(p, q), (p * q).is_zero() && (q * p).is_zero());
      EXPECT_EQ(jordan_le(p, q), p * q == p && q * p == p);
    }
    EXPECT_TRUE(jordan_perp(p, perp_complement(p)));
  }
}

TEST(JordanOrder, RejectsNonIdempotents) {
  const Field f = Field::prime(5);
  const Mat e12 = Mat::unit(f, 2, 1, 2);
  EXPECT_THROW(jordan_le(e12, e12), InvalidArgument);
  EXPECT_THROW(jordan_calc_check(e12, e12), InvalidArgument);
}

TEST(JordanOrder, DiagonalizerOnConjugatedFrames) {
  Rng rng(5);
  for (const Field& f : {Field::rational(), Field::prime(5), Field::galois(3, {1, 0, 1})}) {
    for (std::size_t n : {2, 3, 4}) {
      const Mat s = random_invertible(f, n, rng);
      const Mat sinv = s.inverse();
      std::vector<Mat> qs;
      for (std::size_t j = 1; j <= n; ++j) qs.push_back(s * Mat::unit(f, n, j, j) * sinv);
      const Mat t = simultaneous_diagonalizer(IdempotentFamily(qs));
      for (std::size_t j = 1; j <= n; ++j) EXPECT_EQ(t.inverse() * qs[j - 1] * t, Mat::unit(f, n, j, j));
    }
  }
}

TEST(JordanOrder, FamilyValidation) {
  const Field f = Field::prime(5);
  const Mat e11 = Mat::unit(f, 2, 1, 1);
  const Mat e22 = Mat::unit(f, 2, 2, 2);
  EXPECT_NO_THROW(IdempotentFamily({e11, e22}));
  EXPECT_THROW(IdempotentFamily({e11, e11}), InvalidArgument);
  EXPECT_THROW(IdempotentFamily({e11}), InvalidArgument);
  EXPECT_THROW(IdempotentFamily({Mat::identity(f, 2), Mat::zero(f, 2)}), InvalidArgument);
  EXPECT_THROW(IdempotentFamily({}), InvalidArgument);
  // orthogonal on one side only
  const Mat p = Mat::from_ints(f, {{1, 1}, {0, 0}});
  EXPECT_THROW(IdempotentFamily({p, e22}), InvalidArgument);
}
