#include <gtest/gtest.h>

#include <set>

#include "jmap/field.hpp"

using namespace jmap;

namespace {

// Monic polynomials of degree d over F_p, ascending coefficients.
std::vector<std::vector<std::uint64_t>> monic(std::uint64_t p, unsigned d) {
  std::vector<std::vector<std::uint64_t>> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint64_t> f(d + 1, 0);
    f[d] = 1;
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < d; ++i) {
      f[i] = rest % p;
      rest /= p;
    }
    out.push_back(f);
  }
  return out;
}

// Remainder of f by monic g, schoolbook.
bool divides(const std::vector<std::uint64_t>& g, std::vector<std::uint64_t> f, std::uint64_t p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t top = f.size(); top-- > dg;) {
    const std::uint64_t c = f[top];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) f[top - dg + i] = (f[top - dg + i] + p * p - c * g[i] % p) % p;
  }
  for (std::size_t i = 0; i < dg; ++i) {
    if (f[i] != 0) return false;
  }
  return true;
}

bool irreducible_by_trial_division(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  for (unsigned e = 1; e <= d / 2; ++e) {
    for (const auto& g : monic(p, e)) {
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

Field f9() { return Field::galois(3, {1, 0, 1}); }

}  // namespace

TEST(Field, HalfInF5) {
  const Field f = Field::prime(5);
  EXPECT_EQ(f.from_int(3).halve(), f.from_int(4));
  EXPECT_EQ(f.from_int(2).inv(), f.from_int(3));
}

TEST(Field, PrimeInversesMatchBruteForce) {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const Field f = Field::prime(p);
    for (std::uint64_t a = 1; a < p; ++a) {
      std::uint64_t brute = 0;
      for (std::uint64_t b = 1; b < p; ++b) {
        if (a * b % p == 1) brute = b;
      }
      EXPECT_EQ(f.element(a).inv(), f.element(brute)) << "p = " << p << ", a = " << a;
    }
  }
}

TEST(Field, LargePrimeMultiplication) {
  const std::uint64_t p = 4294967291ULL;
  const Field f = Field::prime(p);
  const std::uint64_t a = 4000000007ULL % p;
  const std::uint64_t b = 3999999979ULL;
  const auto expected = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  EXPECT_EQ((f.element(a) * f.element(b)).index(), expected);
  EXPECT_EQ(f.element(a) * f.element(a).inv(), f.one());
}

TEST(Field, IrreducibilityAgreesWithTrialDivision) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned d = 1; d <= (p == 5 ? 3U : 5U); ++d) {
      for (const auto& f : monic(p, d)) {
        EXPECT_EQ(detail::is_irreducible(f, p), irreducible_by_trial_division(f, p)) << "p = " << p << ", d = " << d;
      }
    }
  }
}

TEST(Field, IrreducibleCounts) {
  auto count = [](std::uint64_t p, unsigned d) {
    int c = 0;
    for (const auto& f : monic(p, d)) c += detail::is_irreducible(f, p) ? 1 : 0;
    return c;
  };
  EXPECT_EQ(count(2, 2), 1);
  EXPECT_EQ(count(2, 3), 2);
  EXPECT_EQ(count(2, 4), 3);
  EXPECT_EQ(count(3, 2), 3);
  EXPECT_EQ(count(3, 3), 8);
  EXPECT_EQ(count(3, 4), 18);
}

TEST(Field, RejectsBadDescriptors) {
  EXPECT_THROW(Field::prime(9), InvalidArgument);
  EXPECT_THROW(Field::prime(1), InvalidArgument);
  EXPECT_THROW(Field::galois(3, {2, 0, 1}), InvalidArgument);  // x^2 + 2 = (x-1)(x+1)
  EXPECT_THROW(Field::galois(3, {1, 0, 2}), InvalidArgument);  // not monic
  EXPECT_THROW(Field::make(FieldKind::prime, 3, 2), InvalidArgument);
}

TEST(Field, DescriptorsAreInterned) {
  EXPECT_EQ(Field::prime(7), Field::prime(7));
  EXPECT_EQ(f9(), Field::galois(3, {1, 0, 1}));
  EXPECT_NE(Field::prime(7), Field::prime(5));
  EXPECT_EQ(f9().name(), "F_9");
  EXPECT_EQ(*f9().order(), 9U);
  EXPECT_EQ(Field::rational().name(), "Q");
}

TEST(Field, F9AxiomsExhaustive) {
  const Field f = f9();
  const auto el = f.elements();
  ASSERT_EQ(el.size(), 9U);
  for (const auto& a : el) {
    EXPECT_EQ(a + (-a), f.zero());
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inv(), f.one());
    }
    for (const auto& b : el) {
      EXPECT_EQ(a * b, b * a);
      for (const auto& c : el) EXPECT_EQ(a * (b + c), a * b + a * c);
    }
  }
  const Scalar g = f.generator();
  EXPECT_EQ(g * g, f.from_int(-1));
}

TEST(Field, FrobeniusOnF9SendsGeneratorToItsCube) {
  const Field f = f9();
  const Scalar g = f.generator();
  const RingEndo fr = RingEndo::frobenius(f, 1);
  EXPECT_EQ(fr(g), g * g * g);
  EXPECT_EQ(fr(g), -g);
}

TEST(Field, EndomorphismsOfF9AreTheRingMaps) {
  const Field f = f9();
  const auto el = f.elements();
  const auto endos = enumerate_endomorphisms(f);
  ASSERT_EQ(endos.size(), 2U);
  // A ring endomorphism fixes F_3 and sends g to a root of x^2 + 1.
  std::set<std::uint64_t> roots;
  for (const auto& a : el) {
    if (a * a + f.one() == f.zero()) roots.insert(a.index());
  }
  std::set<std::uint64_t> images;
  for (const auto& w : endos) {
    images.insert(w(f.generator()).index());
    for (const auto& a : el) {
      for (const auto& b : el) {
        EXPECT_EQ(w(a + b), w(a) + w(b));
        EXPECT_EQ(w(a * b), w(a) * w(b));
      }
    }
  }
  EXPECT_EQ(images, roots);
}

TEST(Field, RationalArithmetic) {
  const Field q = Field::rational();
  const Scalar a = q.parse("7/2");
  EXPECT_EQ(a.to_string(), "7/2");
  EXPECT_EQ((a + q.parse("-1/2")).to_string(), "3");
  EXPECT_EQ(a.halve().to_string(), "7/4");
  EXPECT_EQ(q.parse("6/-4").to_string(), "-3/2");
  EXPECT_THROW(q.parse("1/0"), ZeroDivision);
  EXPECT_THROW(q.parse("x"), InvalidArgument);
  EXPECT_EQ(enumerate_endomorphisms(q).size(), 1U);
  EXPECT_THROW(RingEndo::frobenius(q, 1), InvalidArgument);
}

TEST(Field, RationalsReduceIntoPrimeFields) {
  const Field f = Field::prime(5);
  EXPECT_EQ(f.from_rational(Rational(1, 2)), f.from_int(3));
  EXPECT_EQ(f.from_rational(Rational(-7, 3)), f.from_int(1));
  EXPECT_THROW(f.from_rational(Rational(1, 5)), ZeroDivision);
}

TEST(Field, ErrorsOnMisuse) {
  EXPECT_THROW(Field::prime(5).zero().inv(), ZeroDivision);
  EXPECT_THROW(Field::prime(5).one() + Field::prime(7).one(), Mismatch);
  EXPECT_THROW(Field::galois(2, {1, 1, 1}).one().halve(), Unsupported);
  EXPECT_THROW(f9().parse("1"), InvalidArgument);
}

TEST(Field, ElementIndexRoundTrip) {
  const Field f = Field::galois(2, {1, 1, 0, 1});
  for (std::uint64_t i = 0; i < 8; ++i) EXPECT_EQ(f.element(i).index(), i);
  EXPECT_EQ(f.generator().coeffs(), (std::vector<std::uint64_t>{0, 1, 0}));
  EXPECT_EQ(f.generator().to_string(), "[0,1,0]");
}

TEST(Field, PowMatchesRepeatedProduct) {
  const Field f = Field::galois(5, {2, 0, 1});
  const Scalar g = f.generator();
  Scalar acc = f.one();
  for (std::uint64_t e = 0; e < 30; ++e) {
    EXPECT_EQ(g.pow(e), acc);
    acc = acc * g;
  }
  EXPECT_EQ(g.pow(24), f.one());  // |F_25^×| = 24
}
