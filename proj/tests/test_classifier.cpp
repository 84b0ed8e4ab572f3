#include <gtest/gtest.h>

#include <cstdlib>

#include "jmap/classifier.hpp"

using namespace jmap;

namespace {

CanonicalForm conj_form(const Mat& t, const RingEndo& w, bool transpose, Product mode = Product::circ) {
  return {ConjugationForm{t, w, transpose}, mode, t.field(), t.rows(), t.rows()};
}

// First (i, j) in index order with φ(X_i∘X_j) != φ(X_i)∘φ(X_j).
std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_first_violation(const JordanMap& phi) {
  const Field& f = phi.field();
  const std::uint64_t size = *Mat::domain_size(f, phi.n(), phi.n());
  for (std::uint64_t i = 0; i < size; ++i) {
    const Mat x = Mat::from_index(f, phi.n(), phi.n(), i);
    for (std::uint64_t j = 0; j < size; ++j) {
      const Mat y = Mat::from_index(f, phi.n(), phi.n(), j);
      if (!(phi(jordan_product(phi.mode(), x, y)) == jordan_product(phi.mode(), phi(x), phi(y)))) {
        return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

void expect_genuine_witness(const JordanMap& phi, const Violation& v) {
  EXPECT_NE(phi(jordan_product(phi.mode(), v.x, v.y)), jordan_product(phi.mode(), phi(v.x), phi(v.y)));
  EXPECT_EQ(v.lhs, phi(jordan_product(phi.mode(), v.x, v.y)));
}

// Runs classify and checks it rejects with a real witness or a named stage.
void expect_rejected(const JordanMap& phi, const Strategy& s) {
  try {
    classify(phi, s);
    ADD_FAILURE() << "map was classified";
  } catch (const NotJordanMultiplicative& e) {
    expect_genuine_witness(phi, e.witness());
  } catch (const InvariantViolation& e) {
    EXPECT_FALSE(e.stage().empty());
  }
}

class ThreadsEnv {
 public:
  explicit ThreadsEnv(const char* v) { ::setenv("JF_THREADS", v, 1); }
  ~ThreadsEnv() { ::unsetenv("JF_THREADS"); }
};

}  // namespace

TEST(Strategy, ParseAndPrint) {
  EXPECT_TRUE(Strategy::parse("exhaustive").is_exhaustive());
  const Strategy s = Strategy::parse("sampled:50:7");
  EXPECT_EQ(s.count, 50U);
  EXPECT_EQ(s.seed, 7U);
  EXPECT_EQ(s.to_string(), "sampled:50:7");
  EXPECT_EQ(Strategy::parse(s.to_string()).to_string(), s.to_string());
  EXPECT_EQ(Strategy::parse("sampled", 9).to_string(), "sampled:1000:9");
  EXPECT_EQ(Strategy::parse("sampled:20", 9).to_string(), "sampled:20:9");
  EXPECT_THROW(Strategy::parse("sampled:x"), InvalidArgument);
  EXPECT_THROW(Strategy::parse("sampled:1:2:3"), InvalidArgument);
  EXPECT_THROW(Strategy::parse("random"), InvalidArgument);
}

TEST(Multiplicativity, IdentityOnM2F3Exhaustive) {
  const Field f = Field::prime(3);
  const auto r = check_multiplicative(JordanMap::conjugation(Mat::identity(f, 2), RingEndo::identity(f), false,
                                                             Product::circ),
                                      Strategy::exhaustive());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.domain_size, 81U);
  EXPECT_EQ(r.pairs_checked, 6561U);
  EXPECT_NE(r.qualifier().find("6561"), std::string::npos);
}

TEST(Multiplicativity, MinimalViolationIndependentOfThreads) {
  const Field f = Field::prime(3);
  const Mat bumped = Mat::from_ints(f, {{1, 2}, {0, 1}});
  const JordanMap phi = JordanMap::tabulate(f, 2, 2, Product::circ, [&](const Mat& x) {
    return x == bumped ? Mat::identity(f, 2) : x;
  });
  const auto expected = brute_first_violation(phi);
  ASSERT_TRUE(expected);
  for (const char* threads : {"1", "3", "8"}) {
    ThreadsEnv env(threads);
    const auto r = check_multiplicative(phi, Strategy::exhaustive());
    ASSERT_FALSE(r.passed());
    EXPECT_EQ(r.violation->x.index(), expected->first) << threads;
    EXPECT_EQ(r.violation->y.index(), expected->second) << threads;
    EXPECT_EQ(r.pairs_checked, expected->first * 81 + expected->second + 1);
    expect_genuine_witness(phi, *r.violation);
  }
}

TEST(Multiplicativity, SampledIsSeeded) {
  const Field f = Field::prime(7);
  const JordanMap phi = JordanMap::oracle(f, 2, 2, Product::circ, [](const Mat& x) { return x * x; });
  const auto a = check_multiplicative(phi, Strategy::sampled(200, 4));
  const auto b = check_multiplicative(phi, Strategy::sampled(200, 4));
  ASSERT_FALSE(a.passed());
  EXPECT_EQ(a.violation->x, b.violation->x);
  EXPECT_EQ(a.violation->y, b.violation->y);
  EXPECT_NE(a.qualifier().find("not a proof"), std::string::npos);
}

TEST(Multiplicativity, Limits) {
  const Field f = Field::prime(5);
  const JordanMap phi = JordanMap::constant(2, Mat::zero(f, 2), Product::circ);
  EXPECT_THROW(check_multiplicative(phi, Strategy::exhaustive()), Unsupported);
  Limits lim;
  lim.max_domain = 625;
  EXPECT_TRUE(check_multiplicative(phi, Strategy::exhaustive(), lim).passed());
  EXPECT_THROW(check_multiplicative(JordanMap::constant(2, Mat::zero(Field::rational(), 2), Product::circ),
                                    Strategy::exhaustive()),
               Unsupported);
  EXPECT_THROW(check_multiplicative(JordanMap::constant(2, Mat::zero(Field::prime(2), 2), Product::circ),
                                    Strategy::sampled(10, 1)),
               Unsupported);
}

TEST(Classifier, ConstantIdempotentOverF5) {
  const Field f = Field::prime(5);
  const Mat e11 = Mat::unit(f, 2, 1, 1);
  const auto c = classify(JordanMap::constant(2, e11, Product::circ), Strategy::sampled(300, 1));
  ASSERT_TRUE(c.form.is_constant());
  EXPECT_EQ(c.form.constant().p, e11);
  EXPECT_FALSE(c.exhaustive());
  EXPECT_NE(c.qualifier().find("consistent"), std::string::npos);
}

TEST(Classifier, ZeroMap) {
  const Field f = Field::prime(3);
  const auto c = classify(JordanMap::constant(2, Mat::zero(f, 2), Product::circ), Strategy::exhaustive());
  EXPECT_TRUE(c.form.is_zero());
  EXPECT_TRUE(c.exhaustive());
}

TEST(Classifier, EveryConstantIdempotentOverF3) {
  const Field f = Field::prime(3);
  for (std::uint64_t i = 0; i < 81; ++i) {
    const Mat p = Mat::from_index(f, 2, 2, i);
    if (!p.is_idempotent()) continue;
    const auto c = classify(JordanMap::constant(2, p, Product::circ), Strategy::exhaustive());
    if (p.is_zero()) {
      EXPECT_TRUE(c.form.is_zero());
    } else {
      ASSERT_TRUE(c.form.is_constant());
      EXPECT_EQ(c.form.constant().p, p);
    }
  }
  // non-idempotent constants are not multiplicative
  expect_rejected(JordanMap::constant(2, Mat::unit(f, 2, 1, 2), Product::circ), Strategy::exhaustive());
}

TEST(Classifier, TransposeRoundTripOverF3) {
  const Field f = Field::prime(3);
  const Mat t = Mat::from_ints(f, {{1, 1}, {0, 1}});
  const CanonicalForm src = conj_form(t, RingEndo::identity(f), true);
  const JordanMap phi = JordanMap::tabulate(f, 2, 2, Product::circ, [&](const Mat& x) {
    return t * x.transpose() * t.inverse();
  });
  const auto c = classify(phi, Strategy::exhaustive());
  ASSERT_TRUE(c.form.is_conjugation());
  EXPECT_TRUE(c.form.conjugation().transpose);
  EXPECT_TRUE(forms_equivalent(c.form, src));
  ASSERT_TRUE(c.orientation);
  EXPECT_TRUE(c.orientation->direct.empty());
  const JordanMap back = c.form.to_map();
  for (std::uint64_t i = 0; i < 81; ++i) {
    const Mat x = Mat::from_index(f, 2, 2, i);
    EXPECT_EQ(back(x), phi(x));
  }
}

TEST(Classifier, RandomConjugationsRoundTrip) {
  Rng rng(23);
  const Field f9 = Field::galois(3, {1, 0, 1});
  for (const Field& f : {Field::rational(), Field::prime(7), f9}) {
    const auto endos = enumerate_endomorphisms(f);
    for (std::size_t n : {2, 3}) {
      for (int t = 0; t < 4; ++t) {
        const CanonicalForm src =
            conj_form(random_invertible(f, n, rng), endos[rng.below(endos.size())], rng.coin());
        const auto c = classify(src.to_map(), Strategy::sampled(150, t));
        EXPECT_TRUE(forms_equivalent(c.form, src)) << f.name() << " n = " << n;
      }
    }
  }
}

TEST(Classifier, FrobeniusIsRecovered) {
  const Field f = Field::galois(3, {1, 0, 1});
  const CanonicalForm src = conj_form(Mat::identity(f, 2), RingEndo::frobenius(f, 1), false);
  const auto c = classify(src.to_map(), Strategy::sampled(200, 3));
  ASSERT_TRUE(c.form.is_conjugation());
  EXPECT_EQ(c.form.conjugation().omega, RingEndo::frobenius(f, 1));
  EXPECT_EQ(c.form.conjugation().t, Mat::identity(f, 2));
}

TEST(Classifier, DiamondModeKeepsItsTag) {
  const Field f = Field::prime(5);
  const Mat p = Mat::from_ints(f, {{1, 1}, {0, 0}});
  const auto c = classify(JordanMap::constant(2, f.from_int(2).inv() * p, Product::diamond),
                          Strategy::sampled(200, 5));
  ASSERT_TRUE(c.form.is_constant());
  EXPECT_EQ(c.form.constant().p, p);
  EXPECT_EQ(c.form.mode, Product::diamond);

  const Mat t = Mat::from_ints(f, {{2, 1}, {1, 1}});
  const CanonicalForm src = conj_form(t, RingEndo::identity(f), false, Product::diamond);
  const auto d = classify(src.to_map(), Strategy::sampled(200, 5));
  EXPECT_TRUE(forms_equivalent(d.form, src));
}

TEST(Classifier, DiamondToCircFormula) {
  const Field f = Field::prime(7);
  const Mat p = Mat::unit(f, 2, 2, 2);
  const JordanMap phi = JordanMap::oracle(f, 2, 2, Product::diamond, [&](const Mat& x) { return x + p; });
  const JordanMap psi = diamond_to_circ(phi);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Mat x = random_matrix(f, 2, 2, rng);
    EXPECT_EQ(psi(x), f.from_int(2) * phi(f.from_int(2).inv() * x));
  }
  EXPECT_THROW(diamond_to_circ(psi), InvalidArgument);
}

TEST(Classifier, MixedOrientationRejected) {
  const Field f = Field::prime(5);
  // direct on E_12, transposed on E_21
  const JordanMap phi = JordanMap::oracle(f, 2, 2, Product::circ, [&](const Mat& x) {
    Mat y = Mat::zero(f, 2);
    y = y.with(0, 0, x(0, 0)).with(1, 1, x(1, 1)).with(0, 1, x(0, 1)).with(0, 1, x(0, 1) + x(1, 0));
    return y;
  });
  expect_rejected(phi, Strategy::sampled(100, 1));
}

TEST(Classifier, BrokenTransitivityRejected) {
  const Field f = Field::prime(5);
  const JordanMap genuine = JordanMap::conjugation(Mat::identity(f, 3), RingEndo::identity(f), false, Product::circ);
  const Mat e12 = Mat::unit(f, 3, 1, 2);
  const JordanMap phi = JordanMap::oracle(f, 3, 3, Product::circ, [&](const Mat& x) {
    return x == e12 ? f.from_int(2) * e12 : genuine(x);
  });
  expect_rejected(phi, Strategy::sampled(50, 2));
}

TEST(Classifier, SquaringRejected) {
  const Field f = Field::prime(3);
  expect_rejected(JordanMap::tabulate(f, 2, 2, Product::circ, [](const Mat& x) { return x * x; }),
                  Strategy::exhaustive());
}

TEST(Classifier, OrientationClosureOnlyTrivial) {
  for (std::size_t n : {3, 4}) {
    const auto all = OrientationSet::off_diagonal(n);
    const std::vector<IndexPair> pairs(all.begin(), all.end());
    for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
      std::set<IndexPair> s;
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if (mask >> b & 1U) s.insert(pairs[b]);
      }
      EXPECT_EQ(OrientationSet::closed(s, n), s.empty() || s == all) << "n = " << n << " mask = " << mask;
    }
  }
}

TEST(Classifier, RectangularTargets) {
  const Field f = Field::prime(3);
  const Mat one = Mat::identity(f, 1);
  auto c = classify(JordanMap::oracle(f, 2, 1, Product::circ, [&](const Mat&) { return one; }), Strategy::exhaustive());
  ASSERT_TRUE(c.form.is_constant());
  EXPECT_EQ(c.form.constant().p, one);
  c = classify(JordanMap::constant(2, Mat::zero(f, 1), Product::circ), Strategy::exhaustive());
  EXPECT_TRUE(c.form.is_zero());

  const JordanMap corner = JordanMap::oracle(f, 2, 1, Product::circ, [&](const Mat& x) {
    return Mat::diagonal(f, {x(0, 0)});
  });
  try {
    classify(corner, Strategy::exhaustive());
    ADD_FAILURE() << "X -> X_11 classified";
  } catch (const NotJordanMultiplicative& e) {
    expect_genuine_witness(corner, e.witness());
  }
}

TEST(Classifier, UnsupportedInputs) {
  const Field f = Field::prime(3);
  EXPECT_THROW(classify(JordanMap::constant(1, Mat::zero(f, 1), Product::circ), Strategy::exhaustive()), Unsupported);
  EXPECT_THROW(classify(JordanMap::constant(2, Mat::zero(f, 3), Product::circ), Strategy::exhaustive()), Unsupported);
  const Field f2 = Field::prime(2);
  EXPECT_THROW(classify(JordanMap::constant(2, Mat::zero(f2, 2), Product::diamond), Strategy::exhaustive()),
               Unsupported);
}

TEST(Classifier, FormsEquivalence) {
  const Field f = Field::prime(5);
  const Mat t = Mat::from_ints(f, {{1, 2}, {0, 1}});
  const RingEndo id = RingEndo::identity(f);
  EXPECT_TRUE(forms_equivalent(conj_form(t, id, false), conj_form(f.from_int(3) * t, id, false)));
  EXPECT_FALSE(forms_equivalent(conj_form(t, id, false), conj_form(t, id, true)));
  EXPECT_FALSE(forms_equivalent(conj_form(t, id, false), conj_form(Mat::identity(f, 2), id, false)));
  EXPECT_FALSE(forms_equivalent(conj_form(t, id, false), conj_form(t, id, false, Product::diamond)));
  const CanonicalForm zero{ZeroForm{}, Product::circ, f, 2, 2};
  const CanonicalForm e11{ConstantForm{Mat::unit(f, 2, 1, 1)}, Product::circ, f, 2, 2};
  EXPECT_TRUE(forms_equivalent(zero, zero));
  EXPECT_FALSE(forms_equivalent(zero, e11));
}

TEST(JordanMap, EvaluationAndDomain) {
  const Field f = Field::prime(5);
  const JordanMap tr = JordanMap::conjugation(Mat::identity(f, 2), RingEndo::identity(f), true, Product::circ);
  EXPECT_EQ(tr(Mat::unit(f, 2, 1, 2)), Mat::unit(f, 2, 2, 1));
  EXPECT_THROW(tr(Mat::unit(f, 3, 1, 2)), DomainError);
  EXPECT_THROW(tr(Mat::identity(Field::prime(7), 2)), DomainError);
  EXPECT_THROW(JordanMap::conjugation(Mat::zero(f, 2), RingEndo::identity(f), false, Product::circ), InvalidArgument);

  int calls = 0;
  const JordanMap memo = JordanMap::oracle(f, 2, 2, Product::circ, [&](const Mat& x) {
    ++calls;
    return x;
  });
  memo(Mat::identity(f, 2));
  memo(Mat::identity(f, 2));
  EXPECT_EQ(calls, 1);
}

TEST(JordanMap, TableValidation) {
  const Field f = Field::prime(3);
  std::vector<std::pair<Mat, Mat>> entries;
  for (std::uint64_t i = 0; i < 81; ++i) {
    const Mat x = Mat::from_index(f, 2, 2, i);
    entries.emplace_back(x, x);
  }
  EXPECT_NO_THROW(JordanMap::table(f, 2, 2, Product::circ, entries));
  auto dup = entries;
  dup.back() = entries.front();
  EXPECT_THROW(JordanMap::table(f, 2, 2, Product::circ, dup), InvalidArgument);
  entries.pop_back();
  EXPECT_THROW(JordanMap::table(f, 2, 2, Product::circ, entries), InvalidArgument);
}
