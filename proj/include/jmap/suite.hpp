#ifndef JMAP_SUITE_HPP
#define JMAP_SUITE_HPP

// The acceptance battery: ten exact, seeded checks, each with a runtime limit.

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "jmap/commands.hpp"

namespace jmap::suite {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool correct = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;

  bool within_limit() const { return seconds < limit_seconds; }
  bool passed() const { return correct && within_limit(); }
};

struct Config {
  std::uint64_t seed = 20260101;
};

using Check = std::pair<bool, std::string>;
using io::json;

namespace detail {

inline Mat ints(const Field& f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return Mat::from_ints(f, rows);
}

// D_r as a 5x5 rational matrix.
inline Mat d5(const Field& q, std::size_t r) {
  std::vector<Scalar> d(5, q.zero());
  for (std::size_t j = 0; j < r; ++j) d[j] = q.one();
  return Mat::diagonal(q, d);
}

inline Check worked_example(std::uint64_t seed) {
  const Field q = Field::rational();
  Rng rng(seed);
  std::vector<Scalar> e;
  for (int t = 0; t < 25; ++t) e.push_back(random_nonzero_scalar(q, rng));
  const Mat x(q, 5, 5, std::move(e));
  json doc = io::to_json(x);
  doc["field"] = io::to_json(q);
  const cli::Outcome out = cli::cmd_certify(doc, std::nullopt);
  if (out.exit_code != cli::kOk) return {false, "certify exited with " + std::to_string(out.exit_code)};
  const Certificate c = io::certificate_from_json(out.body.at("certificate"));
  if (!(c.start == x)) return {false, "certificate start differs from X"};
  if (const auto r = replay(c); !r) return {false, "replay failed: " + r.reason};

  std::vector<Mat> targets{Mat::unit(q, 5, 1, 1)};
  for (std::size_t r = 2; r <= 5; ++r) targets.push_back(d5(q, r));
  std::size_t next = 0;
  for (const auto& s : c.steps) {
    if (next < targets.size() && s.result == targets[next]) ++next;
  }
  if (next != targets.size()) return {false, "chain misses D_" + std::to_string(next + 1)};

  // Ladder matrices and intermediate products, as displayed for n = 5.
  struct Display {
    std::size_t r;
    Mat a, b, ab, c;
  };
  const std::vector<Display> display{
      {2, ints(q, {{1, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, -4, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, -2, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 0, 0, 0}, {-1, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}})},
      {3, ints(q, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 4, 0, 0}, {0, -1, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 2, 0, 0}, {0, -1, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 0, 0, 0}, {0, -1, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}})},
      {4, ints(q, {{1, 0, 0, 0, 0}, {-2, 1, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 0, 4, 0}, {0, 0, -4, 8, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 0, 2, 0}, {0, 0, -2, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, -1, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 0, 0}})},
      {5, ints(q, {{1, 0, 0, 0, 0}, {-2, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 0, 0, 4}, {0, 0, 0, 4, 8}, {0, 0, -1, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 0, 0, 2}, {0, 0, 0, 2, 0}, {0, 0, -1, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}),
       ints(q, {{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, -1, 0, 0}, {0, 1, 0, 0, 0}, {1, 0, 0, 0, 0}})},
  };
  for (const auto& d : display) {
    const LadderCoefficients lad = ladder(q, 5, d.r);
    const std::string tag = "r = " + std::to_string(d.r);
    if (!(lad.a == d.a) || !(lad.b == d.b) || !(lad.c == d.c)) return {false, "ladder differs from display at " + tag};
    if (!(jordan_circ(lad.a, lad.b) == d.ab)) return {false, "A∘B differs from display at " + tag};
    if (!(jordan_circ(d.ab, lad.c) == d5(q, d.r))) return {false, "(A∘B)∘C != D at " + tag};
    // the certificate visits A_r∘B_r on its way to D_r
    bool seen = false;
    for (const auto& s : c.steps) seen = seen || s.result == d.ab;
    if (!seen) return {false, "certificate skips the displayed A∘B at " + tag};
  }
  return {true, std::to_string(c.steps.size()) + " steps; E_11, D_2..D_5 reached; 4 ladder displays match"};
}

inline Check exhaustive_certification() {
  std::ostringstream detail;
  for (const std::uint64_t p : {3, 5}) {
    const Field f = Field::prime(p);
    const auto size = *Mat::domain_size(f, 2, 2);
    std::uint64_t ok = 0;
    std::size_t longest = 0;
    for (std::uint64_t i = 1; i < size; ++i) {
      const Certificate c = certify_identity(Mat::from_index(f, 2, 2, i));
      if (!replay(c)) return {false, "replay failed for index " + std::to_string(i) + " over " + f.name()};
      longest = std::max(longest, c.steps.size());
      ++ok;
    }
    detail << (p == 3 ? "" : "; ") << f.name() << ": " << ok << " certificates (max " << longest << " steps)";
  }
  return {true, detail.str()};
}

inline Check ladder_identity() {
  std::uint64_t cases = 0;
  for (const Field& f : {Field::rational(), Field::prime(3), Field::prime(5), Field::prime(7)}) {
    for (std::size_t n = 2; n <= 8; ++n) {
      for (std::size_t r = 2; r <= n; ++r) {
        const LadderCoefficients lad = ladder(f, n, r);
        if (!(jordan_circ(jordan_circ(lad.a, lad.b), lad.c) == lad.d)) {
          return {false, "identity fails over " + f.name() + " at n = " + std::to_string(n) + ", r = " + std::to_string(r)};
        }
        ++cases;
      }
    }
  }
  // p_j vanishes in characteristic 3 from j = 3 on.
  const LadderCoefficients l3 = ladder(Field::prime(3), 8, 8);
  for (std::size_t j = 3; j <= l3.weights.size(); ++j) {
    if (!l3.weights[j - 1].is_zero()) return {false, "p_" + std::to_string(j) + " is nonzero over F_3"};
  }
  return {true, std::to_string(cases) + " (field, n, r) cases; p_j = 0 over F_3 for j >= 3"};
}

inline std::vector<Field> roundtrip_fields() {
  return {Field::prime(3), Field::prime(5), Field::prime(7), io::parse_field("F9")};
}

inline Check classification_roundtrip(std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t maps = 0;
  std::uint64_t exhaustive_maps = 0;
  const std::size_t per_combo = 10;
  for (const Field& f : roundtrip_fields()) {
    for (std::size_t n : {2, 3}) {
      for (bool transpose : {false, true}) {
        for (const RingEndo& w : enumerate_endomorphisms(f)) {
          for (std::size_t t = 0; t < per_combo; ++t) {
            const Mat tm = random_invertible(f, n, rng);
            const CanonicalForm input{ConjugationForm{tm, w, transpose}, Product::circ, f, n, n};
            const JordanMap phi = input.to_map();
            const Strategy s = cli::default_strategy(phi, rng.below(1U << 30), Limits{});
            const Classification c = classify(phi, s);
            if (!forms_equivalent(input, c.form)) {
              return {false, "round trip failed over " + f.name() + " n = " + std::to_string(n)};
            }
            if (s.is_exhaustive()) {
              const JordanMap back = c.form.to_map();
              for (std::uint64_t i = 0; i < *Mat::domain_size(f, n, n); ++i) {
                const Mat x = Mat::from_index(f, n, n, i);
                if (!(back(x) == phi(x))) return {false, "map equality fails at " + x.to_string()};
              }
              ++exhaustive_maps;
            }
            ++maps;
          }
        }
      }
    }
  }
  return {maps >= 200 && exhaustive_maps > 0,
          std::to_string(maps) + " maps recovered (" + std::to_string(exhaustive_maps) +
              " checked on all 81 inputs of M_2(F_3))"};
}

inline Check constant_dichotomy(std::uint64_t seed) {
  const Field f = Field::prime(3);
  const std::uint64_t size = *Mat::domain_size(f, 2, 2);
  std::vector<Mat> idempotents;
  for (std::uint64_t i = 0; i < size; ++i) {
    const Mat p = Mat::from_index(f, 2, 2, i);
    if (p * p == p) idempotents.push_back(p);
  }
  for (const auto& p : idempotents) {
    const JordanMap phi = JordanMap::tabulate(f, 2, 2, Product::circ, [&](const Mat&) { return p; });
    const Classification c = classify(phi, Strategy::exhaustive());
    const bool ok = p.is_zero() ? c.form.is_zero() : (c.form.is_constant() && c.form.constant().p == p);
    if (!ok) return {false, "constant " + p.to_string() + " classified as " + c.form.variant_name()};
  }
  Rng rng(seed);
  const Mat p = Mat::unit(f, 2, 1, 1);
  const std::uint64_t altered = 1 + rng.below(size - 1);
  const JordanMap bad = JordanMap::tabulate(f, 2, 2, Product::circ, [&](const Mat& x) {
    return x.index() == altered ? Mat::identity(f, 2) : p;
  });
  try {
    classify(bad, Strategy::exhaustive());
  } catch (const NotJordanMultiplicative& e) {
    const auto& w = e.witness();
    const bool replays = bad(jordan_circ(w.x, w.y)) == w.lhs && jordan_circ(bad(w.x), bad(w.y)) == w.rhs &&
                         !(w.lhs == w.rhs);
    return {replays, std::to_string(idempotents.size()) + " idempotents classified; altered map rejected at X = " +
                         w.x.to_string() + ", Y = " + w.y.to_string()};
  }
  return {false, "altered constant map was accepted"};
}

inline std::vector<JordanMap> genuine_maps(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Field> fields = roundtrip_fields();
  fields.push_back(Field::rational());
  std::vector<JordanMap> out;
  for (std::size_t t = 0; t < count; ++t) {
    const Field& f = fields[t % fields.size()];
    const std::size_t n = 2 + rng.below(2);
    const auto endos = enumerate_endomorphisms(f);
    out.push_back(JordanMap::conjugation(random_invertible(f, n, rng), endos[rng.below(endos.size())], rng.coin(),
                                         Product::circ));
  }
  return out;
}

inline Check idempotent_items(std::uint64_t seed) {
  const auto maps = genuine_maps(100, seed);
  constexpr std::size_t kFrames = 3;
  for (std::size_t t = 0; t < maps.size(); ++t) {
    const auto r = idempotent_suite(maps[t], kFrames, seed + t);
    for (const auto& it : r.items) {
      if (!it.applicable || !it.passed()) {
        return {false, "genuine map " + std::to_string(t) + " fails item (" + std::string(1, it.item) + ")"};
      }
    }
  }
  std::size_t detected = 0;
  std::array<std::uint64_t, 8> per_item{};
  std::vector<std::string> survivors;
  for (std::size_t t = 0; t < 100; ++t) {
    const MutationScan scan = mutation_scan(maps[t], 1, kFrames, seed + t);
    detected += scan.detected();
    for (std::size_t i = 0; i < 8; ++i) per_item[i] += scan.caught_per_item[i];
    for (const auto* s : scan.survivors()) survivors.push_back("#" + std::to_string(t) + " at " + s->target.to_string());
  }
  std::ostringstream d;
  d << "100 genuine maps pass (a)-(h); mutations detected " << detected << "/100; per item";
  for (std::size_t i = 0; i < 8; ++i) d << " " << static_cast<char>('a' + i) << "=" << per_item[i];
  if (!survivors.empty()) {
    d << "; survivors:";
    for (const auto& s : survivors) d << " " << s;
  }
  return {detected >= 95, d.str()};
}

inline Check char2_examples() {
  const Field f = Field::prime(2);
  const std::vector<std::pair<Mat, Mat>> choices{
      {ints(f, {{1, 0}, {0, 0}}), ints(f, {{0, 1}, {0, 0}})},
      {ints(f, {{1, 1}, {0, 0}}), ints(f, {{1, 0}, {0, 1}})},
      {ints(f, {{0, 0}, {0, 1}}), ints(f, {{1, 0}, {1, 0}})},
      {ints(f, {{1, 1}, {1, 0}}), ints(f, {{1, 1}, {1, 1}})},
  };
  for (const auto& [a, b] : choices) {
    const CounterexampleBundle bundle = char2_example(a, b);
    if (bundle.evidence.pairs_checked != 256 || !bundle.evidence.passed()) {
      return {false, "⋄ scan failed for A = " + a.to_string()};
    }
    if (!bundle.replay()) return {false, "bundle replay failed for A = " + a.to_string()};
  }
  // The same table read in ∘ mode is refused.
  const JordanMap circ = JordanMap::oracle(f, 2, 2, Product::circ, [&](const Mat& x) { return x; });
  try {
    check_multiplicative(circ, Strategy::exhaustive());
    return {false, "∘ mode accepted in characteristic 2"};
  } catch (const Unsupported&) {
  }
  return {true, std::to_string(choices.size()) + " (A, B) choices: 256 pairs each, witnesses replay; ∘ mode refused"};
}

inline Check triangular() {
  const Field f = Field::prime(5);
  const CounterexampleBundle b = triangular_example(f, 2, [](const Scalar& s) { return s * s; });
  const bool ok = b.evidence.pairs_checked == 15625 && b.evidence.passed() && b.replay() &&
                  b.non_additive.x == Mat::unit(f, 2, 1, 1) && b.non_additive.y == Mat::unit(f, 2, 1, 1);
  return {ok, std::to_string(b.evidence.pairs_checked) + " pairs over T_2(F_5); φ(2E_11) = " +
                  b.non_additive.fsum.to_string() + " vs 2φ(E_11) = " +
                  (b.non_additive.fx + b.non_additive.fy).to_string()};
}

inline Check rectangular(std::uint64_t seed) {
  const Field f = Field::prime(3);
  for (std::int64_t v : {0, 1}) {
    const Mat p = ints(f, {{v}});
    const JordanMap phi = JordanMap::tabulate(f, 2, 1, Product::circ, [&](const Mat&) { return p; });
    const Classification c = classify_rectangular(phi, Strategy::exhaustive());
    if (v == 0 ? !c.form.is_zero() : !(c.form.is_constant() && c.form.constant().p == p)) {
      return {false, "constant [" + std::to_string(v) + "] misclassified"};
    }
  }
  Rng rng(seed);
  const JordanMap noisy = JordanMap::tabulate(f, 2, 1, Product::circ, [&](const Mat&) {
    return ints(f, {{static_cast<std::int64_t>(rng.below(3))}});
  });
  try {
    classify_rectangular(noisy, Strategy::exhaustive());
  } catch (const NotJordanMultiplicative& e) {
    const auto& w = e.witness();
    const bool replays = noisy(jordan_circ(w.x, w.y)) == w.lhs && jordan_circ(noisy(w.x), noisy(w.y)) == w.rhs;
    return {replays && !(w.lhs == w.rhs), "constants accepted; seeded table rejected at X = " + w.x.to_string() +
                                              ", Y = " + w.y.to_string()};
  }
  return {false, "non-constant table accepted"};
}

inline Check omega_recovery(std::uint64_t seed) {
  const Field f = io::parse_field("F9");
  const RingEndo frob = RingEndo::frobenius(f, 1);
  const JordanMap phi = JordanMap::oracle(f, 2, 2, Product::circ, [&](const Mat& x) { return x.apply(frob); });
  const Classification c = classify(phi, Strategy::sampled(1000, seed));
  if (!c.form.is_conjugation()) return {false, "classified as " + c.form.variant_name()};
  const auto& conj = c.form.conjugation();
  const auto endos = enumerate_endomorphisms(f);
  const bool matched = std::find(endos.begin(), endos.end(), conj.omega) != endos.end();
  const bool ok = matched && conj.omega == frob && !conj.transpose && conj.t == Mat::identity(f, 2);
  return {ok, "ω = Frobenius e=" + std::to_string(conj.omega.power()) + ", transpose = " +
                  (conj.transpose ? "true" : "false") + ", T = " + conj.t.to_string() + "; " + c.qualifier()};
}

}  // namespace detail

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Check(const Config&)> run;
};

inline std::vector<Criterion> criteria() {
  using namespace detail;
  return {
      {1, "worked n = 5 certificate and ladder displays", 1, [](const Config& c) { return worked_example(c.seed); }},
      {2, "exhaustive certification over M_2(F_3) and M_2(F_5)", 5,
       [](const Config&) { return exhaustive_certification(); }},
      {3, "ladder identity for 2 <= r <= n <= 8 over Q, F_3, F_5, F_7", 5, [](const Config&) { return ladder_identity(); }},
      {4, "classification round trip on structured maps", 60,
       [](const Config& c) { return classification_roundtrip(c.seed); }},
      {5, "constant/zero dichotomy over M_2(F_3)", 5, [](const Config& c) { return constant_dichotomy(c.seed); }},
      {6, "idempotent items (a)-(h) and mutation detection", 60,
       [](const Config& c) { return idempotent_items(c.seed); }},
      {7, "characteristic 2 ⋄ counterexample", 1, [](const Config&) { return char2_examples(); }},
      {8, "triangular counterexample over T_2(F_5)", 5, [](const Config&) { return triangular(); }},
      {9, "rectangular targets m < n", 1, [](const Config& c) { return rectangular(c.seed); }},
      {10, "ω recovery on M_2(F_9) with entrywise Frobenius", 5, [](const Config& c) { return omega_recovery(c.seed); }},
  };
}

inline CriterionResult run_criterion(const Criterion& c, const Config& cfg) {
  CriterionResult r{c.id, c.title, false, "", 0, c.limit_seconds};
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = c.run(cfg);
    r.correct = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::vector<CriterionResult> run_all(const Config& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result = {}) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    out.push_back(run_criterion(c, cfg));
    if (on_result) on_result(out.back());
  }
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << (r.passed() ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << " (" << r.seconds << " s, limit "
     << r.limit_seconds << " s)";
  if (!r.within_limit()) os << " over time limit;";
  os << " " << r.detail;
  return os.str();
}

}  // namespace jmap::suite

#endif  // JMAP_SUITE_HPP
