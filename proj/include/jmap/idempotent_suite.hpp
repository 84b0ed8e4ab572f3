#ifndef JMAP_IDEMPOTENT_SUITE_HPP
#define JMAP_IDEMPOTENT_SUITE_HPP

// Consequences of ∘-multiplicativity on idempotents, checked on "frames":
// mutually orthogonal rank-one idempotents P_j = S E_jj S^-1 and their
// subset sums P_A.
//
//   (a) φ(P) is idempotent
//   (b) P <= Q  =>  φ(P) <= φ(Q)
//   (c) P ⊥ Q   =>  φ(P) ⊥ φ(Q)                      φ(0) = 0, φ != 0
//   (d) r(φ(P)) >= r(P)                               φ(0) = 0, φ != 0
//   (e) r(φ(P)) = r(P)                                also m = n
//   (f) φ(I - P) = I - φ(P)                           also m = n
//   (g) P ⊥ Q   =>  φ(P + Q) = φ(P) + φ(Q)            also m = n
//   (h) φ(Σ λ_j P_j) = Σ φ(λ_j P_j)                   also m = n

#include <array>
#include <bit>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jmap/jordan_map.hpp"
#include "jmap/random.hpp"

namespace jmap {

struct ItemWitness {
  std::string relation;
  std::vector<std::pair<std::string, Mat>> mats;
};

struct ItemReport {
  char item = 'a';
  bool applicable = true;
  std::string precondition;  // why the item was skipped
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::optional<ItemWitness> witness;  // first failure

  bool passed() const { return failures == 0; }
};

struct IdempotentSuiteReport {
  std::array<ItemReport, 8> items;
  std::vector<Mat> inputs;  // every matrix φ was evaluated on, first-use order

  bool all_passed() const {
    for (const auto& r : items) {
      if (!r.passed()) return false;
    }
    return true;
  }
  std::optional<char> first_failure() const {
    for (const auto& r : items) {
      if (!r.passed()) return r.item;
    }
    return std::nullopt;
  }
};

namespace detail {

class SuiteRun {
 public:
  SuiteRun(const JordanMap& phi, IdempotentSuiteReport& report) : phi_(phi), report_(report) {}

  Mat eval(const Mat& x) {
    if (seen_.insert(x.key()).second) report_.inputs.push_back(x);
    return phi_(x);
  }

  void record(char item, bool ok, const std::string& relation, std::vector<std::pair<std::string, Mat>> mats) {
    auto& r = report_.items[static_cast<std::size_t>(item - 'a')];
    ++r.checks;
    if (ok) return;
    ++r.failures;
    if (!r.witness) r.witness = ItemWitness{relation, std::move(mats)};
  }

 private:
  const JordanMap& phi_;
  IdempotentSuiteReport& report_;
  std::set<std::string> seen_;
};

inline bool idem_le(const Mat& p, const Mat& q) { return p * q == p && q * p == p; }
inline bool idem_perp(const Mat& p, const Mat& q) { return (p * q).is_zero() && (q * p).is_zero(); }

}  // namespace detail

// `frames` orthogonal frames: the first uses S = I, the rest random S.
inline IdempotentSuiteReport idempotent_suite(const JordanMap& map, std::size_t frames, std::uint64_t seed) {
  const JordanMap phi = map.mode() == Product::diamond ? diamond_to_circ(map) : map;
  const Field& f = phi.field();
  if (f.is_char2()) throw Unsupported("the suite needs characteristic != 2");
  const std::size_t n = phi.n();
  const std::size_t m = phi.m();
  if (n > 12) throw Unsupported("frames enumerate subsets; n is limited to 12");

  IdempotentSuiteReport report;
  for (std::size_t t = 0; t < report.items.size(); ++t) report.items[t].item = static_cast<char>('a' + t);
  detail::SuiteRun run(phi, report);
  Rng rng(seed);

  const Mat zero = Mat::zero(f, n);
  const Mat id_n = Mat::identity(f, n);
  const Mat id_m = Mat::identity(f, m);
  const Mat phi0 = run.eval(zero);
  const bool nonzero_map = !run.eval(id_n).is_zero() || !phi0.is_zero();
  const bool reduced = phi0.is_zero() && nonzero_map;
  const bool square = n == m;
  for (char item = 'c'; item <= 'h'; ++item) {
    auto& r = report.items[static_cast<std::size_t>(item - 'a')];
    if (!reduced) {
      r.applicable = false;
      r.precondition = phi0.is_zero() ? "map is zero" : "φ(0) != 0";
    } else if (item >= 'e' && !square) {
      r.applicable = false;
      r.precondition = "target size differs from domain size";
    }
  }
  auto applicable = [&](char item) { return report.items[static_cast<std::size_t>(item - 'a')].applicable; };

  const std::size_t subsets = std::size_t{1} << n;
  for (std::size_t frame = 0; frame < frames; ++frame) {
    const Mat s = frame == 0 ? id_n : random_invertible(f, n, rng);
    const Mat s_inv = s.inverse();
    std::vector<Mat> pj;
    for (std::size_t j = 1; j <= n; ++j) pj.push_back(s * Mat::unit(f, n, j, j) * s_inv);

    std::vector<Mat> p(subsets, zero);
    std::vector<Mat> fp;
    for (std::size_t a = 0; a < subsets; ++a) {
      for (std::size_t j = 0; j < n; ++j) {
        if (a >> j & 1U) p[a] = p[a] + pj[j];
      }
      fp.push_back(run.eval(p[a]));
    }

    for (std::size_t a = 0; a < subsets; ++a) {
      const auto rank_a = static_cast<std::size_t>(std::popcount(a));
      run.record('a', fp[a].is_idempotent(), "φ(P) idempotent", {{"P", p[a]}, {"phi(P)", fp[a]}});
      if (applicable('d') && a != 0) {
        run.record('d', fp[a].rank() >= rank_a, "r(φ(P)) >= r(P)", {{"P", p[a]}, {"phi(P)", fp[a]}});
      }
      if (applicable('e')) {
        run.record('e', fp[a].rank() == rank_a, "r(φ(P)) = r(P)", {{"P", p[a]}, {"phi(P)", fp[a]}});
      }
      if (applicable('f')) {
        const std::size_t comp = (subsets - 1) ^ a;
        run.record('f', fp[comp] == id_m - fp[a], "φ(I - P) = I - φ(P)",
                   {{"P", p[a]}, {"phi(I-P)", fp[comp]}, {"I-phi(P)", id_m - fp[a]}});
      }
      for (std::size_t b = 0; b < subsets; ++b) {
        if ((a & b) == a) {
          run.record('b', detail::idem_le(fp[a], fp[b]), "P <= Q => φ(P) <= φ(Q)",
                     {{"P", p[a]}, {"Q", p[b]}, {"phi(P)", fp[a]}, {"phi(Q)", fp[b]}});
        }
        if ((a & b) == 0) {
          if (applicable('c')) {
            run.record('c', detail::idem_perp(fp[a], fp[b]), "P ⊥ Q => φ(P) ⊥ φ(Q)",
                       {{"P", p[a]}, {"Q", p[b]}, {"phi(P)", fp[a]}, {"phi(Q)", fp[b]}});
          }
          if (applicable('g')) {
            run.record('g', fp[a | b] == fp[a] + fp[b], "P ⊥ Q => φ(P + Q) = φ(P) + φ(Q)",
                       {{"P", p[a]}, {"Q", p[b]}, {"phi(P+Q)", fp[a | b]}, {"phi(P)+phi(Q)", fp[a] + fp[b]}});
          }
        }
      }
    }

    if (applicable('h')) {
      for (int round = 0; round < 2; ++round) {
        Mat combo = zero;
        Mat parts = Mat::zero(f, m);
        std::vector<std::pair<std::string, Mat>> mats;
        for (std::size_t j = 0; j < n; ++j) {
          const Scalar lambda = random_scalar(f, rng);
          const Mat term = lambda * pj[j];
          combo = combo + term;
          parts = parts + run.eval(term);
          mats.emplace_back("lambda_" + std::to_string(j + 1) + " P_" + std::to_string(j + 1), term);
        }
        const Mat whole = run.eval(combo);
        mats.emplace_back("phi(sum)", whole);
        mats.emplace_back("sum phi", parts);
        run.record('h', whole == parts, "φ(Σ λ_j P_j) = Σ φ(λ_j P_j)", std::move(mats));
      }
    }
  }
  return report;
}

// φ with one entry of φ(target) shifted by delta.
inline JordanMap mutate_entry(const JordanMap& phi, const Mat& target, std::size_t row, std::size_t col,
                              const Scalar& delta) {
  if (row >= phi.m() || col >= phi.m()) throw InvalidArgument("mutation entry outside the target matrix");
  const std::string key = target.key();
  return JordanMap::oracle(phi.field(), phi.n(), phi.m(), phi.mode(), [phi, key, row, col, delta](const Mat& x) {
    Mat y = phi(x);
    if (x.key() != key) return y;
    return y.with(row, col, y(row, col) + delta);
  });
}

struct MutationOutcome {
  Mat target;
  std::size_t row = 0;
  std::size_t col = 0;
  Scalar delta;
  std::optional<char> caught_by;  // first failing item
};

struct MutationScan {
  std::vector<MutationOutcome> outcomes;
  std::array<std::uint64_t, 8> caught_per_item{};  // every failing item counts

  std::size_t detected() const {
    std::size_t d = 0;
    for (const auto& o : outcomes) d += o.caught_by ? 1 : 0;
    return d;
  }
  std::vector<const MutationOutcome*> survivors() const {
    std::vector<const MutationOutcome*> out;
    for (const auto& o : outcomes) {
      if (!o.caught_by) out.push_back(&o);
    }
    return out;
  }
};

// `count` single-entry mutations of φ at inputs the suite evaluates.
inline MutationScan mutation_scan(const JordanMap& phi, std::size_t count, std::size_t frames, std::uint64_t seed) {
  const IdempotentSuiteReport base = idempotent_suite(phi, frames, seed);
  if (base.inputs.empty()) throw InvalidArgument("suite evaluated no inputs");
  const Field& f = phi.field();
  Rng rng(seed ^ 0x6d75746174696f6eULL);
  MutationScan scan;
  for (std::size_t t = 0; t < count; ++t) {
    const Mat& target = base.inputs[rng.below(base.inputs.size())];
    const auto row = static_cast<std::size_t>(rng.below(phi.m()));
    const auto col = static_cast<std::size_t>(rng.below(phi.m()));
    const Scalar delta = random_nonzero_scalar(f, rng);
    const IdempotentSuiteReport r = idempotent_suite(mutate_entry(phi, target, row, col, delta), frames, seed);
    for (std::size_t i = 0; i < r.items.size(); ++i) {
      if (!r.items[i].passed()) ++scan.caught_per_item[i];
    }
    scan.outcomes.push_back({target, row, col, delta, r.first_failure()});
  }
  return scan;
}

}  // namespace jmap

#endif  // JMAP_IDEMPOTENT_SUITE_HPP
