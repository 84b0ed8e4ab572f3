#ifndef JMAP_GENERATION_HPP
#define JMAP_GENERATION_HPP

// Jordan generation certificates: for any nonzero X in M_n(F), char F != 2,
// an explicit chain (((X∘Y_1)∘Y_2)∘...)∘Y_k = I.
//
// The chain has three phases:
//   1. reach a diagonal unit E_ii from X (4 steps off the diagonal, 2 on it);
//   2. move to E_11 if i != 1 (3 steps);
//   3. climb D_1 = E_11, D_2, ..., D_n = I, where D_r = sum_{j<=r} E_jj, via
//      D_r = (A_r∘B_r)∘C_r; A_r is produced from D_{r-1} by one product
//      whenever it differs from D_{r-1}.

#include <optional>
#include <string>
#include <vector>

#include "jmap/matrix.hpp"

namespace jmap {

struct CertificateStep {
  Mat y;
  Mat result;
};

struct Certificate {
  Mat start;
  std::vector<CertificateStep> steps;

  const Mat& final_result() const { return steps.empty() ? start : steps.back().result; }
};

struct ReplayResult {
  bool ok = true;
  std::optional<std::size_t> failing_step;  // 0-based; == steps.size() when only the final target is wrong
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Recomputes every product exactly and checks the chain ends at I.
inline ReplayResult replay(const Certificate& c) {
  auto fail = [](std::size_t step, std::string why) { return ReplayResult{false, step, std::move(why)}; };
  const Mat& start = c.start;
  if (!start.is_square()) return fail(0, "start matrix is not square");
  if (start.field().is_char2()) return fail(0, "characteristic 2 has no normalized Jordan product");
  if (start.is_zero()) return fail(0, "start matrix is zero");
  const Mat* current = &start;
  for (std::size_t t = 0; t < c.steps.size(); ++t) {
    const auto& step = c.steps[t];
    if (!(step.y.field() == start.field()) || step.y.rows() != start.rows() || !step.y.is_square()) {
      return fail(t, "multiplier has the wrong shape or field");
    }
    if (!(jordan_circ(*current, step.y) == step.result)) return fail(t, "recorded result differs from recomputed product");
    if (step.result.is_zero()) return fail(t, "intermediate result is zero");
    current = &step.result;
  }
  if (!(*current == Mat::identity(start.field(), start.rows()))) {
    return fail(c.steps.size(), "chain does not end at the identity");
  }
  return {};
}

// Integer p_j: 1 for j = 1, 2·3^(j-2) for j >= 2.
inline BigInt ladder_weight(unsigned j) {
  if (j == 0) throw InvalidArgument("ladder weights are indexed from 1");
  if (j == 1) return 1;
  BigInt v = 2;
  for (unsigned t = 2; t < j; ++t) v *= 3;
  return v;
}

struct LadderCoefficients {
  std::size_t r;
  std::vector<Scalar> weights;  // p_1 .. p_ceil(r/2), reduced into the field
  Mat a;
  Mat b;
  Mat c;
  Mat d;  // D_r
};

namespace detail {

inline Mat diag_prefix(const Field& f, std::size_t n, std::size_t r) {
  std::vector<Scalar> e(n * n, f.zero());
  for (std::size_t j = 0; j < r; ++j) e[j * n + j] = f.one();
  return Mat(f, n, n, std::move(e));
}

inline void require_circ_field(const Field& f) {
  if (f.is_char2()) throw Unsupported("Jordan certificates need characteristic != 2");
}

}  // namespace detail

// A_r, B_r, C_r and D_r embedded in M_n(F), 2 <= r <= n. With r = 2k or
// r = 2k + 1 (1-based indices, p_i = ladder_weight(i)):
//   A_{2k}   = sum_{j<=k} E_jj     - 2 sum_{j<i<=k} E_ij
//   A_{2k+1} = sum_{j<=k+1} E_jj   - 2 sum_{j<i<=k} E_ij
//   B_{2k}   = -8 E_{k,k+1}        + 4 sum_{i<=j<=k} p_i E_{j,2k+i-j}
//   B_{2k+1} = -E_{k+1,k+1}        + 4 sum_{i<=j<=k} p_i E_{j,2k+1+i-j}
//   C_{2k}   = -E_{k+1,k}          + sum_{j<=k-1} E_{2k+1-j,j}
//   C_{2k+1} = -E_{k+1,k+1}        + sum_{j<=k} E_{2k+2-j,j}
inline LadderCoefficients ladder(const Field& f, std::size_t n, std::size_t r) {
  detail::require_circ_field(f);
  if (r < 2 || r > n) {
    throw InvalidArgument("ladder rank r = " + std::to_string(r) + " outside [2, " + std::to_string(n) + "]");
  }
  const std::size_t k = r / 2;
  const bool even = r % 2 == 0;
  std::vector<Scalar> a(n * n, f.zero());
  std::vector<Scalar> b(n * n, f.zero());
  std::vector<Scalar> c(n * n, f.zero());
  auto at = [n](std::vector<Scalar>& m, std::size_t i, std::size_t j) -> Scalar& { return m[(i - 1) * n + (j - 1)]; };

  std::vector<Scalar> weights;
  for (std::size_t j = 1; j <= (r + 1) / 2; ++j) {
    weights.push_back(f.from_rational(Rational(ladder_weight(static_cast<unsigned>(j)))));
  }

  const std::size_t diag_len = even ? k : k + 1;
  for (std::size_t j = 1; j <= diag_len; ++j) at(a, j, j) = f.one();
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j < i; ++j) at(a, i, j) = f.from_int(-2);
  }

  const std::size_t offset = even ? 2 * k : 2 * k + 1;
  if (even) {
    at(b, k, k + 1) = f.from_int(-8);
  } else {
    at(b, k + 1, k + 1) = f.from_int(-1);
  }
  const Scalar four = f.from_int(4);
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t i = 1; i <= j; ++i) {
      Scalar& e = at(b, j, offset + i - j);
      e = e + four * weights[i - 1];
    }
  }

  if (even) {
    at(c, k + 1, k) = f.from_int(-1);
    for (std::size_t j = 1; j + 1 <= k; ++j) at(c, 2 * k + 1 - j, j) = f.one();
  } else {
    at(c, k + 1, k + 1) = f.from_int(-1);
    for (std::size_t j = 1; j <= k; ++j) at(c, 2 * k + 2 - j, j) = f.one();
  }

  return {r, std::move(weights), Mat(f, n, n, std::move(a)), Mat(f, n, n, std::move(b)),
          Mat(f, n, n, std::move(c)), detail::diag_prefix(f, n, r)};
}

// Chain from a nonzero X to some diagonal unit E_ii.
struct UnitChain {
  Certificate chain;
  std::size_t unit;  // 1-based i with final result E_ii
};

inline UnitChain reach_unit(const Mat& x) {
  if (!x.is_square()) throw Mismatch("certificates need a square start matrix");
  detail::require_circ_field(x.field());
  if (x.is_zero()) throw Unsupported("the zero matrix generates no Jordan ideal chain to I");
  const Field& f = x.field();
  const std::size_t n = x.rows();
  Certificate c{x, {}};
  auto push = [&](Mat y) {
    Mat next = jordan_circ(c.final_result(), y);
    c.steps.push_back({std::move(y), std::move(next)});
  };

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const Scalar& xij = x(i - 1, j - 1);
      if (i == j || xij.is_zero()) continue;
      // X_ij E_ji = (X∘E_ji)∘(2E_ji); then E_ii + E_jj and E_ii.
      const Mat eji = Mat::unit(f, n, j, i);
      push(eji);
      push(f.from_int(2) * eji);
      push((f.from_int(2) / xij) * Mat::unit(f, n, i, j));
      push(Mat::unit(f, n, i, i));
      return {std::move(c), i};
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const Scalar& xii = x(i - 1, i - 1);
    if (xii.is_zero()) continue;
    const Mat eii = Mat::unit(f, n, i, i);
    push(xii.inv() * eii);
    push(eii);
    return {std::move(c), i};
  }
  throw InvalidArgument("unreachable: nonzero matrix without a nonzero entry");
}

// Steps carrying E_ii to E_jj: (2E_ji, 2E_ij, E_jj) with results
// (E_ji, E_ii + E_jj, E_jj). Empty when i == j.
inline std::vector<CertificateStep> spread_units(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
  detail::require_circ_field(f);
  if (i == j) return {};
  const Scalar two = f.from_int(2);
  const Mat eii = Mat::unit(f, n, i, i);
  const Mat ejj = Mat::unit(f, n, j, j);
  const Mat eji = Mat::unit(f, n, j, i);
  const Mat eij = Mat::unit(f, n, i, j);
  std::vector<CertificateStep> steps;
  steps.push_back({two * eji, jordan_circ(eii, two * eji)});
  steps.push_back({two * eij, jordan_circ(steps.back().result, two * eij)});
  steps.push_back({ejj, jordan_circ(steps.back().result, ejj)});
  return steps;
}

inline Certificate certify_identity(const Mat& x) {
  auto [c, unit] = reach_unit(x);
  const Field& f = x.field();
  const std::size_t n = x.rows();
  for (auto& s : spread_units(f, n, unit, 1)) c.steps.push_back(std::move(s));

  for (std::size_t r = 2; r <= n; ++r) {
    const LadderCoefficients lad = ladder(f, n, r);
    const Mat d_prev = c.final_result();
    if (!(lad.a == d_prev)) {
      // supp A_r ⊆ [r-1]^2, so D_{r-1}∘Y = A_r for Y = 2A_r - D_{r-1} A_r D_{r-1}.
      const Mat y = f.from_int(2) * lad.a - d_prev * lad.a * d_prev;
      Mat produced = jordan_circ(d_prev, y);
      if (!(produced == lad.a)) {
        throw InvalidArgument("absorption multiplier failed to produce A_" + std::to_string(r));
      }
      c.steps.push_back({y, std::move(produced)});
    }
    Mat ab = jordan_circ(c.final_result(), lad.b);
    c.steps.push_back({lad.b, ab});
    Mat abc = jordan_circ(ab, lad.c);
    if (!(abc == lad.d)) throw InvalidArgument("ladder identity failed at r = " + std::to_string(r));
    c.steps.push_back({lad.c, std::move(abc)});
  }
  if (!replay(c)) throw InvalidArgument("constructed certificate failed replay");
  return c;
}

}  // namespace jmap

#endif  // JMAP_GENERATION_HPP
