#ifndef JMAP_RANDOM_HPP
#define JMAP_RANDOM_HPP

// Seeded generators for scalars, matrices, invertible matrices and
// idempotents. Only mt19937_64 output is consumed (reduced by modulo), so a
// seed reproduces the same stream on every standard library.

#include <cstdint>
#include <random>

#include "jmap/matrix.hpp"

namespace jmap {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform-ish integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : gen_() % bound; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool coin() { return (gen_() & 1U) != 0; }

 private:
  std::mt19937_64 gen_;
};

// Finite fields: uniform element. Q: a/b with |a| <= 9, 1 <= b <= 6.
inline Scalar random_scalar(const Field& f, Rng& rng) {
  if (f.is_finite()) {
    if (f.order()) return f.element(rng.below(*f.order()));
    std::vector<std::int64_t> c(f.degree());
    for (auto& v : c) v = static_cast<std::int64_t>(rng.below(f.characteristic()));
    return f.from_coeffs(c);
  }
  return f.from_int(rng.between(-9, 9)) / f.from_int(rng.between(1, 6));
}

inline Scalar random_nonzero_scalar(const Field& f, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(f, rng);
    if (!s.is_zero()) return s;
  }
}

inline Mat random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<Scalar> e;
  e.reserve(rows * cols);
  for (std::size_t t = 0; t < rows * cols; ++t) e.push_back(random_scalar(f, rng));
  return Mat(f, rows, cols, std::move(e));
}

// Each entry is zero with probability 1/2.
inline Mat random_sparse_matrix(const Field& f, std::size_t n, Rng& rng) {
  std::vector<Scalar> e;
  e.reserve(n * n);
  for (std::size_t t = 0; t < n * n; ++t) e.push_back(rng.coin() ? f.zero() : random_scalar(f, rng));
  return Mat(f, n, n, std::move(e));
}

inline Mat random_invertible(const Field& f, std::size_t n, Rng& rng) {
  for (;;) {
    Mat t = random_matrix(f, n, n, rng);
    if (t.is_invertible()) return t;
  }
}

// S diag(1,..,1,0,..,0) S^-1 with a random invertible S.
inline Mat random_idempotent(const Field& f, std::size_t n, std::size_t rank, Rng& rng) {
  const Mat s = random_invertible(f, n, rng);
  std::vector<Scalar> d(n, f.zero());
  for (std::size_t i = 0; i < rank && i < n; ++i) d[i] = f.one();
  return s * Mat::diagonal(f, d) * s.inverse();
}

// Mixture used for sampled verification: uniform matrices, sparse matrices,
// scaled matrix units and idempotents of random rank.
inline Mat random_probe(const Field& f, std::size_t n, Rng& rng) {
  switch (rng.below(4)) {
    case 0: return random_matrix(f, n, n, rng);
    case 1: return random_sparse_matrix(f, n, rng);
    case 2: {
      const auto i = 1 + rng.below(n);
      const auto j = 1 + rng.below(n);
      return random_scalar(f, rng) * Mat::unit(f, n, i, j);
    }
    default: return random_idempotent(f, n, rng.below(n + 1), rng);
  }
}

}  // namespace jmap

#endif  // JMAP_RANDOM_HPP
