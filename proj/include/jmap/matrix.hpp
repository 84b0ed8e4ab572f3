#ifndef JMAP_MATRIX_HPP
#define JMAP_MATRIX_HPP

// Dense exact matrices over a Field. Values are immutable: every operation
// returns a fresh matrix. Element access is 0-based; matrix units and support
// sets use the 1-based (i, j) convention of E_ij.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jmap/field.hpp"

namespace jmap {

struct IndexPair {
  std::size_t i;
  std::size_t j;
  auto operator<=>(const IndexPair&) const = default;
};

class Mat {
 public:
  Mat(const Field& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), entries_(rows * cols, f.zero()) {}

  Mat(const Field& f, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : field_(f), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) throw Mismatch("entry count does not match shape");
    for (const auto& e : entries_) {
      if (!(e.field() == field_)) throw Mismatch("matrix entries must share one field");
    }
  }

  static Mat zero(const Field& f, std::size_t n) { return Mat(f, n, n); }

  static Mat identity(const Field& f, std::size_t n) {
    std::vector<Scalar> e(n * n, f.zero());
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = f.one();
    return Mat(f, n, n, std::move(e));
  }

  // E_ij in M_n, 1-based.
  static Mat unit(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > n || j > n) {
      throw InvalidArgument("matrix unit E_" + std::to_string(i) + std::to_string(j) +
                            " out of range for n = " + std::to_string(n));
    }
    std::vector<Scalar> e(n * n, f.zero());
    e[(i - 1) * n + (j - 1)] = f.one();
    return Mat(f, n, n, std::move(e));
  }

  static Mat from_ints(const Field& f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<Scalar> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw Mismatch("ragged matrix literal");
      for (auto v : row) e.push_back(f.from_int(v));
    }
    return Mat(f, r, c, std::move(e));
  }

  static Mat diagonal(const Field& f, const std::vector<Scalar>& d) {
    const std::size_t n = d.size();
    std::vector<Scalar> e(n * n, f.zero());
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
    return Mat(f, n, n, std::move(e));
  }

  // Inverse of index(): row-major digits base |F|, first entry least significant.
  static Mat from_index(const Field& f, std::size_t rows, std::size_t cols, std::uint64_t index) {
    const std::uint64_t q = f.order().value();
    std::vector<Scalar> e;
    e.reserve(rows * cols);
    for (std::size_t t = 0; t < rows * cols; ++t) {
      e.push_back(f.element(index % q));
      index /= q;
    }
    return Mat(f, rows, cols, std::move(e));
  }

  // |M_{rows x cols}(F)| if it fits in 62 bits.
  static std::optional<std::uint64_t> domain_size(const Field& f, std::size_t rows, std::size_t cols) {
    if (!f.order()) return std::nullopt;
    std::uint64_t total = 1;
    for (std::size_t t = 0; t < rows * cols; ++t) {
      if (total > (std::uint64_t{1} << 62) / *f.order()) return std::nullopt;
      total *= *f.order();
    }
    return total;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<Scalar>& entries() const { return entries_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  Mat with(std::size_t r, std::size_t c, const Scalar& v) const {
    if (!(v.field() == field_)) throw Mismatch("entry from another field");
    Mat out = *this;
    out.entries_.at(r * cols_ + c) = v;
    return out;
  }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  Mat operator+(const Mat& o) const {
    check_shape(o);
    std::vector<Scalar> e;
    e.reserve(entries_.size());
    for (std::size_t t = 0; t < entries_.size(); ++t) e.push_back(entries_[t] + o.entries_[t]);
    return Mat(field_, rows_, cols_, std::move(e));
  }

  Mat operator-() const {
    std::vector<Scalar> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(-x);
    return Mat(field_, rows_, cols_, std::move(e));
  }

  Mat operator-(const Mat& o) const { return *this + (-o); }

  Mat operator*(const Mat& o) const {
    if (!(field_ == o.field_)) throw Mismatch("matrices over different fields");
    if (cols_ != o.rows_) throw Mismatch("inner dimensions differ");
    std::vector<Scalar> e(rows_ * o.cols_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (o(k, j).is_zero()) continue;
          e[i * o.cols_ + j] = e[i * o.cols_ + j] + a * o(k, j);
        }
      }
    }
    return Mat(field_, rows_, o.cols_, std::move(e));
  }

  friend Mat operator*(const Scalar& s, const Mat& m) {
    std::vector<Scalar> e;
    e.reserve(m.entries_.size());
    for (const auto& x : m.entries_) e.push_back(s * x);
    return Mat(m.field_, m.rows_, m.cols_, std::move(e));
  }

  Mat transpose() const {
    std::vector<Scalar> e;
    e.reserve(entries_.size());
    for (std::size_t c = 0; c < cols_; ++c) {
      for (std::size_t r = 0; r < rows_; ++r) e.push_back((*this)(r, c));
    }
    return Mat(field_, cols_, rows_, std::move(e));
  }

  Scalar trace() const {
    if (!is_square()) throw Mismatch("trace of a non-square matrix");
    Scalar t = field_.zero();
    for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
    return t;
  }

  // Gaussian elimination, first nonzero pivot in each column.
  std::size_t rank() const {
    std::vector<Scalar> a = entries_;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t pivot = rank;
      while (pivot < rows_ && a[pivot * cols_ + c].is_zero()) ++pivot;
      if (pivot == rows_) continue;
      for (std::size_t k = 0; k < cols_; ++k) std::swap(a[pivot * cols_ + k], a[rank * cols_ + k]);
      const Scalar inv = a[rank * cols_ + c].inv();
      for (std::size_t r = rank + 1; r < rows_; ++r) {
        if (a[r * cols_ + c].is_zero()) continue;
        const Scalar f = a[r * cols_ + c] * inv;
        for (std::size_t k = c; k < cols_; ++k) a[r * cols_ + k] = a[r * cols_ + k] - f * a[rank * cols_ + k];
      }
      ++rank;
    }
    return rank;
  }

  // Gauss-Jordan on [A | I].
  Mat inverse() const {
    if (!is_square()) throw Mismatch("inverse of a non-square matrix");
    const std::size_t n = rows_;
    const std::size_t w = 2 * n;
    std::vector<Scalar> a(n * w, field_.zero());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a[r * w + c] = (*this)(r, c);
      a[r * w + n + r] = field_.one();
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t pivot = c;
      while (pivot < n && a[pivot * w + c].is_zero()) ++pivot;
      if (pivot == n) throw ZeroDivision("matrix is singular");
      for (std::size_t k = 0; k < w; ++k) std::swap(a[pivot * w + k], a[c * w + k]);
      const Scalar inv = a[c * w + c].inv();
      for (std::size_t k = 0; k < w; ++k) a[c * w + k] = a[c * w + k] * inv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a[r * w + c].is_zero()) continue;
        const Scalar f = a[r * w + c];
        for (std::size_t k = 0; k < w; ++k) a[r * w + k] = a[r * w + k] - f * a[c * w + k];
      }
    }
    std::vector<Scalar> e;
    e.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) e.push_back(a[r * w + n + c]);
    }
    return Mat(field_, n, n, std::move(e));
  }

  bool is_invertible() const { return is_square() && rank() == rows_; }

  // Nonzero positions, 1-based.
  std::set<IndexPair> support() const {
    std::set<IndexPair> s;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!(*this)(r, c).is_zero()) s.insert({r + 1, c + 1});
      }
    }
    return s;
  }

  bool is_idempotent() const { return is_square() && *this * *this == *this; }

  // Entrywise image under a ring endomorphism.
  Mat apply(const RingEndo& omega) const {
    if (!(omega.field() == field_)) throw Mismatch("endomorphism of another field");
    std::vector<Scalar> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_) e.push_back(omega(x));
    return Mat(field_, rows_, cols_, std::move(e));
  }

  // Row-major digits base |F| (finite fields only).
  std::uint64_t index() const {
    const std::uint64_t q = field_.order().value();
    std::uint64_t idx = 0;
    for (std::size_t t = entries_.size(); t-- > 0;) idx = idx * q + entries_[t].index();
    return idx;
  }

  // Canonical text key; equal matrices have equal keys.
  std::string key() const {
    std::string k = std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
    for (std::size_t t = 0; t < entries_.size(); ++t) {
      if (t) k += t % cols_ == 0 ? ";" : ",";
      k += entries_[t].to_string();
    }
    return k;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      s += r ? ", [" : "[";
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c) s += ", ";
        s += (*this)(r, c).to_string();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_shape(const Mat& o) const {
    if (!(field_ == o.field_)) throw Mismatch("matrices over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Mismatch("matrix shapes differ");
  }

  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

inline Mat mat_unit(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
  return Mat::unit(f, n, i, j);
}

inline void require_jordan_operands(const Mat& x, const Mat& y) {
  if (!(x.field() == y.field())) throw Mismatch("Jordan product of matrices over different fields");
  if (!x.is_square() || x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Mismatch("Jordan product needs square matrices of equal size");
  }
}

// X ⋄ Y = XY + YX.
inline Mat jordan_diamond(const Mat& x, const Mat& y) {
  require_jordan_operands(x, y);
  return x * y + y * x;
}

// X ∘ Y = (XY + YX) / 2; rejected in characteristic 2.
inline Mat jordan_circ(const Mat& x, const Mat& y) {
  require_jordan_operands(x, y);
  if (x.field().is_char2()) {
    throw Unsupported("the normalized Jordan product is undefined in characteristic 2");
  }
  return x.field().from_int(2).inv() * jordan_diamond(x, y);
}

// Outcome of a proportionality test X = λY; factor is empty when X = Y = 0.
struct Proportion {
  std::optional<Scalar> factor;
  bool both_zero() const { return !factor; }
};

// X ∝ Y: both zero, or both nonzero and X = λY for some λ.
inline std::optional<Proportion> proportional(const Mat& x, const Mat& y) {
  if (!(x.field() == y.field()) || x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Mismatch("proportionality needs matrices of equal shape over one field");
  }
  const bool xz = x.is_zero();
  const bool yz = y.is_zero();
  if (xz && yz) return Proportion{};
  if (xz || yz) return std::nullopt;
  const auto& ye = y.entries();
  std::size_t t = 0;
  while (ye[t].is_zero()) ++t;
  const Scalar lambda = x.entries()[t] / ye[t];
  if (!(lambda * y == x)) return std::nullopt;
  return Proportion{lambda};
}

inline std::ostream& operator<<(std::ostream& o, const Mat& m) { return o << m.to_string(); }

}  // namespace jmap

#endif  // JMAP_MATRIX_HPP
