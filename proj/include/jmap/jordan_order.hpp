#ifndef JMAP_JORDAN_ORDER_HPP
#define JMAP_JORDAN_ORDER_HPP

// Order and orthogonality of idempotents expressed through the normalized
// Jordan product, and simultaneous diagonalization of a complete family of
// mutually orthogonal rank-one idempotents.

#include <vector>

#include "jmap/matrix.hpp"

namespace jmap {

namespace detail {

inline void require_idempotent(const Mat& p, const char* what) {
  if (!p.is_idempotent()) throw InvalidArgument(std::string(what) + " is not an idempotent");
}

}  // namespace detail

// P <= Q  iff  PQ = QP = P.
inline bool jordan_le(const Mat& p, const Mat& q) {
  detail::require_idempotent(p, "P");
  detail::require_idempotent(q, "Q");
  require_jordan_operands(p, q);
  return p * q == p && q * p == p;
}

// P ⊥ Q  iff  P ∘ Q = 0.
inline bool jordan_perp(const Mat& p, const Mat& q) {
  detail::require_idempotent(p, "P");
  detail::require_idempotent(q, "Q");
  return jordan_circ(p, q).is_zero();
}

// I - P.
inline Mat perp_complement(const Mat& p) {
  detail::require_idempotent(p, "P");
  return Mat::identity(p.field(), p.rows()) - p;
}

// Agreement of the two sides of each of the four equivalences
//   (a) P∘A = 0  <=>  PA = AP = PAP = 0
//   (b) P∘A = A  <=>  PA = AP = PAP = A
//   (c) P ⊥ A    <=>  P∘A = 0          (A idempotent)
//   (d) P <= A   <=>  P∘A = P          (A idempotent)
// evaluated independently. (c) and (d) are vacuous when A is not idempotent.
struct CalcAgreement {
  bool a = true;
  bool b = true;
  bool c = true;
  bool d = true;
  bool order_items_applicable = false;
  bool all() const { return a && b && c && d; }
};

inline CalcAgreement jordan_calc_check(const Mat& p, const Mat& a) {
  detail::require_idempotent(p, "P");
  require_jordan_operands(p, a);
  const Mat zero = Mat::zero(p.field(), p.rows());
  const Mat circ = jordan_circ(p, a);
  const Mat pa = p * a;
  const Mat ap = a * p;
  const Mat pap = pa * p;

  CalcAgreement out;
  out.a = circ.is_zero() == (pa == zero && ap == zero && pap == zero);
  out.b = (circ == a) == (pa == a && ap == a && pap == a);
  if (a.is_idempotent()) {
    out.order_items_applicable = true;
    out.c = (pa == zero && ap == zero) == circ.is_zero();
    out.d = (pa == p && ap == p) == (circ == p);
  }
  return out;
}

// Q_1..Q_n: rank-one idempotents, pairwise orthogonal, summing to I.
class IdempotentFamily {
 public:
  explicit IdempotentFamily(std::vector<Mat> members) : members_(std::move(members)) {
    if (members_.empty()) throw InvalidArgument("empty idempotent family");
    const Field& f = members_.front().field();
    const std::size_t n = members_.front().rows();
    if (members_.size() != n) throw InvalidArgument("family size must equal the matrix size");
    Mat sum = Mat::zero(f, n);
    for (std::size_t i = 0; i < n; ++i) {
      const Mat& q = members_[i];
      if (!(q.field() == f) || !q.is_square() || q.rows() != n) {
        throw Mismatch("family members must be n x n over one field");
      }
      if (!q.is_idempotent()) throw InvalidArgument("family member " + std::to_string(i + 1) + " is not idempotent");
      if (q.rank() != 1) throw InvalidArgument("family member " + std::to_string(i + 1) + " does not have rank one");
      for (std::size_t j = 0; j < i; ++j) {
        if (!(q * members_[j]).is_zero() || !(members_[j] * q).is_zero()) {
          throw InvalidArgument("family members " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                                " are not orthogonal");
        }
      }
      sum = sum + q;
    }
    if (!(sum == Mat::identity(f, n))) throw InvalidArgument("family does not sum to the identity");
  }

  const std::vector<Mat>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<Mat> members_;
};

// Invertible T with T^-1 Q_j T = E_jj; column j of T is the first nonzero
// column of Q_j. Index order is preserved.
inline Mat simultaneous_diagonalizer(const IdempotentFamily& fam) {
  const auto& qs = fam.members();
  const Field& f = qs.front().field();
  const std::size_t n = fam.size();
  std::vector<Scalar> t(n * n, f.zero());
  for (std::size_t j = 0; j < n; ++j) {
    const Mat& q = qs[j];
    std::size_t col = 0;
    while (col < n) {
      bool nonzero = false;
      for (std::size_t r = 0; r < n; ++r) nonzero = nonzero || !q(r, col).is_zero();
      if (nonzero) break;
      ++col;
    }
    for (std::size_t r = 0; r < n; ++r) t[r * n + j] = q(r, col);
  }
  Mat tm(f, n, n, std::move(t));
  if (!tm.is_invertible()) throw InvalidArgument("assembled diagonalizer is singular");
  const Mat tinv = tm.inverse();
  for (std::size_t j = 0; j < n; ++j) {
    if (!(tinv * qs[j] * tm == Mat::unit(f, n, j + 1, j + 1))) {
      throw InvalidArgument("diagonalizer check failed for member " + std::to_string(j + 1));
    }
  }
  return tm;
}

}  // namespace jmap

#endif  // JMAP_JORDAN_ORDER_HPP
