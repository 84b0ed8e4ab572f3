#ifndef JMAP_JORDAN_MAP_HPP
#define JMAP_JORDAN_MAP_HPP

// Maps M_n(F) -> M_m(F) under test, and the canonical forms they classify to.

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "jmap/matrix.hpp"

namespace jmap {

enum class Product { circ, diamond };

inline std::string to_string(Product p) { return p == Product::circ ? "circ" : "diamond"; }

inline Mat jordan_product(Product p, const Mat& x, const Mat& y) {
  return p == Product::circ ? jordan_circ(x, y) : jordan_diamond(x, y);
}

class JordanMap {
 public:
  enum class Kind { table, constant, conjugation, oracle };
  using Fn = std::function<Mat(const Mat&)>;

  // Full table over the finite domain M_n(F); every matrix exactly once.
  static JordanMap table(const Field& f, std::size_t n, std::size_t m, Product mode,
                         const std::vector<std::pair<Mat, Mat>>& entries) {
    const auto size = Mat::domain_size(f, n, n);
    if (!size || *size > kMaxTableSize) throw Unsupported("domain too large for a table map");
    if (entries.size() != *size) {
      throw InvalidArgument("table has " + std::to_string(entries.size()) + " entries, domain has " +
                            std::to_string(*size));
    }
    auto body = std::make_shared<std::vector<std::optional<Mat>>>(*size);
    for (const auto& [x, fx] : entries) {
      if (!(x.field() == f) || !(fx.field() == f)) throw Mismatch("table entry over another field");
      if (x.rows() != n || x.cols() != n) throw Mismatch("table argument of the wrong size");
      if (fx.rows() != m || fx.cols() != m) throw Mismatch("table value of the wrong size");
      auto& slot = (*body)[x.index()];
      if (slot) throw InvalidArgument("table lists " + x.to_string() + " twice");
      slot = fx;
    }
    JordanMap out(f, n, m, mode, Kind::table);
    out.table_ = std::move(body);
    return out;
  }

  // Tabulates fn over the whole finite domain.
  static JordanMap tabulate(const Field& f, std::size_t n, std::size_t m, Product mode, const Fn& fn) {
    const auto size = Mat::domain_size(f, n, n);
    if (!size || *size > kMaxTableSize) throw Unsupported("domain too large for a table map");
    std::vector<std::pair<Mat, Mat>> entries;
    entries.reserve(*size);
    for (std::uint64_t i = 0; i < *size; ++i) {
      Mat x = Mat::from_index(f, n, n, i);
      Mat fx = fn(x);
      entries.emplace_back(std::move(x), std::move(fx));
    }
    return table(f, n, m, mode, entries);
  }

  // φ ≡ value.
  static JordanMap constant(std::size_t n, Mat value, Product mode) {
    if (!value.is_square()) throw Mismatch("constant value must be square");
    JordanMap out(value.field(), n, value.rows(), mode, Kind::constant);
    out.constant_ = std::make_shared<const Mat>(std::move(value));
    return out;
  }

  // X -> T ω(X) T^-1, or T ω(X)^t T^-1 when transpose is set.
  static JordanMap conjugation(const Mat& t, const RingEndo& omega, bool transpose, Product mode) {
    if (!t.is_invertible()) throw InvalidArgument("conjugating matrix must be invertible");
    if (!(omega.field() == t.field())) throw Mismatch("endomorphism of another field");
    if (mode == Product::diamond && t.field().is_char2()) {
      throw Unsupported("structured diamond maps need characteristic != 2");
    }
    JordanMap out(t.field(), t.rows(), t.rows(), mode, Kind::conjugation);
    out.conj_ = std::make_shared<const Conj>(Conj{t, t.inverse(), omega, transpose});
    return out;
  }

  // Black box; calls are memoized on the canonical matrix key.
  static JordanMap oracle(const Field& f, std::size_t n, std::size_t m, Product mode, Fn fn) {
    JordanMap out(f, n, m, mode, Kind::oracle);
    out.oracle_ = std::make_shared<Oracle>();
    out.oracle_->fn = std::move(fn);
    return out;
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const Field& field() const { return field_; }
  Product mode() const { return mode_; }
  Kind kind() const { return kind_; }

  Mat operator()(const Mat& x) const {
    if (!(x.field() == field_) || x.rows() != n_ || x.cols() != n_) {
      throw DomainError("argument outside M_" + std::to_string(n_) + "(" + field_.name() + ")");
    }
    switch (kind_) {
      case Kind::table: {
        const auto& slot = (*table_)[x.index()];
        if (!slot) throw DomainError("matrix missing from table");
        return *slot;
      }
      case Kind::constant: return *constant_;
      case Kind::conjugation: {
        const Mat w = x.apply(conj_->omega);
        return conj_->t * (conj_->transpose ? w.transpose() : w) * conj_->t_inv;
      }
      case Kind::oracle: return oracle_->call(x, m_);
    }
    throw DomainError("unknown map kind");
  }

  // Number of distinct oracle evaluations (0 for non-oracle bodies).
  std::uint64_t oracle_calls() const { return oracle_ ? oracle_->calls.load() : 0; }

  static constexpr std::uint64_t kMaxTableSize = 1'000'000;

 private:
  struct Conj {
    Mat t;
    Mat t_inv;
    RingEndo omega;
    bool transpose;
  };

  struct Oracle {
    Fn fn;
    mutable std::shared_mutex mu;
    std::unordered_map<std::string, Mat> memo;
    std::atomic<std::uint64_t> calls{0};

    Mat call(const Mat& x, std::size_t m) {
      const std::string key = x.key();
      {
        std::shared_lock lock(mu);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
      }
      Mat y = fn(x);
      if (y.rows() != m || y.cols() != m) throw Mismatch("oracle returned a matrix of the wrong size");
      std::unique_lock lock(mu);
      auto [it, inserted] = memo.emplace(key, std::move(y));
      if (inserted) ++calls;
      return it->second;
    }
  };

  JordanMap(const Field& f, std::size_t n, std::size_t m, Product mode, Kind kind)
      : field_(f), n_(n), m_(m), mode_(mode), kind_(kind) {}

  Field field_;
  std::size_t n_;
  std::size_t m_;
  Product mode_;
  Kind kind_;
  std::shared_ptr<const std::vector<std::optional<Mat>>> table_;
  std::shared_ptr<const Mat> constant_;
  std::shared_ptr<const Conj> conj_;
  std::shared_ptr<Oracle> oracle_;

  friend JordanMap diamond_to_circ(const JordanMap& phi);
};

// ψ(X) = 2 φ(X/2): turns a ⋄-multiplicative map into a ∘-multiplicative one.
inline JordanMap diamond_to_circ(const JordanMap& phi) {
  if (phi.mode() != Product::diamond) throw InvalidArgument("map is already in circ mode");
  const Field f = phi.field();
  if (f.is_char2()) throw Unsupported("no ∘ reduction exists in characteristic 2");
  const Scalar two = f.from_int(2);
  const Scalar half = two.inv();
  switch (phi.kind()) {
    case JordanMap::Kind::constant: return JordanMap::constant(phi.n(), two * *phi.constant_, Product::circ);
    case JordanMap::Kind::conjugation: {
      // ω fixes the prime field, so 2 T ω(X/2) T^-1 = T ω(X) T^-1.
      const auto& c = *phi.conj_;
      return JordanMap::conjugation(c.t, c.omega, c.transpose, Product::circ);
    }
    default: break;
  }
  return JordanMap::oracle(f, phi.n(), phi.m(), Product::circ,
                           [phi, two, half](const Mat& x) { return two * phi(half * x); });
}

struct ZeroForm {};
struct ConstantForm {
  Mat p;  // idempotent; the map is P in circ mode and P/2 in diamond mode
};
struct ConjugationForm {
  Mat t;
  RingEndo omega;
  bool transpose;
};

struct CanonicalForm {
  std::variant<ZeroForm, ConstantForm, ConjugationForm> body;
  Product mode;
  Field field;
  std::size_t n;  // domain size
  std::size_t m;  // target size

  bool is_zero() const { return std::holds_alternative<ZeroForm>(body); }
  bool is_constant() const { return std::holds_alternative<ConstantForm>(body); }
  bool is_conjugation() const { return std::holds_alternative<ConjugationForm>(body); }
  const ConstantForm& constant() const { return std::get<ConstantForm>(body); }
  const ConjugationForm& conjugation() const { return std::get<ConjugationForm>(body); }

  std::string variant_name() const {
    return is_zero() ? "zero" : is_constant() ? "constant" : "conjugation";
  }

  JordanMap to_map() const {
    if (const auto* c = std::get_if<ConjugationForm>(&body)) {
      return JordanMap::conjugation(c->t, c->omega, c->transpose, mode);
    }
    if (const auto* c = std::get_if<ConstantForm>(&body)) {
      return JordanMap::constant(n, mode == Product::circ ? c->p : field.from_int(2).inv() * c->p, mode);
    }
    return JordanMap::constant(n, Mat::zero(field, m), mode);
  }
};

// Identical maps: same variant, and for conjugations the same flag and ω
// with a.T^-1 b.T a nonzero scalar matrix.
inline bool forms_equivalent(const CanonicalForm& a, const CanonicalForm& b) {
  if (!(a.field == b.field) || a.n != b.n || a.m != b.m || a.mode != b.mode) return false;
  if (a.body.index() != b.body.index()) return false;
  if (a.is_zero()) return true;
  if (a.is_constant()) return a.constant().p == b.constant().p;
  const auto& ca = a.conjugation();
  const auto& cb = b.conjugation();
  if (ca.transpose != cb.transpose || !(ca.omega == cb.omega)) return false;
  const Mat r = ca.t.inverse() * cb.t;
  const Scalar& lambda = r(0, 0);
  return !lambda.is_zero() && r == lambda * Mat::identity(a.field, a.n);
}

}  // namespace jmap

#endif  // JMAP_JORDAN_MAP_HPP
