#ifndef JMAP_FIELD_HPP
#define JMAP_FIELD_HPP

// Exact scalar arithmetic over Q, prime fields F_p and Galois fields F_{p^k},
// together with the ring endomorphisms of those fields.
//
// A Field is a cheap handle onto an interned descriptor: two handles compare
// equal exactly when they describe the same field, and a Scalar carries the
// handle of the field it lives in.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "jmap/error.hpp"

namespace jmap {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class FieldKind { rational, prime, galois };

inline constexpr unsigned kMaxDegree = 8;
inline constexpr std::uint64_t kMaxCharacteristic = std::uint64_t{1} << 32;

namespace detail {

using Poly = std::vector<std::uint64_t>;  // ascending coefficients in [0, p)

struct FieldData {
  FieldKind kind;
  std::uint64_t p;
  unsigned k;
  Poly modulus;
  std::optional<std::uint64_t> order;
};

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1U;
  }
  return r;
}

// p prime.
inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw ZeroDivision("division by zero in F_" + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + mod_mul(a[i], b[j], p)) % p;
    }
  }
  trim(r);
  return r;
}

// Quotient and remainder of a by a nonzero b.
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  if (b.empty()) throw ZeroDivision("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  const std::uint64_t lead_inv = mod_inv(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const std::uint64_t t = mod_mul(a[shift + b.size() - 1], lead_inv, p);
    q[shift] = t;
    if (t == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mod_mul(t, b[i], p)) % p;
    }
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly poly_mod(const Poly& a, const Poly& m, std::uint64_t p) {
  return poly_divmod(a, m, p).second;
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(base, m, p);
  while (e > 0) {
    if (e & 1U) r = poly_mod(poly_mul(r, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1U;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Inverse of a modulo the irreducible m (extended Euclid).
inline Poly poly_inverse(const Poly& a, const Poly& m, std::uint64_t p) {
  Poly r0 = m;
  Poly r1 = poly_mod(a, m, p);
  if (r1.empty()) throw ZeroDivision("division by zero in Galois field");
  Poly s0{};
  Poly s1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p);
    Poly s = poly_sub(s0, poly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant since m is irreducible.
  const std::uint64_t c = mod_inv(r0.front(), p);
  for (auto& coeff : s0) coeff = mod_mul(coeff, c, p);
  return poly_mod(s0, m, p);
}

// Rabin's test: a monic f of degree k is irreducible over F_p iff
// x^(p^k) = x mod f and gcd(x^(p^(k/q)) - x, f) = 1 for every prime q | k.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  const Poly x{0, 1};
  std::vector<Poly> frob(k + 1);  // frob[i] = x^(p^i) mod f
  frob[0] = poly_mod(x, f, p);
  for (std::size_t i = 1; i <= k; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  if (poly_sub(frob[k], frob[0], p).size() != 0) return false;
  for (std::size_t q = 2; q <= k; ++q) {
    if (k % q != 0 || !is_prime(q)) continue;
    const Poly g = poly_gcd(f, poly_sub(frob[k / q], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

inline std::optional<std::uint64_t> checked_power(std::uint64_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) return std::nullopt;
    r *= p;
  }
  return r;
}

inline const FieldData* intern(FieldData d) {
  static std::mutex mu;
  static std::deque<FieldData> registry;
  std::lock_guard lock(mu);
  for (const auto& e : registry) {
    if (e.kind == d.kind && e.p == d.p && e.k == d.k && e.modulus == d.modulus) return &e;
  }
  registry.push_back(std::move(d));
  return &registry.back();
}

}  // namespace detail

class Scalar;

class Field {
 public:
  static Field rational() {
    return Field(detail::intern({FieldKind::rational, 0, 1, {}, std::nullopt}));
  }

  static Field prime(std::uint64_t p) {
    if (!detail::is_prime(p)) {
      throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
    }
    if (p >= kMaxCharacteristic) throw InvalidArgument("characteristic must be below 2^32");
    return Field(detail::intern({FieldKind::prime, p, 1, {}, p}));
  }

  // modulus: ascending coefficients of a monic irreducible of degree k >= 1.
  static Field galois(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    if (!detail::is_prime(p)) {
      throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
    }
    if (p >= kMaxCharacteristic) throw InvalidArgument("characteristic must be below 2^32");
    for (auto& c : modulus) c %= p;
    if (modulus.size() < 2 || modulus.back() != 1) {
      throw InvalidArgument("Galois modulus must be monic of degree >= 1");
    }
    const auto k = static_cast<unsigned>(modulus.size() - 1);
    if (k > kMaxDegree) throw InvalidArgument("extension degree above 8 is not supported");
    if (!detail::is_irreducible(modulus, p)) {
      throw InvalidArgument("modulus is reducible over F_" + std::to_string(p));
    }
    return Field(detail::intern({FieldKind::galois, p, k, std::move(modulus), detail::checked_power(p, k)}));
  }

  static Field make(FieldKind kind, std::uint64_t p = 0, unsigned k = 1,
                    std::vector<std::uint64_t> modulus = {}) {
    switch (kind) {
      case FieldKind::rational:
        if (k != 1 || !modulus.empty()) throw InvalidArgument("Q takes no degree or modulus");
        return rational();
      case FieldKind::prime:
        if (k != 1) throw InvalidArgument("extension degree >= 2 requires a galois field");
        return prime(p);
      case FieldKind::galois:
        if (modulus.size() != static_cast<std::size_t>(k) + 1) {
          throw InvalidArgument("modulus length must be k + 1");
        }
        return galois(p, std::move(modulus));
    }
    throw InvalidArgument("unknown field kind");
  }

  FieldKind kind() const { return data_->kind; }
  std::uint64_t characteristic() const { return data_->p; }
  unsigned degree() const { return data_->k; }
  const std::vector<std::uint64_t>& modulus() const { return data_->modulus; }
  bool is_finite() const { return data_->kind != FieldKind::rational; }
  bool is_char2() const { return data_->p == 2; }
  // Number of elements, when finite and representable.
  std::optional<std::uint64_t> order() const { return data_->order; }

  std::string name() const {
    switch (data_->kind) {
      case FieldKind::rational: return "Q";
      case FieldKind::prime: return "F_" + std::to_string(data_->p);
      case FieldKind::galois:
        if (data_->order) return "F_" + std::to_string(*data_->order);
        return "F_" + std::to_string(data_->p) + "^" + std::to_string(data_->k);
    }
    return "?";
  }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  Scalar from_rational(const Rational& q) const;
  Scalar from_coeffs(std::span<const std::int64_t> coeffs) const;
  // Parses "3", "-7/2"; prime fields interpret a/b as a * b^-1.
  Scalar parse(std::string_view text) const;
  // Residue class of x in a Galois field.
  Scalar generator() const;
  // Enumeration of a finite field: element(i) for i in [0, order).
  Scalar element(std::uint64_t index) const;
  std::vector<Scalar> elements() const;

  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }

 private:
  friend class Scalar;
  explicit Field(const detail::FieldData* d) : data_(d) {}
  const detail::FieldData* data_;
};

class Scalar {
 public:
  using Residue = std::array<std::uint32_t, kMaxDegree>;

  const Field& field() const { return field_; }

  bool is_zero() const {
    if (auto* r = std::get_if<Residue>(&value_)) {
      return std::all_of(r->begin(), r->end(), [](std::uint32_t c) { return c == 0; });
    }
    return std::get<Rational>(value_) == 0;
  }

  bool is_one() const { return *this == field_.one(); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  Scalar operator+(const Scalar& o) const {
    check_same(o);
    if (field_.kind() == FieldKind::rational) return Scalar(field_, rat() + o.rat());
    Residue r{};
    const auto p = field_.characteristic();
    for (unsigned i = 0; i < field_.degree(); ++i) {
      r[i] = static_cast<std::uint32_t>((std::uint64_t{res()[i]} + o.res()[i]) % p);
    }
    return Scalar(field_, r);
  }

  Scalar operator-() const {
    if (field_.kind() == FieldKind::rational) return Scalar(field_, Rational(-rat()));
    Residue r{};
    const auto p = field_.characteristic();
    for (unsigned i = 0; i < field_.degree(); ++i) {
      r[i] = static_cast<std::uint32_t>((p - res()[i]) % p);
    }
    return Scalar(field_, r);
  }

  Scalar operator-(const Scalar& o) const { return *this + (-o); }

  Scalar operator*(const Scalar& o) const {
    check_same(o);
    const auto p = field_.characteristic();
    switch (field_.kind()) {
      case FieldKind::rational: return Scalar(field_, Rational(rat() * o.rat()));
      case FieldKind::prime: {
        Residue r{};
        r[0] = static_cast<std::uint32_t>(detail::mod_mul(res()[0], o.res()[0], p));
        return Scalar(field_, r);
      }
      case FieldKind::galois: break;
    }
    const unsigned k = field_.degree();
    std::array<std::uint64_t, 2 * kMaxDegree> prod{};
    for (unsigned i = 0; i < k; ++i) {
      if (res()[i] == 0) continue;
      for (unsigned j = 0; j < k; ++j) {
        prod[i + j] = (prod[i + j] + std::uint64_t{res()[i]} * o.res()[j]) % p;
      }
    }
    const auto& f = field_.modulus();
    for (unsigned d = 2 * k - 2; d >= k; --d) {
      const std::uint64_t t = prod[d];
      if (t == 0) continue;
      prod[d] = 0;
      for (unsigned i = 0; i < k; ++i) {
        prod[d - k + i] = (prod[d - k + i] + (p - t) * f[i]) % p;
      }
    }
    Residue r{};
    for (unsigned i = 0; i < k; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return Scalar(field_, r);
  }

  Scalar inv() const {
    if (is_zero()) throw ZeroDivision("inverse of zero in " + field_.name());
    const auto p = field_.characteristic();
    switch (field_.kind()) {
      case FieldKind::rational: return Scalar(field_, Rational(1 / rat()));
      case FieldKind::prime: {
        Residue r{};
        r[0] = static_cast<std::uint32_t>(detail::mod_inv(res()[0], p));
        return Scalar(field_, r);
      }
      case FieldKind::galois: break;
    }
    detail::Poly a(res().begin(), res().begin() + field_.degree());
    detail::trim(a);
    const detail::Poly inv = detail::poly_inverse(a, field_.modulus(), p);
    Residue r{};
    for (std::size_t i = 0; i < inv.size(); ++i) r[i] = static_cast<std::uint32_t>(inv[i]);
    return Scalar(field_, r);
  }

  Scalar operator/(const Scalar& o) const {
    check_same(o);
    return *this * o.inv();
  }

  // a / 2; undefined in characteristic 2.
  Scalar halve() const {
    if (field_.is_char2()) throw Unsupported("halving is undefined in characteristic 2");
    return *this * field_.from_int(2).inv();
  }

  Scalar pow(std::uint64_t e) const {
    Scalar r = field_.one();
    Scalar b = *this;
    while (e > 0) {
      if (e & 1U) r = r * b;
      b = b * b;
      e >>= 1U;
    }
    return r;
  }

  // Position of the element in Field::element enumeration.
  std::uint64_t index() const {
    if (!field_.order()) throw Unsupported("index() requires a finite field of representable order");
    std::uint64_t idx = 0;
    for (unsigned i = field_.degree(); i-- > 0;) idx = idx * field_.characteristic() + res()[i];
    return idx;
  }

  const Rational& rational() const {
    if (field_.kind() != FieldKind::rational) throw Mismatch("not a rational scalar");
    return rat();
  }

  // Coefficients (ascending) of a finite-field element.
  std::vector<std::uint64_t> coeffs() const {
    if (field_.kind() == FieldKind::rational) throw Mismatch("rational scalars have no residue coefficients");
    return {res().begin(), res().begin() + field_.degree()};
  }

  // "7/2", "-3" for rational and prime fields; "[c0,c1,...]" for Galois fields.
  std::string to_string() const {
    switch (field_.kind()) {
      case FieldKind::rational: {
        const Rational& q = rat();
        if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
        return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
      }
      case FieldKind::prime: return std::to_string(res()[0]);
      case FieldKind::galois: {
        std::string s = "[";
        for (unsigned i = 0; i < field_.degree(); ++i) {
          if (i) s += ",";
          s += std::to_string(res()[i]);
        }
        return s + "]";
      }
    }
    return "?";
  }

 private:
  friend class Field;
  Scalar(Field f, Residue r) : field_(f), value_(r) {}
  Scalar(Field f, Rational q) : field_(f), value_(std::move(q)) {}

  const Residue& res() const { return std::get<Residue>(value_); }
  const Rational& rat() const { return std::get<Rational>(value_); }

  void check_same(const Scalar& o) const {
    if (!(field_ == o.field_)) {
      throw Mismatch("scalars from different fields: " + field_.name() + " vs " + o.field_.name());
    }
  }

  Field field_;
  std::variant<Residue, Rational> value_;
};

inline Scalar Field::zero() const { return from_int(0); }
inline Scalar Field::one() const { return from_int(1); }

inline Scalar Field::from_int(std::int64_t v) const {
  if (kind() == FieldKind::rational) return Scalar(*this, Rational(v));
  const auto p = static_cast<std::int64_t>(characteristic());
  Scalar::Residue r{};
  r[0] = static_cast<std::uint32_t>(((v % p) + p) % p);
  return Scalar(*this, r);
}

inline Scalar Field::from_rational(const Rational& q) const {
  if (kind() == FieldKind::rational) return Scalar(*this, q);
  const BigInt p{characteristic()};
  BigInt num = boost::multiprecision::numerator(q) % p;
  BigInt den = boost::multiprecision::denominator(q) % p;
  if (num < 0) num += p;
  return from_int(num.convert_to<std::int64_t>()) / from_int(den.convert_to<std::int64_t>());
}

inline Scalar Field::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (kind() != FieldKind::galois) {
    if (coeffs.size() != 1) throw InvalidArgument("expected a single coefficient for " + name());
    return from_int(coeffs[0]);
  }
  if (coeffs.size() > degree()) throw InvalidArgument("too many coefficients for " + name());
  const auto p = static_cast<std::int64_t>(characteristic());
  Scalar::Residue r{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    r[i] = static_cast<std::uint32_t>(((coeffs[i] % p) + p) % p);
  }
  return Scalar(*this, r);
}

inline Scalar Field::parse(std::string_view text) const {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw InvalidArgument("empty scalar literal");
    BigInt v;
    try {
      v = BigInt(std::string(s));
    } catch (const std::exception&) {
      throw InvalidArgument("malformed scalar literal '" + std::string(text) + "'");
    }
    return v;
  };
  if (kind() == FieldKind::galois) {
    throw InvalidArgument("Galois scalars are given as coefficient arrays");
  }
  const auto slash = text.find('/');
  const BigInt num = parse_int(text.substr(0, slash));
  BigInt den = 1;
  if (slash != std::string_view::npos) den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ZeroDivision("zero denominator in '" + std::string(text) + "'");
  if (den < 0) return from_rational(Rational(-num, -den));
  return from_rational(Rational(num, den));
}

inline Scalar Field::generator() const {
  if (kind() != FieldKind::galois || degree() < 2) {
    throw InvalidArgument("generator() requires a proper Galois extension");
  }
  const std::int64_t x[2] = {0, 1};
  return from_coeffs(x);
}

inline Scalar Field::element(std::uint64_t index) const {
  if (!order()) throw Unsupported("element() requires a finite field of representable order");
  if (index >= *order()) throw InvalidArgument("element index out of range");
  Scalar::Residue r{};
  for (unsigned i = 0; i < degree(); ++i) {
    r[i] = static_cast<std::uint32_t>(index % characteristic());
    index /= characteristic();
  }
  return Scalar(*this, r);
}

inline std::vector<Scalar> Field::elements() const {
  if (!order() || *order() > (std::uint64_t{1} << 20)) {
    throw Unsupported("cannot enumerate " + name());
  }
  std::vector<Scalar> out;
  out.reserve(*order());
  for (std::uint64_t i = 0; i < *order(); ++i) out.push_back(element(i));
  return out;
}

// Ring endomorphism of a field: the identity, or a power x -> x^(p^e) of the
// Frobenius map with 0 <= e < k on F_{p^k}.
class RingEndo {
 public:
  static RingEndo identity(const Field& f) { return RingEndo(f, 0); }

  static RingEndo frobenius(const Field& f, unsigned e) {
    if (!f.is_finite()) {
      if (e != 0) throw InvalidArgument("Q has only the identity endomorphism");
    } else if (e >= f.degree()) {
      throw InvalidArgument("Frobenius power must lie in [0, k)");
    }
    return RingEndo(f, e);
  }

  const Field& field() const { return field_; }
  unsigned power() const { return e_; }
  bool is_identity() const { return e_ == 0; }

  Scalar operator()(const Scalar& a) const {
    if (!(a.field() == field_)) throw Mismatch("endomorphism applied to a scalar of another field");
    Scalar r = a;
    for (unsigned i = 0; i < e_; ++i) r = r.pow(field_.characteristic());
    return r;
  }

  friend bool operator==(const RingEndo& a, const RingEndo& b) {
    return a.field_ == b.field_ && a.e_ == b.e_;
  }

 private:
  RingEndo(Field f, unsigned e) : field_(f), e_(e) {}
  Field field_;
  unsigned e_;
};

// All ring endomorphisms: the k Frobenius powers on F_{p^k}, the identity on Q.
inline std::vector<RingEndo> enumerate_endomorphisms(const Field& f) {
  std::vector<RingEndo> out;
  const unsigned k = f.is_finite() ? f.degree() : 1;
  for (unsigned e = 0; e < k; ++e) out.push_back(RingEndo::frobenius(f, e));
  return out;
}

inline std::ostream& operator<<(std::ostream& o, const Scalar& s) { return o << s.to_string(); }

}  // namespace jmap

#endif  // JMAP_FIELD_HPP
