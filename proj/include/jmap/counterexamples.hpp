#ifndef JMAP_COUNTEREXAMPLES_HPP
#define JMAP_COUNTEREXAMPLES_HPP

// Jordan multiplicative maps that are neither constant nor additive, each
// outside one hypothesis of the classification:
//   triangular  domain is the upper-triangular subalgebra T_n(F)
//   char2       characteristic 2 with the unnormalized product ⋄
//   block       target M_2n(F) larger than the domain

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jmap/classifier.hpp"

namespace jmap {

struct AdditivityWitness {
  Mat x;
  Mat y;
  Mat fx;
  Mat fy;
  Mat fsum;  // φ(X + Y)
};

struct ConstancyWitness {
  Mat x;
  Mat y;
  Mat fx;
  Mat fy;
};

struct CounterexampleBundle {
  std::string name;
  std::string domain;  // description of the sub-domain the map lives on
  JordanMap map;
  MultiplicativityReport evidence;
  AdditivityWitness non_additive;
  ConstancyWitness non_constant;
  std::vector<Mat> points;                 // exhaustive evidence domain; empty when sampled
  std::function<Mat(Rng&)> sampler;        // sampled evidence generator

  // Recomputes the evidence and both witnesses from scratch.
  bool replay() const {
    const MultiplicativityReport again =
        evidence.strategy.is_exhaustive() ? check_multiplicative_on(map, points)
                                          : check_multiplicative_sampled(map, evidence.strategy, sampler);
    if (again.passed() != evidence.passed() || again.pairs_checked != evidence.pairs_checked) return false;
    const auto& a = non_additive;
    if (!(map(a.x) == a.fx) || !(map(a.y) == a.fy) || !(map(a.x + a.y) == a.fsum)) return false;
    if (a.fsum == a.fx + a.fy) return false;
    const auto& c = non_constant;
    if (!(map(c.x) == c.fx) || !(map(c.y) == c.fy)) return false;
    return !(c.fx == c.fy);
  }
};

namespace detail {

// Evidence domains up to this many matrices are scanned exhaustively.
inline constexpr std::uint64_t kEvidenceDomain = 3000;
inline constexpr std::uint64_t kEvidenceSamples = 2000;

inline bool is_upper_triangular(const Mat& x) {
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      if (!x(r, c).is_zero()) return false;
    }
  }
  return true;
}

inline std::vector<Mat> upper_triangular_domain(const Field& f, std::size_t n) {
  const std::uint64_t q = *f.order();
  const std::size_t slots = n * (n + 1) / 2;
  std::uint64_t count = 1;
  for (std::size_t t = 0; t < slots; ++t) count *= q;
  std::vector<Mat> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Scalar> e(n * n, f.zero());
    std::uint64_t rest = idx;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r; c < n; ++c) {
        e[r * n + c] = f.element(rest % q);
        rest /= q;
      }
    }
    out.emplace_back(f, n, n, std::move(e));
  }
  return out;
}

inline std::optional<std::uint64_t> power_if_small(std::uint64_t q, std::size_t e) {
  std::uint64_t v = 1;
  for (std::size_t t = 0; t < e; ++t) {
    if (v > kEvidenceDomain / q + 1) return std::nullopt;
    v *= q;
  }
  return v;
}

inline std::vector<Scalar> scalar_probe_set(const Field& f) {
  if (f.order() && *f.order() <= 64) return f.elements();
  std::vector<Scalar> out;
  for (std::int64_t v : {0, 1, 2, -1, 3, -2, 5, 7}) out.push_back(f.from_int(v));
  if (!f.is_finite()) {
    out.push_back(f.from_int(1) / f.from_int(2));
    out.push_back(f.from_int(-2) / f.from_int(3));
  }
  return out;
}

inline CounterexampleBundle make_bundle(std::string name, std::string domain, JordanMap map,
                                        std::function<Mat(Rng&)> sampler, AdditivityWitness non_additive,
                                        ConstancyWitness non_constant, std::vector<Mat> exhaustive_domain,
                                        std::uint64_t seed) {
  CounterexampleBundle b{std::move(name), std::move(domain), std::move(map), {}, std::move(non_additive),
                         std::move(non_constant), std::move(exhaustive_domain), std::move(sampler)};
  if (!b.points.empty()) {
    b.evidence = check_multiplicative_on(b.map, b.points);
  } else {
    b.evidence = check_multiplicative_sampled(b.map, Strategy::sampled(kEvidenceSamples, seed), b.sampler);
  }
  if (!b.evidence.passed()) throw InvariantViolation("evidence", "generated counterexample failed its own scan", {});
  return b;
}

}  // namespace detail

// X -> diag(ω(x_11), ..., ω(x_nn)) on upper-triangular X; ω multiplicative,
// not additive. Other inputs are outside the domain.
inline CounterexampleBundle triangular_example(const Field& f, std::size_t n,
                                               const std::function<Scalar(const Scalar&)>& omega,
                                               std::uint64_t seed = 0) {
  if (f.is_char2()) throw Unsupported("the triangular example uses the normalized product; characteristic 2 excluded");
  if (n < 1) throw InvalidArgument("n must be positive");
  const auto probes = detail::scalar_probe_set(f);
  std::optional<std::pair<Scalar, Scalar>> split;
  for (const auto& a : probes) {
    for (const auto& b : probes) {
      if (!(omega(a * b) == omega(a) * omega(b))) {
        throw InvalidArgument("ω is not multiplicative: ω(" + a.to_string() + "·" + b.to_string() + ") differs");
      }
      if (!split && !(omega(a + b) == omega(a) + omega(b))) split = std::make_pair(a, b);
    }
  }
  if (!split) throw InvalidArgument("ω is additive on the probe set; no counterexample arises");

  auto fn = [f, n, omega](const Mat& x) {
    if (!detail::is_upper_triangular(x)) throw DomainError("argument is not upper triangular");
    std::vector<Scalar> d;
    for (std::size_t j = 0; j < n; ++j) d.push_back(omega(x(j, j)));
    return Mat::diagonal(f, d);
  };
  JordanMap map = JordanMap::oracle(f, n, n, Product::circ, fn);
  auto sampler = [f, n](Rng& rng) {
    Mat x = random_matrix(f, n, n, rng);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < r; ++c) x = x.with(r, c, f.zero());
    }
    return x;
  };

  const Mat e11 = Mat::unit(f, n, 1, 1);
  const Mat x = split->first * e11;
  const Mat y = split->second * e11;
  AdditivityWitness add{x, y, map(x), map(y), map(x + y)};
  const Mat zero = Mat::zero(f, n);
  const Mat id = Mat::identity(f, n);
  ConstancyWitness con{zero, id, map(zero), map(id)};
  if (con.fx == con.fy) throw InvalidArgument("ω(1) = ω(0); the map is constant");

  std::vector<Mat> domain;
  if (f.order() && detail::power_if_small(*f.order(), n * (n + 1) / 2).value_or(detail::kEvidenceDomain + 1) <=
                       detail::kEvidenceDomain) {
    domain = detail::upper_triangular_domain(f, n);
  }
  return detail::make_bundle("triangular", "T_" + std::to_string(n) + "(" + f.name() + ")", std::move(map),
                             sampler, std::move(add), std::move(con), std::move(domain), seed);
}

// Over a field of characteristic 2 in ⋄ mode: A -> B, everything else -> 0.
// X⋄Y always has trace zero, so a trace-one A is never a product.
inline CounterexampleBundle char2_example(const Mat& a, const Mat& b, std::uint64_t seed = 0) {
  const Field& f = a.field();
  if (!f.is_char2()) throw InvalidArgument("the char2 example needs characteristic 2");
  if (!a.is_square() || a.rows() < 2) throw InvalidArgument("A must be square of size at least 2");
  if (!(b.field() == f) || b.rows() != a.rows() || b.cols() != a.cols()) throw Mismatch("B must match A");
  if (!a.trace().is_one()) throw InvalidArgument("trace(A) must be 1");
  if (b.is_zero()) throw InvalidArgument("B must be nonzero");
  const std::size_t n = a.rows();
  const std::string key = a.key();
  auto fn = [key, b, f, n](const Mat& x) { return x.key() == key ? b : Mat::zero(f, n); };
  const auto size = Mat::domain_size(f, n, n);
  const bool small = size && *size <= detail::kEvidenceDomain;
  JordanMap map = small ? JordanMap::tabulate(f, n, n, Product::diamond, fn)
                        : JordanMap::oracle(f, n, n, Product::diamond, fn);
  auto sampler = [f, n](Rng& rng) { return random_probe(f, n, rng); };

  const Mat e12 = Mat::unit(f, n, 1, 2);
  const Mat x = a + e12;
  const Mat y = a - x;
  AdditivityWitness add{x, y, map(x), map(y), map(a)};
  const Mat zero = Mat::zero(f, n);
  ConstancyWitness con{zero, a, map(zero), map(a)};
  std::vector<Mat> domain;
  if (small) {
    for (std::uint64_t i = 0; i < *size; ++i) domain.push_back(Mat::from_index(f, n, n, i));
  }
  return detail::make_bundle("char2", "M_" + std::to_string(n) + "(" + f.name() + ")", std::move(map), sampler,
                             std::move(add), std::move(con), std::move(domain), seed);
}

// X -> diag(X, P) into M_2n(F).
inline CounterexampleBundle block_embedding_example(const Mat& p, std::uint64_t seed = 0) {
  const Field& f = p.field();
  if (f.is_char2()) throw Unsupported("the block example uses the normalized product; characteristic 2 excluded");
  if (!p.is_square()) throw InvalidArgument("P must be square");
  if (!p.is_idempotent()) throw InvalidArgument("P must be idempotent");
  if (p.is_zero()) throw InvalidArgument("P must be nonzero");
  const std::size_t n = p.rows();
  auto fn = [p, f, n](const Mat& x) {
    std::vector<Scalar> e(4 * n * n, f.zero());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        e[r * 2 * n + c] = x(r, c);
        e[(r + n) * 2 * n + (c + n)] = p(r, c);
      }
    }
    return Mat(f, 2 * n, 2 * n, std::move(e));
  };
  JordanMap map = JordanMap::oracle(f, n, 2 * n, Product::circ, fn);
  auto sampler = [f, n](Rng& rng) { return random_probe(f, n, rng); };

  const Mat id = Mat::identity(f, n);
  AdditivityWitness add{id, id, map(id), map(id), map(id + id)};
  const Mat zero = Mat::zero(f, n);
  ConstancyWitness con{zero, id, map(zero), map(id)};
  std::vector<Mat> domain;
  if (const auto size = Mat::domain_size(f, n, n); size && *size <= detail::kEvidenceDomain) {
    for (std::uint64_t i = 0; i < *size; ++i) domain.push_back(Mat::from_index(f, n, n, i));
  }
  return detail::make_bundle("block",
                             "M_" + std::to_string(n) + "(" + f.name() + ") -> M_" + std::to_string(2 * n),
                             std::move(map), sampler, std::move(add), std::move(con), std::move(domain), seed);
}

}  // namespace jmap

#endif  // JMAP_COUNTEREXAMPLES_HPP
