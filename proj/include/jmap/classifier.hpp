#ifndef JMAP_CLASSIFIER_HPP
#define JMAP_CLASSIFIER_HPP

// Decomposition of Jordan multiplicative maps M_n(F) -> M_n(F), char F != 2,
// n >= 2, into one of three canonical forms:
//
//   zero                 φ ≡ 0
//   constant idempotent  φ ≡ P (∘ mode) or φ ≡ P/2 (⋄ mode), P² = P
//   conjugation          φ(X) = T ω(X) T^-1  or  φ(X) = T ω(X)^t T^-1
//
// Every stage checks its own postcondition, so an input that is not Jordan
// multiplicative is reported (with a witness) instead of being forced into a
// form. With sampled verification the verdict only means "consistent with
// the form on the tested set".

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "jmap/jordan_map.hpp"
#include "jmap/jordan_order.hpp"
#include "jmap/random.hpp"

namespace jmap {

struct Strategy {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::uint64_t count = 1000;
  std::uint64_t seed = 0;

  static Strategy exhaustive() { return {}; }
  static Strategy sampled(std::uint64_t count, std::uint64_t seed) { return {Kind::sampled, count, seed}; }

  bool is_exhaustive() const { return kind == Kind::exhaustive; }

  std::string to_string() const {
    if (is_exhaustive()) return "exhaustive";
    return "sampled:" + std::to_string(count) + ":" + std::to_string(seed);
  }

  // "exhaustive", "sampled:N" or "sampled:N:SEED".
  static Strategy parse(const std::string& text, std::uint64_t default_seed = 0) {
    if (text == "exhaustive") return exhaustive();
    if (text.rfind("sampled", 0) == 0) {
      Strategy s = sampled(1000, default_seed);
      std::vector<std::string> parts;
      std::size_t start = 0;
      for (std::size_t pos; (pos = text.find(':', start)) != std::string::npos; start = pos + 1) {
        parts.push_back(text.substr(start, pos - start));
      }
      parts.push_back(text.substr(start));
      try {
        if (parts.size() >= 2 && !parts[1].empty()) s.count = std::stoull(parts[1]);
        if (parts.size() >= 3 && !parts[2].empty()) s.seed = std::stoull(parts[2]);
      } catch (const std::exception&) {
        throw InvalidArgument("malformed strategy '" + text + "'");
      }
      if (parts.size() > 3 || parts[0] != "sampled") throw InvalidArgument("malformed strategy '" + text + "'");
      return s;
    }
    throw InvalidArgument("unknown strategy '" + text + "' (expected exhaustive or sampled:N:SEED)");
  }
};

struct Limits {
  std::uint64_t max_domain = 81;
  std::uint64_t max_pairs = 10'000'000;
};

// Worker threads for pair scans: JF_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("JF_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct Violation {
  Mat x;
  Mat y;
  Mat lhs;  // φ(X * Y)
  Mat rhs;  // φ(X) * φ(Y)
};

class NotJordanMultiplicative : public Error {
 public:
  explicit NotJordanMultiplicative(Violation v)
      : Error("map is not Jordan multiplicative: witness X = " + v.x.to_string() + ", Y = " + v.y.to_string()),
        witness_(std::move(v)) {}
  const Violation& witness() const { return witness_; }

 private:
  Violation witness_;
};

class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string stage, const std::string& detail, std::vector<std::pair<std::string, Mat>> witness)
      : Error("invariant violated at stage '" + stage + "': " + detail),
        stage_(std::move(stage)),
        witness_(std::move(witness)) {}
  const std::string& stage() const { return stage_; }
  const std::vector<std::pair<std::string, Mat>>& witness() const { return witness_; }

 private:
  std::string stage_;
  std::vector<std::pair<std::string, Mat>> witness_;
};

struct MultiplicativityReport {
  Strategy strategy;
  Product mode = Product::circ;
  std::uint64_t domain_size = 0;  // 0 when sampled
  std::uint64_t pairs_checked = 0;
  std::optional<Violation> violation;

  bool passed() const { return !violation; }

  std::string qualifier() const {
    if (strategy.is_exhaustive()) {
      return "verified on all " + std::to_string(pairs_checked) + " pairs of the domain";
    }
    return "consistent on " + std::to_string(pairs_checked) + " sampled pairs (seed " +
           std::to_string(strategy.seed) + "); not a proof over the full domain";
  }
};

inline std::vector<Mat> enumerate_domain(const Field& f, std::size_t n, const Limits& lim) {
  const auto size = Mat::domain_size(f, n, n);
  if (!size) throw Unsupported("exhaustive verification needs a finite domain");
  if (*size > lim.max_domain) {
    throw Unsupported("domain of " + std::to_string(*size) + " matrices exceeds the exhaustive bound of " +
                      std::to_string(lim.max_domain));
  }
  if (*size * *size > lim.max_pairs) throw Unsupported("pair count exceeds the hard cap");
  std::vector<Mat> out;
  out.reserve(*size);
  for (std::uint64_t i = 0; i < *size; ++i) out.push_back(Mat::from_index(f, n, n, i));
  return out;
}

// All ordered pairs of `domain`, which must be closed under the product.
inline MultiplicativityReport check_multiplicative_on(const JordanMap& phi, const std::vector<Mat>& domain) {
  MultiplicativityReport report;
  report.strategy = Strategy::exhaustive();
  report.mode = phi.mode();
  report.domain_size = domain.size();
  if (domain.size() * domain.size() > Limits{}.max_pairs) throw Unsupported("pair count exceeds the hard cap");

  std::vector<Mat> images;
  images.reserve(domain.size());
  for (const auto& x : domain) images.push_back(phi(x));

  const bool finite = phi.field().order().has_value();
  std::unordered_map<std::uint64_t, std::size_t> position;
  if (finite) {
    for (std::size_t i = 0; i < domain.size(); ++i) position.emplace(domain[i].index(), i);
  }
  auto image_of = [&](const Mat& z) -> Mat {
    if (finite) {
      if (auto it = position.find(z.index()); it != position.end()) return images[it->second];
    }
    return phi(z);
  };

  const std::size_t total = domain.size();
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(total, 1)));
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> first(workers);
  std::vector<std::thread> pool;
  auto scan = [&](unsigned w) {
    for (std::size_t i = w; i < total; i += workers) {
      if (first[w] && first[w]->first < i) return;
      for (std::size_t j = 0; j < total; ++j) {
        const Mat lhs = image_of(jordan_product(phi.mode(), domain[i], domain[j]));
        const Mat rhs = jordan_product(phi.mode(), images[i], images[j]);
        if (!(lhs == rhs)) {
          first[w] = std::make_pair(i, j);
          return;
        }
      }
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }

  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (const auto& f : first) {
    if (f && (!best || *f < *best)) best = f;
  }
  if (best) {
    const auto [i, j] = *best;
    report.pairs_checked = i * total + j + 1;
    report.violation = Violation{domain[i], domain[j], image_of(jordan_product(phi.mode(), domain[i], domain[j])),
                                 jordan_product(phi.mode(), images[i], images[j])};
  } else {
    report.pairs_checked = total * total;
  }
  return report;
}

// `count` pairs drawn from `gen`, seeded by strategy.seed.
template <typename Gen>
MultiplicativityReport check_multiplicative_sampled(const JordanMap& phi, const Strategy& s, Gen&& gen) {
  MultiplicativityReport report;
  report.strategy = s;
  report.mode = phi.mode();
  Rng rng(s.seed);
  for (std::uint64_t t = 0; t < s.count; ++t) {
    Mat x = gen(rng);
    Mat y = gen(rng);
    Mat lhs = phi(jordan_product(phi.mode(), x, y));
    Mat rhs = jordan_product(phi.mode(), phi(x), phi(y));
    ++report.pairs_checked;
    if (!(lhs == rhs)) {
      report.violation = Violation{std::move(x), std::move(y), std::move(lhs), std::move(rhs)};
      break;
    }
  }
  return report;
}

// Checks φ(X*Y) = φ(X)*φ(Y) for * the map's product.
inline MultiplicativityReport check_multiplicative(const JordanMap& phi, const Strategy& s, const Limits& lim = {}) {
  if (phi.mode() == Product::circ && phi.field().is_char2()) {
    throw Unsupported("the normalized Jordan product is undefined in characteristic 2");
  }
  if (s.is_exhaustive()) return check_multiplicative_on(phi, enumerate_domain(phi.field(), phi.n(), lim));
  const Field f = phi.field();
  const std::size_t n = phi.n();
  return check_multiplicative_sampled(phi, s, [&](Rng& rng) { return random_probe(f, n, rng); });
}

// Orientation evidence for a map normalized so that
// φ'(E_jj) = E_jj.
struct OrientationSet {
  std::size_t n = 0;
  std::set<IndexPair> direct;      // φ'(E_rs) ∝ E_rs
  std::set<IndexPair> transposed;  // φ'(E_rs) ∝ E_sr

  // For every (i,j) in s: (i,k) in s for k != i, (l,j) in s for l != j,
  // and (j,i) in s.
  static bool closed(const std::set<IndexPair>& s, std::size_t n) {
    for (const auto& [i, j] : s) {
      if (!s.contains({j, i})) return false;
      for (std::size_t k = 1; k <= n; ++k) {
        if (k != i && !s.contains({i, k})) return false;
        if (k != j && !s.contains({k, j})) return false;
      }
    }
    return true;
  }

  static std::set<IndexPair> off_diagonal(std::size_t n) {
    std::set<IndexPair> all;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (i != j) all.insert({i, j});
      }
    }
    return all;
  }

  // One orientation covers every off-diagonal pair.
  bool coherent() const {
    const auto all = off_diagonal(n);
    return (direct == all && transposed.empty()) || (transposed == all && direct.empty());
  }
};

struct Classification {
  CanonicalForm form;
  MultiplicativityReport multiplicativity;
  std::uint64_t points_verified = 0;
  std::optional<OrientationSet> orientation;

  bool exhaustive() const { return multiplicativity.strategy.is_exhaustive(); }
  std::string qualifier() const {
    if (exhaustive()) return "exact: the form agrees with the map on the whole domain";
    return "consistent with the form on the tested set: " + multiplicativity.qualifier() + "; form checked on " +
           std::to_string(points_verified) + " sampled points";
  }
};

namespace detail {

inline std::vector<Mat> verification_points(const JordanMap& phi, const Strategy& s, const Limits& lim) {
  if (s.is_exhaustive()) return enumerate_domain(phi.field(), phi.n(), lim);
  std::vector<Mat> pts;
  Rng rng(s.seed ^ 0x5eed5eed5eed5eedULL);
  const Field& f = phi.field();
  pts.push_back(Mat::zero(f, phi.n()));
  pts.push_back(Mat::identity(f, phi.n()));
  while (pts.size() < s.count) pts.push_back(random_probe(f, phi.n(), rng));
  return pts;
}

// Looks for a partner Y exposing φ(X*Y) != φ(X)*φ(Y).
inline std::optional<Violation> find_violating_pair(const JordanMap& phi, const Mat& x, const std::vector<Mat>& points) {
  const Field& f = phi.field();
  const std::size_t n = phi.n();
  std::vector<Mat> partners{Mat::zero(f, n), x, Mat::identity(f, n)};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) partners.push_back(Mat::unit(f, n, i, j));
  }
  for (std::size_t t = 0; t < points.size() && t < 256; ++t) partners.push_back(points[t]);
  for (const auto& y : partners) {
    for (int order = 0; order < 2; ++order) {
      const Mat& a = order == 0 ? x : y;
      const Mat& b = order == 0 ? y : x;
      Mat lhs = phi(jordan_product(phi.mode(), a, b));
      Mat rhs = jordan_product(phi.mode(), phi(a), phi(b));
      if (!(lhs == rhs)) return Violation{a, b, std::move(lhs), std::move(rhs)};
    }
  }
  return std::nullopt;
}

[[noreturn]] inline void reject(const JordanMap& phi, const Mat& x, const std::vector<Mat>& points,
                                const std::string& stage, const std::string& detail,
                                std::vector<std::pair<std::string, Mat>> witness) {
  if (auto v = find_violating_pair(phi, x, points)) throw NotJordanMultiplicative(std::move(*v));
  throw InvariantViolation(stage, detail, std::move(witness));
}

inline Mat normalize_leading(const Mat& t) {
  for (const auto& e : t.entries()) {
    if (!e.is_zero()) return e.inv() * t;
  }
  return t;
}

// Constant and zero branches shared by square and rectangular targets.
inline std::optional<CanonicalForm> constant_branch(const JordanMap& psi, const std::vector<Mat>& points,
                                                    bool force) {
  const Field& f = psi.field();
  const Mat zero = Mat::zero(f, psi.n());
  const Mat p0 = psi(zero);
  const bool zero_map_candidate = !force && p0.is_zero() && psi(Mat::unit(f, psi.n(), 1, 1)).is_zero();
  if (!force && p0.is_zero() && !zero_map_candidate) return std::nullopt;
  if (!p0.is_idempotent()) {
    reject(psi, zero, points, "constant", "φ(0) is not idempotent", {{"phi(0)", p0}});
  }
  for (const auto& x : points) {
    const Mat fx = psi(x);
    if (!(fx == p0)) {
      reject(psi, x, points, "constant", "map is not constant although φ(0) forces it",
             {{"X", x}, {"phi(X)", fx}, {"phi(0)", p0}});
    }
  }
  if (p0.is_zero()) return CanonicalForm{ZeroForm{}, Product::circ, f, psi.n(), psi.m()};
  return CanonicalForm{ConstantForm{p0}, Product::circ, f, psi.n(), psi.m()};
}

struct Recovered {
  CanonicalForm form;
  OrientationSet orientation;
};

// ∘-mode square pipeline for a map with φ(0) = 0 and φ(E_11) != 0.
inline Recovered recover_conjugation(const JordanMap& psi, const std::vector<Mat>& points, std::uint64_t seed) {
  const Field& f = psi.field();
  const std::size_t n = psi.n();
  auto unit = [&](std::size_t i, std::size_t j) { return Mat::unit(f, n, i, j); };

  // Images of the diagonal units: a complete orthogonal rank-one family.
  std::vector<Mat> qs;
  for (std::size_t j = 1; j <= n; ++j) qs.push_back(psi(unit(j, j)));
  Mat t1 = Mat::identity(f, n);
  try {
    t1 = simultaneous_diagonalizer(IdempotentFamily(qs));
  } catch (const InvalidArgument& e) {
    std::vector<std::pair<std::string, Mat>> w;
    for (std::size_t j = 0; j < n; ++j) w.emplace_back("phi(E_" + std::to_string(j + 1) + std::to_string(j + 1) + ")", qs[j]);
    reject(psi, unit(1, 1), points, "idempotent_family", e.what(), std::move(w));
  }
  const Mat t1_inv = t1.inverse();
  auto normalized = [&](const Mat& x) { return t1_inv * psi(x) * t1; };

  // Orientation of every off-diagonal unit.
  OrientationSet orient;
  orient.n = n;
  std::vector<std::optional<Scalar>> g(n * n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (i == j) continue;
      const Mat img = normalized(unit(i, j));
      if (auto pr = proportional(img, unit(i, j)); pr && !pr->both_zero()) {
        orient.direct.insert({i, j});
        g[(i - 1) * n + (j - 1)] = pr->factor;
      } else if (auto pt = proportional(img, unit(j, i)); pt && !pt->both_zero()) {
        orient.transposed.insert({i, j});
        g[(i - 1) * n + (j - 1)] = pt->factor;
      } else {
        reject(psi, unit(i, j), points, "orientation",
               "normalized image of E_" + std::to_string(i) + std::to_string(j) + " is proportional to neither E_ij nor E_ji",
               {{"E_ij", unit(i, j)}, {"T1^-1 phi(E_ij) T1", img}});
      }
    }
  }
  const bool transpose = orient.transposed.contains({1, 2});
  if (!orient.coherent() || !OrientationSet::closed(transpose ? orient.transposed : orient.direct, n)) {
    const auto& odd = transpose ? orient.direct : orient.transposed;
    const IndexPair w = odd.empty() ? IndexPair{1, 2} : *odd.begin();
    reject(psi, unit(w.i, w.j), points, "orientation", "mixed orientation across matrix units",
           {{"E_ij", unit(w.i, w.j)}, {"phi(E_ij)", psi(unit(w.i, w.j))}});
  }

  // Transitivity of g(i,j) with g(i,i) = 1.
  auto gv = [&](std::size_t i, std::size_t j) { return i == j ? f.one() : *g[(i - 1) * n + (j - 1)]; };
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t k = 1; k <= n; ++k) {
        if (!(gv(i, j) * gv(j, k) == gv(i, k))) {
          reject(psi, unit(i, j), points, "transitivity",
                 "g(" + std::to_string(i) + "," + std::to_string(j) + ") g(" + std::to_string(j) + "," +
                     std::to_string(k) + ") != g(" + std::to_string(i) + "," + std::to_string(k) + ")",
                 {{"phi(E_ij)", psi(unit(i, j))}, {"phi(E_jk)", psi(unit(j, k))}, {"phi(E_ik)", psi(unit(i, k))}});
        }
      }
    }
  }
  std::vector<Scalar> d;
  for (std::size_t i = 1; i <= n; ++i) d.push_back(gv(i, 1));
  const Mat dm = Mat::diagonal(f, d);
  const Mat t = normalize_leading(t1 * (transpose ? dm.inverse() : dm));
  const Mat t_inv = t.inverse();

  // ω from φ(λE_11) = T ω(λ) E_11 T^-1.
  auto omega_at = [&](const Scalar& lambda) {
    const Mat x = lambda * unit(1, 1);
    const Mat img = t_inv * psi(x) * t;
    const Scalar w = img(0, 0);
    if (!(img == w * unit(1, 1))) {
      reject(psi, x, points, "omega", "T^-1 φ(λE_11) T is not a multiple of E_11", {{"lambda E_11", x}, {"phi", psi(x)}});
    }
    return w;
  };
  std::vector<Scalar> sample;
  const bool enumerable = f.order() && *f.order() <= 4096;
  if (enumerable) {
    sample = f.elements();
  } else {
    Rng rng(seed ^ 0x0e6a0e6a0e6a0e6aULL);
    for (int t2 = 0; t2 < 200; ++t2) sample.push_back(random_scalar(f, rng));
  }
  std::vector<Scalar> omega_values;
  for (const auto& s : sample) omega_values.push_back(omega_at(s));
  const std::size_t pair_span = std::min<std::size_t>(sample.size(), enumerable ? 256 : 32);
  for (std::size_t a = 0; a < pair_span; ++a) {
    for (std::size_t b = 0; b < pair_span; ++b) {
      const Scalar sum_img = omega_at(sample[a] + sample[b]);
      const Scalar prod_img = omega_at(sample[a] * sample[b]);
      if (!(sum_img == omega_values[a] + omega_values[b]) || !(prod_img == omega_values[a] * omega_values[b])) {
        const Mat x = sample[a] * unit(1, 1);
        reject(psi, x, points, "omega", "recovered ω is not a ring homomorphism",
               {{"lambda E_11", x}, {"mu E_11", sample[b] * unit(1, 1)}});
      }
    }
  }
  std::optional<RingEndo> omega;
  for (const auto& cand : enumerate_endomorphisms(f)) {
    bool match = true;
    for (std::size_t s = 0; s < sample.size() && match; ++s) match = cand(sample[s]) == omega_values[s];
    if (match) {
      omega = cand;
      break;
    }
  }
  if (!omega) {
    reject(psi, unit(1, 1), points, "omega", "recovered ω matches no enumerated endomorphism", {});
  }

  CanonicalForm form{ConjugationForm{t, *omega, transpose}, Product::circ, f, n, n};
  const JordanMap candidate = form.to_map();

  // Full comparison, then the triple-product and entry-extraction cross-checks.
  for (const auto& x : points) {
    const Mat fx = psi(x);
    const Mat expected = candidate(x);
    if (!(fx == expected)) {
      reject(psi, x, points, "verification", "map differs from the recovered form",
             {{"X", x}, {"phi(X)", fx}, {"form(X)", expected}});
    }
  }
  const Scalar half = f.from_int(2).inv();
  for (std::size_t s = 0; s < points.size() && s < 64; ++s) {
    const Mat& x = points[s];
    const Mat fx = psi(x);
    Mat nu = t_inv * fx * t;
    if (transpose) nu = nu.transpose();
    for (std::size_t i = 1; i <= n; ++i) {
      const Mat p = unit(i, i);
      const Mat fp = psi(p);
      if (!(psi(p * x * p) == fp * fx * fp)) {
        reject(psi, x, points, "entry_extraction", "φ(PXP) != φ(P)φ(X)φ(P)", {{"X", x}, {"P", p}});
      }
      for (std::size_t j = 1; j <= n; ++j) {
        const Scalar expect = (*omega)(x(i - 1, j - 1));
        bool ok = true;
        if (i == j) {
          Mat via = t_inv * psi(p * x * p) * t;
          ok = via == expect * p;
        } else {
          const Mat eji = unit(j, i);
          ok = jordan_circ(jordan_circ(eji, nu), eji) == (half * expect) * eji;
        }
        if (!ok) {
          reject(psi, x, points, "entry_extraction",
                 "entry (" + std::to_string(i) + "," + std::to_string(j) + ") disagrees with ω(X_ij)", {{"X", x}});
        }
      }
    }
  }
  return {std::move(form), std::move(orient)};
}

inline void require_classifiable_field(const Field& f) {
  if (f.is_char2()) throw Unsupported("classification requires characteristic != 2");
}

}  // namespace detail

// Constant-or-zero verdict for maps M_n -> M_m with m < n.
inline Classification classify_rectangular(const JordanMap& phi, const Strategy& s, const Limits& lim = {}) {
  detail::require_classifiable_field(phi.field());
  if (phi.m() >= phi.n()) throw InvalidArgument("classify_rectangular needs a target smaller than the domain");
  Classification out{CanonicalForm{ZeroForm{}, phi.mode(), phi.field(), phi.n(), phi.m()}, {}, 0, std::nullopt};
  out.multiplicativity = check_multiplicative(phi, s, lim);
  if (out.multiplicativity.violation) throw NotJordanMultiplicative(*out.multiplicativity.violation);
  const JordanMap psi = phi.mode() == Product::diamond ? diamond_to_circ(phi) : phi;
  const auto points = detail::verification_points(psi, s, lim);
  out.form = *detail::constant_branch(psi, points, true);
  out.form.mode = phi.mode();
  out.points_verified = points.size();
  return out;
}

inline Classification classify(const JordanMap& phi, const Strategy& s, const Limits& lim = {}) {
  if (phi.n() < 2) throw Unsupported("classification needs n >= 2");
  detail::require_classifiable_field(phi.field());
  if (phi.m() < phi.n()) return classify_rectangular(phi, s, lim);
  if (phi.m() > phi.n()) throw Unsupported("targets larger than the domain are outside the classification");

  Classification out{CanonicalForm{ZeroForm{}, phi.mode(), phi.field(), phi.n(), phi.m()}, {}, 0, std::nullopt};
  out.multiplicativity = check_multiplicative(phi, s, lim);
  if (out.multiplicativity.violation) throw NotJordanMultiplicative(*out.multiplicativity.violation);

  const JordanMap psi = phi.mode() == Product::diamond ? diamond_to_circ(phi) : phi;
  const auto points = detail::verification_points(psi, s, lim);
  out.points_verified = points.size();
  if (auto c = detail::constant_branch(psi, points, false)) {
    out.form = *c;
  } else {
    auto rec = detail::recover_conjugation(psi, points, s.seed);
    out.form = std::move(rec.form);
    out.orientation = std::move(rec.orientation);
  }
  out.form.mode = phi.mode();
  return out;
}

}  // namespace jmap

#endif  // JMAP_CLASSIFIER_HPP
