#ifndef JMAP_IO_HPP
#define JMAP_IO_HPP

// JSON documents (schema "1"):
//
//   field        {"kind":"rational"} | {"kind":"prime","p":5}
//                | {"kind":"galois","p":3,"modulus":[1,0,1]}   (ascending, monic)
//   scalar       integer or "a/b" string; Galois elements are coefficient arrays
//   matrix       {"n":rows,"m":cols,"entries":[[...],...]}
//   certificate  {"schema","field","start","steps":[{"y","result"}]}
//   map table    {"schema","field","n","m","mode","entries":[{"x","fx"}]}
//   form         {"schema","field","n","m","mode","variant", "P" | "T","omega","transpose"}

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jmap/counterexamples.hpp"
#include "jmap/generation.hpp"
#include "jmap/idempotent_suite.hpp"

namespace jmap::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "1";

namespace detail {

template <typename T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("field '") + key + "' has the wrong type");
  }
}

inline void check_schema(const json& j) {
  if (j.is_object() && j.contains("schema") && j.at("schema") != kSchema) {
    throw InvalidArgument("unsupported schema version " + j.at("schema").dump());
  }
}

}  // namespace detail

inline json to_json(const Field& f) {
  switch (f.kind()) {
    case FieldKind::rational: return {{"kind", "rational"}};
    case FieldKind::prime: return {{"kind", "prime"}, {"p", f.characteristic()}};
    case FieldKind::galois: return {{"kind", "galois"}, {"p", f.characteristic()}, {"modulus", f.modulus()}};
  }
  return {};
}

inline Field field_from_json(const json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  if (kind == "rational") return Field::rational();
  if (kind == "prime") return Field::prime(detail::get<std::uint64_t>(j, "p"));
  if (kind == "galois") {
    return Field::galois(detail::get<std::uint64_t>(j, "p"), detail::get<std::vector<std::uint64_t>>(j, "modulus"));
  }
  throw InvalidArgument("unknown field kind '" + kind + "'");
}

// "Q", "F5", "F_5", "F9", ... or an inline JSON field object. Extension fields
// use the first monic irreducible in ascending coefficient order (F9: x^2+1
// over F_3, F25: x^2+2 over F_5).
inline Field parse_field(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty field specification");
  if (text.front() == '{') {
    try {
      return field_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw InvalidArgument(std::string("malformed field JSON: ") + e.what());
    }
  }
  if (text == "Q" || text == "QQ") return Field::rational();
  std::string digits = text;
  if (digits.rfind("F_", 0) == 0) {
    digits = digits.substr(2);
  } else if (digits.rfind("F", 0) == 0 || digits.rfind("GF", 0) == 0) {
    digits = digits.substr(digits[0] == 'G' ? 2 : 1);
  } else {
    throw InvalidArgument("unknown field '" + text + "'");
  }
  std::uint64_t q = 0;
  try {
    std::size_t used = 0;
    q = std::stoull(digits, &used);
    if (used != digits.size()) throw InvalidArgument("");
  } catch (const std::exception&) {
    throw InvalidArgument("unknown field '" + text + "'");
  }
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q < 2) throw InvalidArgument("field order must be a prime power");
  if (q % p != 0) p = q;
  unsigned k = 0;
  for (std::uint64_t r = q; r > 1; r /= p, ++k) {
    if (r % p != 0) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  }
  if (k == 1) return Field::prime(p);
  if (k > kMaxDegree) throw Unsupported("extension degree above " + std::to_string(kMaxDegree));
  std::vector<std::uint64_t> mod(k + 1, 0);
  mod[k] = 1;
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < k; ++i) {
      mod[i] = rest % p;
      rest /= p;
    }
    if (jmap::detail::is_irreducible(mod, p)) return Field::galois(p, mod);
  }
  throw InvalidArgument("no irreducible polynomial found for " + text);
}

inline json to_json(const Scalar& s) {
  switch (s.field().kind()) {
    case FieldKind::galois: return s.coeffs();
    case FieldKind::prime: return s.coeffs()[0];
    case FieldKind::rational: {
      const Rational& q = s.rational();
      if (boost::multiprecision::denominator(q) == 1) {
        const BigInt num = boost::multiprecision::numerator(q);
        if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max()) {
          return num.convert_to<std::int64_t>();
        }
      }
      return s.to_string();
    }
  }
  return {};
}

inline Scalar scalar_from_json(const Field& f, const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return f.parse(std::to_string(j.get<std::uint64_t>()));
    return f.from_int(j.get<std::int64_t>());
  }
  if (j.is_string()) return f.parse(j.get<std::string>());
  if (j.is_array()) {
    std::vector<std::int64_t> c;
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw InvalidArgument("coefficient arrays hold integers");
      c.push_back(v.get<std::int64_t>());
    }
    return f.from_coeffs(c);
  }
  throw InvalidArgument("cannot read a scalar from " + j.dump());
}

inline json to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"m", m.cols()}, {"entries", std::move(rows)}};
}

inline Mat mat_from_json(const Field& f, const json& j) {
  const auto& rows = j.is_array() ? j : (j.contains("entries") ? j.at("entries") : json());
  if (!rows.is_array() || rows.empty()) throw InvalidArgument("matrix needs a nonempty 'entries' array of rows");
  const std::size_t r = rows.size();
  const std::size_t c = rows.front().is_array() ? rows.front().size() : 0;
  if (c == 0) throw InvalidArgument("matrix rows must be nonempty arrays");
  if (j.is_object()) {
    if (j.contains("n") && detail::get<std::size_t>(j, "n") != r) throw InvalidArgument("'n' disagrees with entries");
    if (j.contains("m") && detail::get<std::size_t>(j, "m") != c) throw InvalidArgument("'m' disagrees with entries");
  }
  std::vector<Scalar> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != c) throw InvalidArgument("ragged matrix rows");
    for (const auto& v : row) e.push_back(scalar_from_json(f, v));
  }
  return Mat(f, r, c, std::move(e));
}

inline json to_json(const Certificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back({{"y", to_json(s.y)}, {"result", to_json(s.result)}});
  return {{"schema", kSchema}, {"field", to_json(c.start.field())}, {"start", to_json(c.start)}, {"steps", steps}};
}

inline Certificate certificate_from_json(const json& j) {
  detail::check_schema(j);
  const Field f = field_from_json(detail::get<json>(j, "field"));
  Certificate c{mat_from_json(f, detail::get<json>(j, "start")), {}};
  for (const auto& s : detail::get<json>(j, "steps")) {
    c.steps.push_back({mat_from_json(f, detail::get<json>(s, "y")), mat_from_json(f, detail::get<json>(s, "result"))});
  }
  return c;
}

inline Product product_from_string(const std::string& s) {
  if (s == "circ") return Product::circ;
  if (s == "diamond") return Product::diamond;
  throw InvalidArgument("mode must be 'circ' or 'diamond', got '" + s + "'");
}

// Map tables above this many entries are refused.
inline constexpr std::uint64_t kMaxTableEntries = 10'000;

inline json map_table_to_json(const JordanMap& phi) {
  const auto size = Mat::domain_size(phi.field(), phi.n(), phi.n());
  if (!size || *size > kMaxTableEntries) throw Unsupported("domain too large to tabulate");
  json entries = json::array();
  for (std::uint64_t i = 0; i < *size; ++i) {
    const Mat x = Mat::from_index(phi.field(), phi.n(), phi.n(), i);
    entries.push_back({{"x", to_json(x)}, {"fx", to_json(phi(x))}});
  }
  return {{"schema", kSchema}, {"field", to_json(phi.field())}, {"n", phi.n()}, {"m", phi.m()},
          {"mode", to_string(phi.mode())}, {"entries", std::move(entries)}};
}

inline JordanMap map_from_table_json(const json& j) {
  detail::check_schema(j);
  const Field f = field_from_json(detail::get<json>(j, "field"));
  const auto n = detail::get<std::size_t>(j, "n");
  const auto m = j.contains("m") ? detail::get<std::size_t>(j, "m") : n;
  const Product mode = product_from_string(j.contains("mode") ? detail::get<std::string>(j, "mode") : "circ");
  const auto& entries = detail::get<json>(j, "entries");
  if (!entries.is_array()) throw InvalidArgument("'entries' must be an array");
  if (entries.size() > kMaxTableEntries) {
    throw Unsupported("map table has " + std::to_string(entries.size()) + " entries (limit " +
                      std::to_string(kMaxTableEntries) + "); describe the map with --form instead");
  }
  std::vector<std::pair<Mat, Mat>> pairs;
  pairs.reserve(entries.size());
  for (const auto& e : entries) {
    pairs.emplace_back(mat_from_json(f, detail::get<json>(e, "x")), mat_from_json(f, detail::get<json>(e, "fx")));
  }
  return JordanMap::table(f, n, m, mode, pairs);
}

inline json to_json(const RingEndo& w) {
  if (w.is_identity()) return {{"kind", "identity"}, {"e", 0}};
  return {{"kind", "frobenius"}, {"e", w.power()}};
}

inline RingEndo endo_from_json(const Field& f, const json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  if (kind == "identity") return RingEndo::identity(f);
  if (kind == "frobenius") return RingEndo::frobenius(f, detail::get<unsigned>(j, "e"));
  throw InvalidArgument("unknown endomorphism kind '" + kind + "'");
}

inline json to_json(const CanonicalForm& form) {
  json j{{"schema", kSchema},           {"variant", form.variant_name()}, {"field", to_json(form.field)},
         {"n", form.n},                 {"m", form.m},                    {"mode", to_string(form.mode)}};
  if (form.is_constant()) j["P"] = to_json(form.constant().p);
  if (form.is_conjugation()) {
    const auto& c = form.conjugation();
    j["T"] = to_json(c.t);
    j["omega"] = to_json(c.omega);
    j["transpose"] = c.transpose;
  }
  return j;
}

inline CanonicalForm form_from_json(const json& j) {
  detail::check_schema(j);
  const Field f = field_from_json(detail::get<json>(j, "field"));
  const auto variant = detail::get<std::string>(j, "variant");
  const Product mode = product_from_string(j.contains("mode") ? detail::get<std::string>(j, "mode") : "circ");
  if (variant == "conjugation") {
    const Mat t = mat_from_json(f, detail::get<json>(j, "T"));
    if (!t.is_square() || !t.is_invertible()) throw InvalidArgument("'T' must be square and invertible");
    const RingEndo w = j.contains("omega") ? endo_from_json(f, j.at("omega")) : RingEndo::identity(f);
    const bool tr = j.contains("transpose") && detail::get<bool>(j, "transpose");
    return {ConjugationForm{t, w, tr}, mode, f, t.rows(), t.rows()};
  }
  const auto n = detail::get<std::size_t>(j, "n");
  const auto m = j.contains("m") ? detail::get<std::size_t>(j, "m") : n;
  if (variant == "zero") return {ZeroForm{}, mode, f, n, m};
  if (variant == "constant") {
    const Mat p = mat_from_json(f, detail::get<json>(j, "P"));
    if (p.rows() != m || !p.is_square()) throw InvalidArgument("'P' must be m x m");
    if (!p.is_idempotent()) throw InvalidArgument("'P' must be idempotent");
    return {ConstantForm{p}, mode, f, n, m};
  }
  throw InvalidArgument("unknown variant '" + variant + "'");
}

inline json to_json(const Violation& v) {
  return {{"x", to_json(v.x)}, {"y", to_json(v.y)}, {"lhs", to_json(v.lhs)}, {"rhs", to_json(v.rhs)}};
}

inline json to_json(const MultiplicativityReport& r) {
  json j{{"strategy", r.strategy.to_string()}, {"mode", to_string(r.mode)},
         {"pairs_checked", r.pairs_checked},   {"passed", r.passed()},
         {"qualifier", r.qualifier()}};
  if (r.strategy.is_exhaustive()) j["domain_size"] = r.domain_size;
  if (r.violation) j["violation"] = to_json(*r.violation);
  return j;
}

inline json to_json(const Classification& c) {
  json j = to_json(c.form);
  j["verification"] = to_json(c.multiplicativity);
  j["points_verified"] = c.points_verified;
  j["qualifier"] = c.qualifier();
  return j;
}

inline json witness_to_json(const std::vector<std::pair<std::string, Mat>>& w) {
  json out = json::object();
  for (const auto& [name, m] : w) out[name] = to_json(m);
  return out;
}

inline json to_json(const CounterexampleBundle& b) {
  const auto& a = b.non_additive;
  const auto& c = b.non_constant;
  return {{"schema", kSchema},
          {"name", b.name},
          {"domain", b.domain},
          {"field", to_json(b.map.field())},
          {"n", b.map.n()},
          {"m", b.map.m()},
          {"mode", to_string(b.map.mode())},
          {"evidence", to_json(b.evidence)},
          {"non_additive",
           {{"x", to_json(a.x)}, {"y", to_json(a.y)}, {"fx", to_json(a.fx)}, {"fy", to_json(a.fy)},
            {"f_sum", to_json(a.fsum)}}},
          {"non_constant", {{"x", to_json(c.x)}, {"y", to_json(c.y)}, {"fx", to_json(c.fx)}, {"fy", to_json(c.fy)}}},
          {"replayed", b.replay()}};
}

inline json to_json(const IdempotentSuiteReport& r) {
  json items = json::array();
  for (const auto& it : r.items) {
    json j{{"item", std::string(1, it.item)}, {"applicable", it.applicable}, {"checks", it.checks},
           {"failures", it.failures}};
    if (!it.applicable) j["precondition"] = it.precondition;
    if (it.witness) j["witness"] = {{"relation", it.witness->relation}, {"matrices", witness_to_json(it.witness->mats)}};
    items.push_back(std::move(j));
  }
  return {{"items", items}, {"inputs_evaluated", r.inputs.size()}, {"passed", r.all_passed()}};
}

// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("malformed JSON in " + origin + ": " + e.what());
  }
}

}  // namespace jmap::io

#endif  // JMAP_IO_HPP
