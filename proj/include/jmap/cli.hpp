#ifndef JMAP_CLI_HPP
#define JMAP_CLI_HPP

// Argument handling and report assembly for the jmap executable.
//
//   jmap certify MATRIX.json           chain X -> ... -> I
//   jmap replay CERT.json              re-check a certificate
//   jmap classify --map T.json | --form F.json
//   jmap verify --map T.json           multiplicativity scan only
//   jmap tabulate --form F.json        map table of a canonical form
//   jmap counterexample triangular|char2|block
//   jmap suite                         acceptance battery
//
// Shared flags: --field --n --mode --verify --seed --out --max-domain.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jmap/suite.hpp"

namespace jmap::cli {

// Writes via a sibling temporary and a rename.
inline void write_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw InvalidArgument("cannot write '" + tmp.string() + "'");
    o << text;
    o.flush();
    if (!o) throw InvalidArgument("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

struct Options {
  std::string field;
  std::optional<std::size_t> n;
  std::string mode;
  std::string verify;
  std::uint64_t seed = 0;
  std::string out;
  std::uint64_t max_domain = Limits{}.max_domain;

  std::string matrix_file;
  std::string certificate_file;
  std::string map_file;
  std::string form_file;
  std::string example;
  std::uint64_t power = 2;
  std::string a_file;
  std::string b_file;
  std::string p_file;
};

namespace detail {

struct Context {
  const Options& opt;
  std::string digest_input;
  json field = nullptr;
  json strategy = nullptr;

  std::string read(const std::string& path) {
    std::string text = io::read_file(path);
    digest_input += text;
    digest_input.push_back('\0');
    return text;
  }
  json read_json(const std::string& path) { return io::parse_json(read(path), path); }

  std::optional<Field> field_flag() const {
    if (opt.field.empty()) return std::nullopt;
    return io::parse_field(opt.field);
  }

  Limits limits() const {
    Limits lim;
    lim.max_domain = opt.max_domain;
    return lim;
  }
};

// Fills "field" and "mode" of a table/form document from flags.
inline void apply_flags(json& doc, const Context& ctx) {
  if (auto f = ctx.field_flag()) {
    const json fj = io::to_json(*f);
    if (doc.contains("field") && io::field_from_json(doc.at("field")) != *f) {
      throw InvalidArgument("--field disagrees with the field recorded in the file");
    }
    doc["field"] = fj;
  }
  if (!ctx.opt.mode.empty()) doc["mode"] = ctx.opt.mode;
}

inline JordanMap load_map(Context& ctx) {
  if (!ctx.opt.map_file.empty()) {
    json doc = ctx.read_json(ctx.opt.map_file);
    if (doc.contains("table")) doc = json(doc.at("table"));
    apply_flags(doc, ctx);
    return io::map_from_table_json(doc);
  }
  json doc = ctx.read_json(ctx.opt.form_file);
  if (doc.contains("form")) doc = json(doc.at("form"));
  apply_flags(doc, ctx);
  return io::form_from_json(doc).to_map();
}

inline Strategy pick_strategy(Context& ctx, const JordanMap& phi) {
  const Strategy s = ctx.opt.verify.empty() ? default_strategy(phi, ctx.opt.seed, ctx.limits())
                                            : Strategy::parse(ctx.opt.verify, ctx.opt.seed);
  ctx.strategy = s.to_string();
  return s;
}

inline Mat matrix_arg(Context& ctx, const std::string& path, const Field& f, Mat fallback) {
  if (path.empty()) return fallback;
  return read_matrix(ctx.read_json(path), f);
}

inline Outcome dispatch(const std::string& command, Context& ctx) {
  const Options& opt = ctx.opt;
  if (command == "certify") {
    return guarded([&] {
      const json doc = ctx.read_json(opt.matrix_file);
      const auto flag = ctx.field_flag();
      const Mat x = read_matrix(doc, flag);
      ctx.field = io::to_json(x.field());
      if (opt.n && *opt.n != x.rows()) throw InvalidArgument("--n disagrees with the matrix size");
      return cmd_certify(doc, flag);
    });
  }
  if (command == "replay") {
    return guarded([&] {
      const json doc = ctx.read_json(opt.certificate_file);
      if (doc.contains("field")) ctx.field = doc.at("field");
      return cmd_replay(doc.contains("certificate") ? doc.at("certificate") : doc);
    });
  }
  if (command == "classify" || command == "verify") {
    return guarded([&] {
      const JordanMap phi = load_map(ctx);
      ctx.field = io::to_json(phi.field());
      if (opt.n && *opt.n != phi.n()) throw InvalidArgument("--n disagrees with the map");
      const Strategy s = pick_strategy(ctx, phi);
      return command == "classify" ? cmd_classify(phi, s, ctx.limits()) : cmd_verify(phi, s, ctx.limits());
    });
  }
  if (command == "tabulate") {
    return guarded([&] {
      const JordanMap phi = load_map(ctx);
      ctx.field = io::to_json(phi.field());
      return Outcome{kOk, "tabulated", {{"table", io::map_table_to_json(phi)}}};
    });
  }
  if (command == "counterexample") {
    return guarded([&] {
      const std::size_t n = opt.n.value_or(2);
      if (opt.example == "triangular") {
        const Field f = ctx.field_flag().value_or(Field::prime(5));
        ctx.field = io::to_json(f);
        const std::uint64_t k = opt.power;
        return cmd_counterexample(
            [&] { return triangular_example(f, n, [k](const Scalar& s) { return s.pow(k); }, opt.seed); });
      }
      if (opt.example == "char2") {
        const Field f = ctx.field_flag().value_or(Field::prime(2));
        ctx.field = io::to_json(f);
        const Mat a = matrix_arg(ctx, opt.a_file, f, Mat::unit(f, n, 1, 1));
        const Mat b = matrix_arg(ctx, opt.b_file, f, Mat::unit(f, n, 1, 2));
        return cmd_counterexample([&] { return char2_example(a, b, opt.seed); });
      }
      const Field f = ctx.field_flag().value_or(Field::prime(3));
      ctx.field = io::to_json(f);
      const Mat p = matrix_arg(ctx, opt.p_file, f, Mat::unit(f, n, 1, 1));
      return cmd_counterexample([&] { return block_embedding_example(p, opt.seed); });
    });
  }
  // suite
  suite::Config cfg;
  if (opt.seed != 0) cfg.seed = opt.seed;
  json rows = json::array();
  bool all = true;
  for (const auto& r : suite::run_all(cfg)) {
    all = all && r.passed();
    rows.push_back({{"id", r.id},
                    {"title", r.title},
                    {"passed", r.passed()},
                    {"correct", r.correct},
                    {"seconds", r.seconds},
                    {"limit_seconds", r.limit_seconds},
                    {"detail", r.detail}});
  }
  return {all ? kOk : kFailed, all ? "suite_passed" : "suite_failed",
          {{"seed", cfg.seed}, {"passed", all}, {"criteria", rows}}};
}

}  // namespace detail

// Exit code for an exception that escaped a command body.
inline int exit_code_for(std::exception_ptr ep, std::ostream& err) {
  const Outcome o = guarded([&]() -> Outcome { std::rethrow_exception(ep); });
  if (!o.body.contains("error")) return kInternal;
  err << "jmap: " << o.body.at("error").get<std::string>() << "\n";
  return o.exit_code;
}

// Entry point; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact classification of Jordan multiplicative maps on matrix algebras", "jmap"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", opt.field, "Q, F<q> (e.g. F5, F9) or an inline JSON field");
  app.add_option("--n", opt.n, "matrix size");
  app.add_option("--mode", opt.mode, "Jordan product")->check(CLI::IsMember({"circ", "diamond"}));
  app.add_option("--verify", opt.verify, "exhaustive | sampled:N:SEED");
  app.add_option("--seed", opt.seed, "seed for every sampled step");
  app.add_option("--out", opt.out, "write the report here instead of stdout");
  app.add_option("--max-domain", opt.max_domain, "largest domain scanned exhaustively");

  auto* certify = app.add_subcommand("certify", "certificate that X generates M_n as a Jordan ideal");
  certify->add_option("matrix", opt.matrix_file, "matrix JSON")->required();
  auto* replay = app.add_subcommand("replay", "replay a certificate");
  replay->add_option("certificate", opt.certificate_file, "certificate or certify report JSON")->required();
  auto* classify = app.add_subcommand("classify", "canonical form of a Jordan multiplicative map");
  auto* verify = app.add_subcommand("verify", "check Jordan multiplicativity");
  auto* tabulate = app.add_subcommand("tabulate", "map table of a form or table over a finite domain");
  for (auto* sub : {classify, verify, tabulate}) {
    auto* map = sub->add_option("--map", opt.map_file, "map table JSON");
    auto* form = sub->add_option("--form", opt.form_file, "canonical form JSON");
    map->excludes(form);
    sub->require_option(1);
  }
  auto* cex = app.add_subcommand("counterexample", "non-additive, non-constant Jordan multiplicative maps");
  cex->add_option("name", opt.example)->required()->check(CLI::IsMember({"triangular", "char2", "block"}));
  cex->add_option("--power", opt.power, "triangular: ω(x) = x^k");
  cex->add_option("--A", opt.a_file, "char2: trace-one matrix A");
  cex->add_option("--B", opt.b_file, "char2: nonzero image B");
  cex->add_option("--P", opt.p_file, "block: nonzero idempotent P");
  app.add_subcommand("suite", "run the acceptance battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUnsupported;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  detail::Context ctx{opt, command, nullptr, nullptr};
  for (int i = 1; i < argc; ++i) {
    ctx.digest_input += argv[i];
    ctx.digest_input.push_back('\0');
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = detail::dispatch(command, ctx);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    json report{{"schema", io::kSchema},
                {"command", command},
                {"input_digest", io::hex64(io::fnv1a(ctx.digest_input))},
                {"field", ctx.field},
                {"strategy", ctx.strategy},
                {"outcome", o.outcome},
                {"exit_code", o.exit_code},
                {"timing_ms", ms}};
    for (auto& [k, v] : o.body.items()) report[k] = v;
    const std::string text = report.dump(2) + "\n";
    if (opt.out.empty()) {
      out << text;
    } else {
      write_atomic(opt.out, text);
      out << command << ": " << o.outcome << " (exit " << o.exit_code << ") -> " << opt.out << "\n";
    }
    if (o.exit_code != kOk && o.body.contains("error")) err << "jmap: " << o.body.at("error").get<std::string>() << "\n";
    return o.exit_code;
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
}

}  // namespace jmap::cli

#endif  // JMAP_CLI_HPP
