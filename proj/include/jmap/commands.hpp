#ifndef JMAP_COMMANDS_HPP
#define JMAP_COMMANDS_HPP

// Command bodies shared by the jmap executable and the acceptance battery.
// Each returns an exit code plus the command-specific part of the report.
//
// Exit codes:
//   0  success (certified, classified, verified, bundle built, suite passed)
//   1  internal error
//   2  not Jordan multiplicative / verification failed / suite failed
//   3  invariant violation inside the classification pipeline
//   4  unsupported or invalid input (includes usage errors)

#include <optional>
#include <string>

#include "jmap/io.hpp"

namespace jmap::cli {

using io::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kFailed = 2, kInvariant = 3, kUnsupported = 4 };

struct Outcome {
  int exit_code = kOk;
  std::string outcome;
  json body = json::object();
};

// Runs fn, turning library errors into exit codes with a diagnostic body.
template <typename Fn>
Outcome guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const NotJordanMultiplicative& e) {
    return {kFailed, "not_jordan_multiplicative", {{"error", e.what()}, {"witness", io::to_json(e.witness())}}};
  } catch (const InvariantViolation& e) {
    return {kInvariant, "invariant_violation",
            {{"error", e.what()}, {"stage", e.stage()}, {"witness", io::witness_to_json(e.witness())}}};
  } catch (const Error& e) {
    return {kUnsupported, "unsupported_input", {{"error", e.what()}}};
  } catch (const std::exception& e) {
    return {kInternal, "internal_error", {{"error", std::string("internal error: ") + e.what()}}};
  }
}

// A matrix document: a matrix object, optionally carrying "field".
inline Mat read_matrix(const json& doc, const std::optional<Field>& field) {
  const json& m = doc.contains("matrix") ? doc.at("matrix") : doc;
  std::optional<Field> f = field;
  if (!f && doc.contains("field")) f = io::field_from_json(doc.at("field"));
  if (!f) throw InvalidArgument("no field given: pass --field or include \"field\" in the matrix file");
  return io::mat_from_json(*f, m);
}

inline Outcome cmd_certify(const json& doc, const std::optional<Field>& field) {
  return guarded([&] {
    const Mat x = read_matrix(doc, field);
    const Certificate c = certify_identity(x);
    return Outcome{kOk, "certified", {{"steps", c.steps.size()}, {"certificate", io::to_json(c)}}};
  });
}

inline Outcome cmd_replay(const json& doc) {
  return guarded([&] {
    const Certificate c = io::certificate_from_json(doc);
    const ReplayResult r = replay(c);
    json body{{"steps", c.steps.size()}, {"valid", r.ok}};
    if (!r.ok) {
      body["failing_step"] = *r.failing_step;
      body["reason"] = r.reason;
    }
    return Outcome{r.ok ? kOk : kFailed, r.ok ? "replayed" : "replay_failed", body};
  });
}

// exhaustive when the domain fits the bound, else sampled:1000:seed.
inline Strategy default_strategy(const JordanMap& phi, std::uint64_t seed, const Limits& lim) {
  const auto size = Mat::domain_size(phi.field(), phi.n(), phi.n());
  if (size && *size <= lim.max_domain) return Strategy::exhaustive();
  return Strategy::sampled(1000, seed);
}

inline Outcome cmd_classify(const JordanMap& phi, const Strategy& s, const Limits& lim) {
  return guarded([&] {
    const Classification c = classify(phi, s, lim);
    return Outcome{kOk, "classified", {{"form", io::to_json(c)}}};
  });
}

inline Outcome cmd_verify(const JordanMap& phi, const Strategy& s, const Limits& lim) {
  return guarded([&] {
    const MultiplicativityReport r = check_multiplicative(phi, s, lim);
    return Outcome{r.passed() ? kOk : kFailed, r.passed() ? "multiplicative" : "not_jordan_multiplicative",
                   {{"report", io::to_json(r)}}};
  });
}

inline Outcome cmd_counterexample(const std::function<CounterexampleBundle()>& build) {
  return guarded([&] {
    const CounterexampleBundle b = build();
    const json j = io::to_json(b);
    const bool ok = j.at("replayed").get<bool>() && b.evidence.passed();
    return Outcome{ok ? kOk : kFailed, ok ? "bundle" : "bundle_replay_failed", {{"bundle", j}}};
  });
}

}  // namespace jmap::cli

#endif  // JMAP_COMMANDS_HPP
