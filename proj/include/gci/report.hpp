#pragma once

#include "gci/convex_body.hpp"
#include "gci/moments.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gci {

inline constexpr const char* kVersion = "0.3.0";

/// A theorem is flagged violated only when the gap sits this many standard
/// errors below zero.
inline constexpr double kViolationSigmas = 5.0;

enum class Verdict { confirmed, inconclusive, violated, inapplicable_hypothesis };

std::string to_string(Verdict v);

/// confirmed: gap >= 0; inconclusive: -k SE <= gap < 0; violated: below that.
/// A failed hypothesis overrides all three.
Verdict classify(const GapEstimate& gap, bool hypotheses_hold, double k = kViolationSigmas);

/// CLI exit status for a verdict: 0 confirmed/inconclusive, 1 violated,
/// 2 inapplicable.
int exit_code(Verdict v);

struct NamedValue {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
  std::string method;
};

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<std::string> methods;
  std::string version = kVersion;
};

struct VerificationReport {
  std::string theorem;
  std::string instance;
  std::vector<CheckReport> hypotheses;
  /// Checks on auxiliary constructions; they do not gate the verdict.
  std::vector<CheckReport> diagnostics;
  NamedValue lhs;
  NamedValue rhs;
  GapEstimate gap;
  Verdict verdict = Verdict::inconclusive;
  std::vector<NamedValue> details;
  std::string note;
  Provenance provenance;

  bool hypotheses_hold() const;
  /// Recomputes the verdict from gap and hypotheses.
  void decide();
};

nlohmann::json to_json(const CheckReport& c);
nlohmann::json to_json(const VerificationReport& r);
std::string serialize(const VerificationReport& r);

/// 64-bit FNV-1a, 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// One-line human summary.
std::string summary_line(const VerificationReport& r);

}  // namespace gci
