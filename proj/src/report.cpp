#include "gci/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gci {

namespace {

// Rounding floor under the k-sigma rule, so exact equality cases computed
// through different summation orders do not read as violations.
constexpr double kRoundingFloor = 1e-12;

nlohmann::json point_json(const Point& x) {
  auto arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) arr.push_back(x[i]);
  return arr;
}

nlohmann::json finite(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

nlohmann::json value_json(const NamedValue& v) {
  nlohmann::json j{{"name", v.name}, {"value", finite(v.value)}, {"se", finite(v.std_error)}};
  if (!v.method.empty()) j["method"] = v.method;
  return j;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::confirmed:
      return "confirmed";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::violated:
      return "violated";
    case Verdict::inapplicable_hypothesis:
      return "inapplicable-hypothesis";
  }
  return "inconclusive";
}

Verdict classify(const GapEstimate& gap, bool hypotheses_hold, double k) {
  if (!hypotheses_hold) return Verdict::inapplicable_hypothesis;
  if (gap.value >= 0.0) return Verdict::confirmed;
  if (gap.value < -k * gap.std_error - kRoundingFloor) return Verdict::violated;
  return Verdict::inconclusive;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::confirmed:
    case Verdict::inconclusive:
      return 0;
    case Verdict::violated:
      return 1;
    case Verdict::inapplicable_hypothesis:
      return 2;
  }
  return 0;
}

bool VerificationReport::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const CheckReport& c) { return c.passed; });
}

void VerificationReport::decide() { verdict = classify(gap, hypotheses_hold()); }

nlohmann::json to_json(const CheckReport& c) {
  nlohmann::json j{{"name", c.name}, {"passed", c.passed}, {"samples", c.samples}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (c.witness) j["witness"] = point_json(*c.witness);
  if (c.image) j["image"] = point_json(*c.image);
  return j;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["theorem"] = r.theorem;
  j["instance"] = r.instance;
  j["verdict"] = to_string(r.verdict);
  j["gap"] = {{"value", finite(r.gap.value)}, {"se", finite(r.gap.std_error)}};
  j["lhs"] = value_json(r.lhs);
  j["rhs"] = value_json(r.rhs);
  auto hyp = nlohmann::json::array();
  for (const auto& c : r.hypotheses) hyp.push_back(to_json(c));
  j["hypotheses"] = hyp;
  auto diag = nlohmann::json::array();
  for (const auto& c : r.diagnostics) diag.push_back(to_json(c));
  j["diagnostics"] = diag;
  auto det = nlohmann::json::array();
  for (const auto& v : r.details) det.push_back(value_json(v));
  j["details"] = det;
  if (!r.note.empty()) j["note"] = r.note;
  j["provenance"] = {{"config_hash", r.provenance.config_hash},
                     {"seed", r.provenance.seed},
                     {"samples", r.provenance.samples},
                     {"methods", r.provenance.methods},
                     {"version", r.provenance.version}};
  return j;
}

std::string serialize(const VerificationReport& r) { return to_json(r).dump(2) + "\n"; }

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string summary_line(const VerificationReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "theorem " << r.theorem << ": " << to_string(r.verdict) << " gap=" << r.gap.value << " se=" << r.gap.std_error;
  if (!r.hypotheses_hold())
    for (const auto& c : r.hypotheses)
      if (!c.passed) {
        os << " [" << c.name << " failed";
        if (!c.detail.empty()) os << ": " << c.detail;
        os << "]";
        break;
      }
  return os.str();
}

}  // namespace gci
