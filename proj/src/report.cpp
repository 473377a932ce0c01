#include "hyperdist/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hyperdist {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kVacuous:
      return "vacuous";
  }
  return "?";
}

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::kNegative:
      return "negative";
    case Sign::kZero:
      return "zero";
    case Sign::kPositive:
      return "positive";
    case Sign::kIndeterminate:
      return "indeterminate";
  }
  return "?";
}

Verdict VerificationReport::overall() const {
  bool all_vacuous = !checks.empty();
  for (const auto& c : checks) {
    if (c.verdict == Verdict::kFail) return Verdict::kFail;
    if (c.verdict != Verdict::kVacuous) all_vacuous = false;
  }
  return all_vacuous ? Verdict::kVacuous : Verdict::kPass;
}

Sign GapRule::classify(double value, double scale) const {
  if (!std::isfinite(value)) return Sign::kIndeterminate;
  double s = std::abs(scale);
  if (std::abs(value) <= zero_band * s) return Sign::kZero;
  if (value > gap * s) return Sign::kPositive;
  if (value < -gap * s) return Sign::kNegative;
  return Sign::kIndeterminate;
}

double round_sig(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

nlohmann::ordered_json to_json(const CheckReport& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["max_residual"] = round_sig(c.max_residual);
  j["tolerance"] = round_sig(c.tolerance);
  j["verdict"] = to_string(c.verdict);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["target"] = r.target;
  j["parameters"] = r.parameters;
  j["verdict"] = to_string(r.overall());
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return j;
}

}  // namespace hyperdist
