#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hyperdist {

enum class Verdict { kPass, kFail, kVacuous };

std::string_view to_string(Verdict v);

// Outcome of one numeric check. `max_residual` is the largest violation
// seen (for identities) or the smallest margin (for strict orderings).
struct CheckReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

struct VerificationReport {
  std::string target;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<CheckReport> checks;

  void add(CheckReport c) { checks.push_back(std::move(c)); }
  // Fail if any check failed; vacuous if every check was vacuous.
  Verdict overall() const;
};

// Signs under the strict-gap rule: |x| <= zero_band*scale is zero,
// x > gap*scale positive, x < -gap*scale negative, anything in between is
// indeterminate and never satisfies a claim.
enum class Sign { kNegative, kZero, kPositive, kIndeterminate };

struct GapRule {
  double gap = 1e-9;
  double zero_band = 1e-11;

  Sign classify(double value, double scale) const;
  bool positive(double value, double scale) const { return classify(value, scale) == Sign::kPositive; }
  bool negative(double value, double scale) const { return classify(value, scale) == Sign::kNegative; }
  bool zero(double value, double scale) const { return classify(value, scale) == Sign::kZero; }
};

std::string_view to_string(Sign s);

// Round to 12 significant digits so serialised numbers are stable.
double round_sig(double x);

nlohmann::ordered_json to_json(const CheckReport& c);
nlohmann::ordered_json to_json(const VerificationReport& r);

}  // namespace hyperdist
