#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyperdist/families.hpp"
#include "hyperdist/report.hpp"

namespace hyperdist {

// T_k(m, delta, n): k-uniform hypertrees with m edges whose maximum degree
// is delta, attained by exactly n vertices.
struct FamilyKey {
  std::size_t k = 3;
  std::size_t m = 1;
  std::size_t delta = 3;
  std::size_t n = 2;

  // m - n (delta - 2), or nullopt when that is below 1.
  std::optional<std::size_t> m_star() const;
  // C_k(m*, delta, floor(n/2), ceil(n/2)) if it can be built.
  std::optional<CaterpillarParams> predicted() const;
  std::string label() const;
};

class BudgetError : public DomainError {
 public:
  BudgetError(const std::string& what, double estimate) : DomainError(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

struct EnumerationOptions {
  std::size_t max_classes = 1'000'000;  // per level
};

// Rough class count used to refuse oversized requests up front.
double estimate_classes(std::size_t m, std::size_t k);

// One representative per isomorphism class, sorted by canonical code.
// Built level by level by attaching a pendant edge at every vertex.
std::vector<Hypergraph> enumerate_hypertrees(std::size_t m, std::size_t k, const EnumerationOptions& options = {});

std::vector<Hypergraph> family_filter(const std::vector<Hypergraph>& population, const FamilyKey& key);

struct ExtremalReport {
  FamilyKey family;
  std::string scope = "all";  // or "caterpillars"
  std::size_t population = 0;
  std::vector<std::string> argmax;         // canonical codes (hex) within 1e-9 relative of the max
  std::vector<Hypergraph> argmax_graphs;
  double max_rho = 0.0;
  std::optional<std::string> predicted;    // canonical code of the predicted caterpillar
  bool verdict = false;                    // singleton argmax equal to the prediction
  std::string note;
};

// Throws DomainError on an empty candidate list.
ExtremalReport argmax_rho(const std::vector<Hypergraph>& candidates, const std::optional<Hypergraph>& predicted,
                          double relative_tie = 1e-9);

// Full enumeration of the family. `population` may carry a precomputed
// enumerate_hypertrees(key.m, key.k) to share across keys.
ExtremalReport verify_thm2(const FamilyKey& key, const std::vector<Hypergraph>* population = nullptr);
// The same restricted to caterpillars.
ExtremalReport verify_caterpillar_extremal(const FamilyKey& key,
                                          const std::vector<Hypergraph>* population = nullptr);

// Per-edge count of degree >= 2 vertices on every argmax graph.
CheckReport argmax_edge_census(const ExtremalReport& report);

struct DeltaPoint {
  std::size_t delta = 0;
  bool feasible = false;
  double rho = 0.0;
  std::string note;
};

struct DeltaReport {
  std::size_t k = 0, m = 0, n = 0;
  std::vector<DeltaPoint> points;
  CheckReport check;  // strict decrease over consecutive feasible points
};

// rho(C_k(m - n(delta-2), delta, floor(n/2), ceil(n/2))) for delta = 3..delta_hi.
DeltaReport delta_monotonicity(std::size_t m, std::size_t k, std::size_t n, std::size_t delta_hi,
                               const GapRule& rule = {});

nlohmann::ordered_json to_json(const ExtremalReport& r);
nlohmann::ordered_json to_json(const DeltaReport& r);
std::string extremal_csv(const std::vector<ExtremalReport>& reports);

}  // namespace hyperdist
