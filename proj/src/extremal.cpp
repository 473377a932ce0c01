#include "hyperdist/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hyperdist/grafts.hpp"
#include "hyperdist/parallel.hpp"
#include "hyperdist/spectral.hpp"

namespace hyperdist {

std::optional<std::size_t> FamilyKey::m_star() const {
  std::size_t used = n * (delta - 2);
  if (delta < 3 || used >= m) return std::nullopt;
  return m - used;
}

namespace {

bool in_family(const Hypergraph& g, const FamilyKey& key) {
  auto deg = g.degrees();
  std::size_t top = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  if (top != key.delta) return false;
  return static_cast<std::size_t>(std::count(deg.begin(), deg.end(), key.delta)) == key.n;
}

}  // namespace

std::optional<CaterpillarParams> FamilyKey::predicted() const {
  auto ms = m_star();
  if (!ms) return std::nullopt;
  CaterpillarParams p{k, *ms, delta, n / 2, n - n / 2};
  try {
    p.validate();
    if (!in_family(caterpillar(p).graph, *this)) return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;
  }
  return p;
}

std::string FamilyKey::label() const {
  return "T_" + std::to_string(k) + "(" + std::to_string(m) + "," + std::to_string(delta) + "," + std::to_string(n) +
         ")";
}

double estimate_classes(std::size_t m, std::size_t k) {
  // Otter's asymptotic for unlabeled trees, with the branching constant
  // scaled by the k - 1 attachment points each new edge brings.
  double alpha = 2.9557652857 * static_cast<double>(k - 1);
  double v = static_cast<double>(m + 1);
  return std::max(1.0, 0.5349496 * std::pow(alpha, v) / std::pow(v, 2.5));
}

std::vector<Hypergraph> enumerate_hypertrees(std::size_t m, std::size_t k, const EnumerationOptions& options) {
  if (m < 1 || k < 2) throw DomainError("enumeration needs m >= 1 and k >= 2");
  double est = estimate_classes(m, k);
  if (est > static_cast<double>(options.max_classes)) {
    std::ostringstream msg;
    msg << "refusing to enumerate m=" << m << ", k=" << k << ": about " << std::llround(est)
        << " classes expected, budget " << options.max_classes;
    throw BudgetError(msg.str(), est);
  }
  Edge first(k);
  for (std::size_t i = 0; i < k; ++i) first[i] = static_cast<Vertex>(i);
  std::vector<Hypergraph> level{Hypergraph(k, {first})};

  for (std::size_t size = 2; size <= m; ++size) {
    std::vector<Hypergraph> candidates;
    for (const auto& g : level) {
      const std::size_t nv = g.vertex_count();
      for (std::size_t v = 0; v < nv; ++v) {
        std::vector<Edge> edges = g.edges();
        Edge e{static_cast<Vertex>(v)};
        for (std::size_t i = 0; i + 1 < k; ++i) e.push_back(static_cast<Vertex>(nv + i));
        edges.push_back(std::move(e));
        candidates.emplace_back(nv + k - 1, std::move(edges));
      }
    }
    std::vector<CanonicalCode> codes(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) { codes[i] = canonical_code(candidates[i]); });
    std::map<CanonicalCode, std::size_t> seen;
    for (std::size_t i = 0; i < candidates.size(); ++i) seen.emplace(codes[i], i);
    if (seen.size() > options.max_classes) {
      throw BudgetError("enumeration exceeded the class budget at " + std::to_string(size) + " edges",
                        static_cast<double>(seen.size()));
    }
    std::vector<Hypergraph> next;
    next.reserve(seen.size());
    for (const auto& [code, i] : seen) next.push_back(std::move(candidates[i]));
    level = std::move(next);
  }
  return level;
}

std::vector<Hypergraph> family_filter(const std::vector<Hypergraph>& population, const FamilyKey& key) {
  std::vector<Hypergraph> out;
  for (const auto& g : population) {
    if (in_family(g, key)) out.push_back(g);
  }
  return out;
}

ExtremalReport argmax_rho(const std::vector<Hypergraph>& candidates, const std::optional<Hypergraph>& predicted,
                          double relative_tie) {
  if (candidates.empty()) throw DomainError("argmax over an empty candidate list");
  std::vector<double> rho(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) { rho[i] = perron(candidates[i]).rho; });
  ExtremalReport r;
  r.population = candidates.size();
  r.max_rho = *std::max_element(rho.begin(), rho.end());
  std::vector<std::pair<std::string, std::size_t>> top;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (rho[i] >= r.max_rho - relative_tie * r.max_rho) top.emplace_back(canonical_code(candidates[i]).hex(), i);
  }
  std::sort(top.begin(), top.end());
  for (const auto& [code, i] : top) {
    r.argmax.push_back(code);
    r.argmax_graphs.push_back(candidates[i]);
  }
  if (predicted) {
    r.predicted = canonical_code(*predicted).hex();
    r.verdict = r.argmax.size() == 1 && r.argmax.front() == *r.predicted;
  }
  if (r.argmax.size() > 1) r.note = "tie: " + std::to_string(r.argmax.size()) + " classes share the maximum";
  return r;
}

namespace {

ExtremalReport verify_family(const FamilyKey& key, const std::vector<Hypergraph>* population, bool caterpillars_only) {
  std::vector<Hypergraph> owned;
  if (!population) {
    owned = enumerate_hypertrees(key.m, key.k);
    population = &owned;
  }
  std::vector<Hypergraph> fam = family_filter(*population, key);
  if (caterpillars_only) {
    std::erase_if(fam, [](const Hypergraph& g) { return !is_caterpillar(g); });
  }
  auto params = key.predicted();
  std::optional<Hypergraph> pred;
  if (params) pred = caterpillar(*params).graph;

  ExtremalReport r;
  if (fam.empty()) {
    r.note = params ? "empty family although the predicted caterpillar is feasible" : "empty family";
    if (pred) r.predicted = canonical_code(*pred).hex();
  } else {
    r = argmax_rho(fam, pred);
    if (!params) r.note += (r.note.empty() ? "" : "; ") + std::string("predicted caterpillar infeasible");
  }
  r.family = key;
  r.scope = caterpillars_only ? "caterpillars" : "all";
  return r;
}

}  // namespace

ExtremalReport verify_thm2(const FamilyKey& key, const std::vector<Hypergraph>* population) {
  return verify_family(key, population, false);
}

ExtremalReport verify_caterpillar_extremal(const FamilyKey& key, const std::vector<Hypergraph>* population) {
  return verify_family(key, population, true);
}

CheckReport argmax_edge_census(const ExtremalReport& report) {
  CheckReport c;
  c.name = "nlem3-edge-degree-census";
  c.tolerance = 2;
  if (report.argmax_graphs.empty()) {
    c.verdict = Verdict::kVacuous;
    c.detail = "no argmax";
    return c;
  }
  for (const auto& g : report.argmax_graphs) {
    EdgeDegreeAudit a = verify_edge_degree_bound(g);
    c.max_residual = std::max(c.max_residual, static_cast<double>(a.max_count));
    if (a.report.verdict == Verdict::kFail) c.verdict = Verdict::kFail;
  }
  c.detail = "largest per-edge count " + std::to_string(static_cast<std::size_t>(c.max_residual)) + " over " +
             std::to_string(report.argmax_graphs.size()) + " argmax graph(s)";
  return c;
}

DeltaReport delta_monotonicity(std::size_t m, std::size_t k, std::size_t n, std::size_t delta_hi,
                               const GapRule& rule) {
  if (n < 2 || m < 1 || 2 * n > m - 1) throw DomainError("delta sweep needs 2 <= n <= floor((m-1)/2)");
  DeltaReport r;
  r.k = k;
  r.m = m;
  r.n = n;
  for (std::size_t d = 3; d <= delta_hi; ++d) {
    DeltaPoint p;
    p.delta = d;
    FamilyKey key{k, m, d, n};
    if (auto params = key.predicted()) {
      p.feasible = true;
      p.rho = perron(caterpillar(*params).graph).rho;
    } else {
      p.note = "infeasible: skipped";
    }
    r.points.push_back(p);
  }
  r.check.name = "corollary-delta";
  std::vector<const DeltaPoint*> feas;
  for (const auto& p : r.points) {
    if (p.feasible) feas.push_back(&p);
  }
  if (feas.size() < 2) {
    r.check.verdict = Verdict::kVacuous;
    r.check.detail = "fewer than two feasible delta values";
    return r;
  }
  double margin = INFINITY;
  for (std::size_t i = 1; i < feas.size(); ++i) {
    double drop = feas[i - 1]->rho - feas[i]->rho;
    margin = std::min(margin, drop);
    r.check.tolerance = std::max(r.check.tolerance, rule.gap * feas[i - 1]->rho);
    if (!rule.positive(drop, feas[i - 1]->rho) && r.check.verdict == Verdict::kPass) {
      r.check.verdict = Verdict::kFail;
      r.check.detail = "rho does not drop from delta=" + std::to_string(feas[i - 1]->delta) + " to " +
                       std::to_string(feas[i]->delta);
    }
  }
  r.check.max_residual = margin;
  if (r.check.verdict == Verdict::kPass) r.check.detail = "strictly decreasing over " + std::to_string(feas.size()) + " values";
  return r;
}

nlohmann::ordered_json to_json(const ExtremalReport& r) {
  nlohmann::ordered_json j;
  j["family"] = {{"k", r.family.k}, {"m", r.family.m}, {"delta", r.family.delta}, {"n", r.family.n}};
  if (auto ms = r.family.m_star()) j["family"]["m_star"] = *ms;
  j["scope"] = r.scope;
  j["population"] = r.population;
  j["argmax"] = r.argmax;
  j["max_rho"] = round_sig(r.max_rho);
  j["predicted"] = r.predicted ? nlohmann::ordered_json(*r.predicted) : nlohmann::ordered_json(nullptr);
  j["verdict"] = r.verdict;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::ordered_json to_json(const DeltaReport& r) {
  nlohmann::ordered_json j;
  j["k"] = r.k;
  j["m"] = r.m;
  j["n"] = r.n;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : r.points) {
    nlohmann::ordered_json q{{"delta", p.delta}, {"feasible", p.feasible}};
    if (p.feasible) q["rho"] = round_sig(p.rho);
    if (!p.note.empty()) q["note"] = p.note;
    j["points"].push_back(q);
  }
  j["check"] = to_json(r.check);
  return j;
}

std::string extremal_csv(const std::vector<ExtremalReport>& reports) {
  std::ostringstream out;
  out << "k,m,delta,n,scope,population,argmax_count,max_rho,verdict\n";
  for (const auto& r : reports) {
    char rho[40];
    std::snprintf(rho, sizeof rho, "%.12g", round_sig(r.max_rho));
    out << r.family.k << ',' << r.family.m << ',' << r.family.delta << ',' << r.family.n << ',' << r.scope << ','
        << r.population << ',' << r.argmax.size() << ',' << rho << ',' << (r.verdict ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace hyperdist
