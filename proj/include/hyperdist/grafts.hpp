#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hyperdist/families.hpp"
#include "hyperdist/report.hpp"
#include "hyperdist/spectral.hpp"

namespace hyperdist {

enum class Direction { kIncrease, kDecrease };

// One rewrite and its effect on rho.
struct GraftOutcome {
  std::string name;
  Hypergraph before;
  Hypergraph after;
  double rho_before = 0.0;
  double rho_after = 0.0;
  Direction claimed = Direction::kIncrease;
  bool counterexample = false;  // the claim is expected to fail on this instance
  std::string note;

  double gap() const { return rho_after - rho_before; }
  // Pass iff the claimed strict direction is observed beyond gap*rho_before.
  // Counterexamples pass iff the claimed direction is strictly violated and
  // are labelled "paper-confirmed-counterexample".
  CheckReport check(const GapRule& rule) const;
};

// H_u(s, t) -> H_u(s+1, t-1) for a connected uniform host.
GraftOutcome graft_path_shift(const Hypergraph& h, Vertex u, std::size_t s, std::size_t t);

// H_{u,v}(s, t) -> H_{u,v}(s+1, t-1). u and v must be degree-one vertices
// of a common edge e whose removal leaves |e| components, and |E(H)| >= 2.
GraftOutcome graft_two_vertex_shift(const Hypergraph& h, Vertex u, Vertex v, std::size_t s, std::size_t t);

struct PublishedExample {
  Hypergraph before;
  Hypergraph after;
  double published_before = 0.0;
  double published_after = 0.0;
};

// Two non-uniform pendant paths joined by a 3-edge bridge, then the first
// path's 9-edge moved to the far end of the second path.
PublishedExample nonuniform_path_example();
// C_3(5,3,1,2) and the variant with one degree-one vertex of e_2 moved into e_1.
PublishedExample vertex_transfer_example();

// The non-uniform analogue of the two-vertex shift, where rho drops.
GraftOutcome nonuniform_two_vertex_counterexample();

// C_k(m*, delta, a, b) -> C_k(m*, delta, a+1, b-1) by moving every pendant
// edge at u_{m*-b} to u_{a+1}. Needs a + 2 <= b and a + b + 2 <= m*.
GraftOutcome star_shift(const CaterpillarParams& params);

enum class GcCase { kSingleBranch, kLoosePathBranch, kPendantCluster };
std::string_view to_string(GcCase c);

// Which proven case applies to G_c(s, t); throws DomainError if none does.
GcCase classify_gc(const GcParams& params);

// G_c(s, t) -> G_c(s+1, t-1) by the rewrite matching the applicable case:
// swapping the attachments at u_s and u_{s+1}, or moving the second edge of
// the loose-path branch onto a pendant neighbour of u_{s+1}.
GraftOutcome gc_shift(const GcParams& params);

// Strict orderings of Perron components along a caterpillar spine.
VerificationReport verify_facts(const CaterpillarParams& params, const GapRule& rule);

// Sign-agreement hypothesis for 0 <= l <= r, then the common-sign and
// monotone difference conclusions. Vacuous when the hypothesis fails or the
// two sides balance exactly.
VerificationReport verify_sign_chain(const SpineLabeledHypergraph& h, std::size_t s, std::size_t t, std::size_t r,
                                     const GapRule& rule);

// The two balance inequalities around u_s in G_c(s, t), s >= t >= 2.
VerificationReport verify_lem6(const GcParams& params, const GapRule& rule);

// Moving a second nontrivial rooted graph from u1 to u2 (both already at u1
// in H1). Vacuous unless one of the two sufficient conditions holds.
VerificationReport verify_alem(const Hypergraph& h, Vertex u1, Vertex u2, const RootedHypergraph& g1,
                               const RootedHypergraph& g2, const GapRule& rule, double tol);

struct EdgeDegreeAudit {
  std::size_t max_count = 0;  // most vertices of degree >= 2 inside one edge
  std::size_t worst_edge = 0;
  CheckReport report;         // pass iff max_count <= 2
};

EdgeDegreeAudit verify_edge_degree_bound(const Hypergraph& t);

// ---- sweeps ---------------------------------------------------------------

struct SweepGrid {
  std::vector<std::size_t> k{2, 3, 4};
  std::vector<std::size_t> m_star{3, 4, 5, 6, 7, 8};
  std::vector<std::size_t> delta{3, 4, 5};
  std::vector<std::size_t> a;  // empty: every admissible value
  std::vector<std::size_t> b;
  std::vector<std::size_t> n;  // a + b; empty: any
  std::vector<std::size_t> s{1, 2, 3};
  std::vector<std::size_t> t{1, 2, 3};
  std::vector<std::size_t> c{1, 2, 3};
};

// Desk-scale default grid for a sweep target.
SweepGrid default_grid(const std::string& target);

// Reads a sweep config: lines "key = v1, v2, lo..hi", '#' comments. Keys
// not present keep the target's defaults.
SweepGrid parse_grid(const std::string& text, SweepGrid base);

struct SweepOptions {
  GapRule rule;
  double tol = 1e-10;
  PerronOptions perron;
};

// Targets: graft1, graft2, alem, lem5, lem6, lem7, nlem1, ncor1, ncor2,
// fact1, fact2, fact3, nlem3, eigen-identities. Results come back in grid
// order regardless of evaluation order.
std::vector<VerificationReport> run_sweep(const std::string& target, const SweepGrid& grid,
                                          const SweepOptions& options = {});

std::vector<std::string> sweep_targets();

// VerificationReport for a single graft outcome.
VerificationReport outcome_report(const std::string& target, const GraftOutcome& outcome, const GapRule& rule);

// One JSON object per line.
std::string to_jsonl(const std::vector<VerificationReport>& reports);

}  // namespace hyperdist
