#include "hyperdist/grafts.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "hyperdist/identities.hpp"
#include "hyperdist/parallel.hpp"

namespace hyperdist {

namespace {

double rho_of(const Hypergraph& g) { return perron(g).rho; }

std::size_t uniform_k(const Hypergraph& h, const char* what) {
  auto k = uniformity(h);
  if (!k) throw DomainError(std::string(what) + " needs a uniform host");
  return *k;
}

std::vector<Vertex> id_range(std::size_t lo, std::size_t hi) {
  std::vector<Vertex> out;
  for (std::size_t v = lo; v < hi; ++v) out.push_back(static_cast<Vertex>(v));
  return out;
}

std::vector<std::size_t> edges_within(const Hypergraph& g, const std::vector<Vertex>& sorted_verts) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (std::all_of(e.begin(), e.end(),
                    [&](Vertex v) { return std::binary_search(sorted_verts.begin(), sorted_verts.end(), v); })) {
      out.push_back(i);
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CheckReport vacuous(std::string name, std::string detail) {
  CheckReport c;
  c.name = std::move(name);
  c.verdict = Verdict::kVacuous;
  c.detail = std::move(detail);
  return c;
}

// A strict ordering chain v_0 < v_1 < ... with optional sign bounds on the
// ends and an optional strict upper bound on the last term.
enum class Bound { kNone, kPositive, kNonNegative, kNegative, kNonPositive };

struct Chain {
  std::string name;
  std::vector<double> values;
  Bound first = Bound::kNone;
  Bound last = Bound::kNone;
  std::optional<double> last_below;
};

bool satisfies(Sign s, Bound b) {
  switch (b) {
    case Bound::kNone:
      return true;
    case Bound::kPositive:
      return s == Sign::kPositive;
    case Bound::kNonNegative:
      return s == Sign::kPositive || s == Sign::kZero;
    case Bound::kNegative:
      return s == Sign::kNegative;
    case Bound::kNonPositive:
      return s == Sign::kNegative || s == Sign::kZero;
  }
  return false;
}

CheckReport check_chain(const Chain& chain, const GapRule& rule, double scale) {
  CheckReport c;
  c.name = chain.name;
  c.tolerance = rule.gap * scale;
  if (chain.values.empty()) return vacuous(chain.name, "empty chain");
  double margin = INFINITY;
  std::string failure;
  auto bound_check = [&](double v, Bound b, const std::string& what) {
    if (b == Bound::kNone) return;
    Sign s = rule.classify(v, scale);
    if (b == Bound::kPositive || b == Bound::kNegative) margin = std::min(margin, std::abs(v));
    if (!satisfies(s, b) && failure.empty()) failure = what + " is " + std::string(to_string(s)) + " (" + fmt(v) + ")";
  };
  bound_check(chain.values.front(), chain.first, "first term");
  for (std::size_t i = 1; i < chain.values.size(); ++i) {
    double d = chain.values[i] - chain.values[i - 1];
    margin = std::min(margin, d);
    if (!rule.positive(d, scale) && failure.empty()) {
      failure = "terms " + std::to_string(i - 1) + "," + std::to_string(i) + " not strictly increasing (" + fmt(d) + ")";
    }
  }
  bound_check(chain.values.back(), chain.last, "last term");
  if (chain.last_below) {
    double d = *chain.last_below - chain.values.back();
    margin = std::min(margin, d);
    if (!rule.positive(d, scale) && failure.empty()) failure = "last term not below the bound (" + fmt(d) + ")";
  }
  c.max_residual = std::isfinite(margin) ? margin : 0.0;
  c.verdict = failure.empty() ? Verdict::kPass : Verdict::kFail;
  c.detail = failure.empty() ? std::to_string(chain.values.size()) + " terms, smallest margin " + fmt(c.max_residual)
                             : failure;
  return c;
}

}  // namespace

// ---- outcomes ---------------------------------------------------------------

CheckReport GraftOutcome::check(const GapRule& rule) const {
  CheckReport c;
  c.name = name;
  c.max_residual = std::abs(gap());
  c.tolerance = rule.gap * rho_before;
  Sign s = rule.classify(gap(), rho_before);
  Sign expected = claimed == Direction::kIncrease ? Sign::kPositive : Sign::kNegative;
  Sign opposite = claimed == Direction::kIncrease ? Sign::kNegative : Sign::kPositive;
  std::string base = "rho " + fmt(rho_before) + " -> " + fmt(rho_after) + ", gap " + fmt(gap());
  if (counterexample) {
    c.verdict = s == opposite ? Verdict::kPass : Verdict::kFail;
    c.detail = (s == opposite ? "paper-confirmed-counterexample; " : "counterexample not reproduced; ") + base;
  } else {
    c.verdict = s == expected ? Verdict::kPass : Verdict::kFail;
    c.detail = base + (s == expected ? "" : " (observed " + std::string(to_string(s)) + ")");
  }
  if (!note.empty()) c.detail += "; " + note;
  return c;
}

VerificationReport outcome_report(const std::string& target, const GraftOutcome& outcome, const GapRule& rule) {
  VerificationReport r;
  r.target = target;
  r.parameters["rho_before"] = round_sig(outcome.rho_before);
  r.parameters["rho_after"] = round_sig(outcome.rho_after);
  r.add(outcome.check(rule));
  return r;
}

GraftOutcome graft_path_shift(const Hypergraph& h, Vertex u, std::size_t s, std::size_t t) {
  if (h.edge_count() < 1) throw DomainError("path shift needs |E(H)| >= 1");
  if (!is_connected(h)) throw DomainError("path shift needs a connected host");
  if (u >= h.vertex_count()) throw DomainError("path shift: u not in H");
  if (!(s >= t && t >= 1)) throw DomainError("path shift needs s >= t >= 1");
  std::size_t k = uniform_k(h, "path shift");
  RootedHypergraph none = trivial_rooted();
  GraftOutcome o;
  o.name = "graft1";
  o.before = attach_two_paths(h, u, u, s, t, none, k);
  o.after = attach_two_paths(h, u, u, s + 1, t - 1, none, k);
  o.rho_before = rho_of(o.before);
  o.rho_after = rho_of(o.after);
  return o;
}

GraftOutcome graft_two_vertex_shift(const Hypergraph& h, Vertex u, Vertex v, std::size_t s, std::size_t t) {
  if (h.edge_count() < 2) throw DomainError("two-vertex shift needs |E(H)| >= 2");
  if (!is_connected(h)) throw DomainError("two-vertex shift needs a connected host");
  if (u >= h.vertex_count() || v >= h.vertex_count() || u == v) {
    throw DomainError("two-vertex shift needs distinct u, v in H");
  }
  if (degree(h, u) != 1 || degree(h, v) != 1) throw DomainError("two-vertex shift needs d(u) = d(v) = 1");
  if (!(s >= t && t >= 1)) throw DomainError("two-vertex shift needs s >= t >= 1");
  std::size_t k = uniform_k(h, "two-vertex shift");
  std::optional<std::size_t> shared;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (contains(h.edges()[i], u) && contains(h.edges()[i], v)) shared = i;
  }
  if (!shared) throw DomainError("two-vertex shift needs u and v in a common edge");
  std::size_t parts = component_count(delete_edge(h, *shared).graph);
  if (parts != k) {
    throw DomainError("two-vertex shift needs H - e to have " + std::to_string(k) + " components, found " +
                      std::to_string(parts));
  }
  RootedHypergraph none = trivial_rooted();
  GraftOutcome o;
  o.name = "graft2";
  o.before = attach_two_paths(h, u, v, s, t, none, k);
  o.after = attach_two_paths(h, u, v, s + 1, t - 1, none, k);
  o.rho_before = rho_of(o.before);
  o.rho_after = rho_of(o.after);
  return o;
}

PublishedExample nonuniform_path_example() {
  // u_0..u_5 are 0..5; then the degree-one fillers of each edge.
  Vertex next = 6;
  auto edge = [&](Vertex a, Vertex b, std::size_t size) {
    Edge e{a, b};
    while (e.size() < size) e.push_back(next++);
    return e;
  };
  std::vector<Edge> edges;
  edges.push_back(edge(0, 1, 9));  // e_1
  edges.push_back(edge(1, 2, 3));  // e_2
  edges.push_back(edge(2, 3, 3));  // bridge, u = u_2 and v = u_3
  edges.push_back(edge(3, 4, 3));  // e_4
  edges.push_back(edge(4, 5, 6));  // e_5
  PublishedExample ex;
  ex.before = Hypergraph(next, std::move(edges));
  std::vector<std::size_t> moved{0};
  ex.after = move_edges(ex.before, 1, 5, moved);
  ex.published_before = 53.04;
  ex.published_after = 46.91;
  return ex;
}

PublishedExample vertex_transfer_example() {
  SpineLabeledHypergraph c = caterpillar({3, 5, 3, 1, 2});
  PublishedExample ex;
  ex.before = c.graph;
  ex.after = transfer_vertex(c.graph, *c.w(2), c.e(2), c.e(1));
  ex.published_before = 45.33;
  ex.published_after = 46.31;
  return ex;
}

GraftOutcome nonuniform_two_vertex_counterexample() {
  PublishedExample ex = nonuniform_path_example();
  GraftOutcome o;
  o.name = "graft2-nonuniform";
  o.before = ex.before;
  o.after = ex.after;
  o.rho_before = rho_of(o.before);
  o.rho_after = rho_of(o.after);
  o.claimed = Direction::kIncrease;
  o.counterexample = true;
  o.note = "pendant paths of lengths (2,2) -> (3,1) across a 3-edge bridge";
  return o;
}

GraftOutcome star_shift(const CaterpillarParams& params) {
  params.validate();
  if (params.a + 2 > params.b) throw DomainError("star shift needs a + 2 <= b");
  if (params.a + params.b + 2 > params.m_star) {
    throw DomainError("star shift needs a + b + 2 <= m* (at a + b + 1 = m* the rewrite is the identity)");
  }
  SpineLabeledHypergraph t = caterpillar(params);
  std::size_t from = params.m_star - params.b;
  std::size_t to = params.a + 1;
  auto moved = edges_within(t.graph, t.attached_vertices[from]);
  GraftOutcome o;
  o.name = "lem5";
  o.before = t.graph;
  o.after = move_edges(t.graph, t.u(from), t.u(to), moved);
  CaterpillarParams next = params;
  ++next.a;
  --next.b;
  if (!is_isomorphic(o.after, caterpillar(next).graph)) {
    throw std::logic_error("star shift did not produce C(a+1, b-1)");
  }
  o.rho_before = rho_of(o.before);
  o.rho_after = rho_of(o.after);
  o.note = "moved " + std::to_string(moved.size()) + " pendant edges from u_" + std::to_string(from) + " to u_" +
           std::to_string(to);
  return o;
}

std::string_view to_string(GcCase c) {
  switch (c) {
    case GcCase::kSingleBranch:
      return "i";
    case GcCase::kLoosePathBranch:
      return "ii";
    case GcCase::kPendantCluster:
      return "iii";
  }
  return "?";
}

namespace {

bool is_end_rooted_loose_path(const RootedHypergraph& branch, std::size_t k) {
  const Hypergraph& g = branch.graph;
  std::size_t len = g.edge_count();
  if (len < 2) return false;
  if (!is_isomorphic(g, loose_path(len, k).graph)) return false;
  auto deg = g.degrees();
  for (const Edge& e : g.edges()) {
    if (!contains(e, branch.root)) continue;
    std::size_t links = std::count_if(e.begin(), e.end(), [&](Vertex v) { return deg[v] >= 2; });
    return deg[branch.root] == 1 && links == 1;
  }
  return false;
}

}  // namespace

GcCase classify_gc(const GcParams& params) {
  params.validate();
  if (!(params.s >= params.t && params.t >= 2)) throw DomainError("G_c shift needs s >= t >= 2");
  auto branches = root_branches(params.core);
  if (branches.size() != params.c) {
    throw DomainError("core root must join exactly c = " + std::to_string(params.c) + " branches, found " +
                      std::to_string(branches.size()));
  }
  bool any_big = false;
  for (const auto& b : branches) {
    if (degree(b.graph, b.root) != 1) throw DomainError("each core branch must meet the root in one edge");
    if (b.graph.edge_count() > 1) any_big = true;
  }
  if (!any_big) throw DomainError("G_c shift needs a branch with more than one edge");
  if (params.c == 1) return GcCase::kSingleBranch;

  std::size_t singles = std::count_if(branches.begin(), branches.end(),
                                      [](const RootedHypergraph& b) { return b.graph.edge_count() == 1; });
  if (singles == params.c - 1) {
    for (const auto& b : branches) {
      if (b.graph.edge_count() > 1 && is_end_rooted_loose_path(b, params.k)) return GcCase::kLoosePathBranch;
    }
  }
  SpineLabeledHypergraph h = g_c(params);
  const auto& core_verts = h.attached_vertices[params.s];
  for (Vertex y : core_verts) {
    if (y == h.u(params.s)) continue;
    if (pendant_edges_at(h.graph, y).size() >= params.c) return GcCase::kPendantCluster;
  }
  throw DomainError("G_c instance matches none of the proven cases (the general claim is open)");
}

GraftOutcome gc_shift(const GcParams& params) {
  GcCase which = classify_gc(params);
  SpineLabeledHypergraph h = g_c(params);
  const std::size_t s = params.s;
  GraftOutcome o;
  o.name = "lem7";
  o.before = h.graph;
  if (which == GcCase::kLoosePathBranch) {
    auto deg = h.graph.degrees();
    const Vertex us = h.u(s);
    const auto& core = h.attached_vertices[s];
    std::optional<Vertex> f1;
    std::optional<std::size_t> root_edge;
    for (std::size_t ei : edges_within(h.graph, core)) {
      const Edge& e = h.graph.edges()[ei];
      if (!contains(e, us)) continue;
      for (Vertex v : e) {
        if (v != us && deg[v] == 2) {
          f1 = v;
          root_edge = ei;
        }
      }
    }
    if (!f1) throw std::logic_error("loose-path branch has no link vertex next to the root");
    std::optional<std::size_t> next_edge;
    for (std::size_t ei = 0; ei < h.graph.edge_count(); ++ei) {
      if (ei != *root_edge && contains(h.graph.edges()[ei], *f1)) next_edge = ei;
    }
    auto v_next = h.pendant_rep[s + 1];
    if (!v_next) throw std::logic_error("u_{s+1} has no pendant neighbour");
    std::vector<std::size_t> moved{*next_edge};
    o.after = move_edges(h.graph, *f1, *v_next, moved);
    o.note = "case ii: moved one edge from f_1 to a pendant neighbour of u_{s+1}";
  } else {
    auto core_edges = edges_within(h.graph, h.attached_vertices[s]);
    std::vector<std::size_t> at_root;
    for (std::size_t ei : core_edges) {
      if (contains(h.graph.edges()[ei], h.u(s))) at_root.push_back(ei);
    }
    auto star_edges = edges_within(h.graph, h.attached_vertices[s + 1]);
    Hypergraph mid = move_edges(h.graph, h.u(s), h.u(s + 1), at_root);
    o.after = move_edges(mid, h.u(s + 1), h.u(s), star_edges);
    o.note = "case " + std::string(to_string(which)) + ": swapped the attachments at u_s and u_{s+1}";
  }
  GcParams next = params;
  ++next.s;
  --next.t;
  if (!is_isomorphic(o.after, g_c(next).graph)) throw std::logic_error("G_c shift did not produce G_c(s+1, t-1)");
  o.rho_before = rho_of(o.before);
  o.rho_after = rho_of(o.after);
  return o;
}

// ---- component orderings ----------------------------------------------------

VerificationReport verify_facts(const CaterpillarParams& params, const GapRule& rule) {
  params.validate();
  const std::size_t a = params.a, b = params.b, ms = params.m_star;
  if (a + 2 > b) throw DomainError("facts need a + 2 <= b");
  if (a + b + 2 > ms) throw DomainError("facts need a + b + 2 <= m*");
  SpineLabeledHypergraph t = caterpillar(params);
  SpectralResult r = perron(t.graph);
  double sigma = 0.0;
  for (double v : r.x) sigma += v;
  auto xu = [&](std::size_t i) { return r.x[t.u(i)]; };
  auto xw = [&](std::size_t i) { return r.x[*t.w(i)]; };
  const bool has_w = params.k >= 3;

  VerificationReport rep;
  rep.target = "facts";
  rep.parameters = {{"k", params.k}, {"m_star", ms}, {"delta", params.delta}, {"a", a}, {"b", b}};

  // Fact 1: x_{u_j} - x_{u_{m*-j}} for j = 0..a+1.
  Chain f1u{"fact1-u-chain", {}, Bound::kPositive, Bound::kNone, std::nullopt};
  for (std::size_t j = 0; j <= a + 1; ++j) f1u.values.push_back(xu(j) - xu(ms - j));
  rep.add(check_chain(f1u, rule, sigma));
  if (has_w) {
    Chain f1w{"fact1-w-chain", {}, Bound::kNone, Bound::kPositive, f1u.values.back()};
    for (std::size_t j = 1; j <= a + 1; ++j) f1w.values.push_back(xw(j) - xw(ms + 1 - j));
    rep.add(check_chain(f1w, rule, sigma));
  } else {
    rep.add(vacuous("fact1-w-chain", "k = 2 has no interior vertices"));
  }

  // Fact 2: pairs around the middle of the segment between the star blocks.
  const std::size_t m1 = ms + a - b + 1;
  const std::size_t p1 = (m1 - 1) / 2, q1 = m1 - p1;
  Chain f2u{"fact2-u-chain", {}, Bound::kPositive, Bound::kNone, std::nullopt};
  for (std::size_t j = 0; j + a + 1 <= p1; ++j) f2u.values.push_back(xu(p1 - j) - xu(q1 + j));
  rep.add(check_chain(f2u, rule, sigma));
  if (has_w) {
    Chain f2w{"fact2-w-chain", {}, Bound::kNonNegative, Bound::kNone, f2u.values.back()};
    for (std::size_t j = 0; j + a + 1 <= p1; ++j) f2w.values.push_back(xw(p1 + 1 - j) - xw(q1 + j));
    rep.add(check_chain(f2w, rule, sigma));
  } else {
    rep.add(vacuous("fact2-w-chain", "k = 2 has no interior vertices"));
  }

  // Fact 3: pairs around the middle of the whole spine, inside the b block.
  const std::size_t m2 = 2 * ms - a - b - 1;
  const std::size_t p2 = (m2 - 1) / 2, q2 = m2 - p2;
  const std::size_t jmax = p2 - (ms - b);
  Chain f3u{"fact3-u-chain", {}, Bound::kNone, Bound::kNegative, std::nullopt};
  for (std::size_t j = 0; j <= jmax; ++j) f3u.values.push_back(xu(ms - b + j) - xu(ms - a - 1 - j));
  rep.add(check_chain(f3u, rule, sigma));
  if (has_w) {
    Chain f3w{"fact3-w-chain", {}, Bound::kNone, Bound::kNonPositive, std::nullopt};
    for (std::size_t j = 0; j <= jmax; ++j) f3w.values.push_back(xw(ms - b + 1 + j) - xw(ms - a - 1 - j));
    rep.add(check_chain(f3w, rule, sigma));
  } else {
    rep.add(vacuous("fact3-w-chain", "k = 2 has no interior vertices"));
  }
  (void)q2;
  return rep;
}

namespace {

VerificationReport sign_chain_with(const SpineLabeledHypergraph& h, const SpectralResult& res, std::size_t s,
                                   std::size_t t, std::size_t r, const GapRule& rule) {
  const std::size_t m = h.length();
  if (!(s > t && s - t <= 2)) throw DomainError("sign chain needs 1 <= s - t <= 2");
  if (t < r + 1 || s + r + 1 > m) throw DomainError("sign chain needs t >= r + 1 and s + r + 1 <= m");
  const bool has_w = h.k >= 3;
  double sigma = 0.0;
  for (double v : res.x) sigma += v;
  Accumulators acc(distance_matrix(h.graph), res.x);
  auto xu = [&](std::size_t i) { return res.x[h.u(i)]; };
  auto xw = [&](std::size_t i) { return res.x[*h.w(i)]; };
  auto sg = [&](std::size_t i) { return acc.sigma(h.attached_vertices[i]); };
  auto cls = [&](double v) { return rule.classify(v, sigma); };

  VerificationReport rep;
  rep.target = "sign-chain";
  rep.parameters = {{"s", s}, {"t", t}, {"r", r}, {"m", m}, {"k", h.k}};

  const std::vector<std::string> names{"nlem1-u-common-sign", "nlem1-w-common-sign", "ncor1-u-chain",
                                       "ncor1-w-chain",       "ncor2-u-chain",       "ncor2-w-chain"};
  auto all_vacuous = [&](const std::string& why) {
    for (const auto& n : names) rep.add(vacuous(n, why));
  };

  CheckReport hyp;
  hyp.name = "sign-chain-hypothesis";
  hyp.tolerance = rule.gap * sigma;
  for (std::size_t l = 0; l <= r; ++l) {
    Sign a = cls(sg(t - l) - sg(s + l));
    Sign b = cls(xu(t - l) - xu(s + l));
    if (a != b || a == Sign::kIndeterminate) {
      hyp.verdict = Verdict::kVacuous;
      hyp.detail = "hypothesis fails at l=" + std::to_string(l) + " (" + std::string(to_string(a)) + " vs " +
                   std::string(to_string(b)) + ")";
      rep.add(hyp);
      all_vacuous("hypothesis not met");
      return rep;
    }
  }
  hyp.detail = "sign agreement holds for l = 0.." + std::to_string(r);
  rep.add(hyp);

  SpineSplit at_s = spine_split(h, s), at_t = spine_split(h, t);
  const double big = acc.sigma(at_s.lower) - acc.sigma(at_t.upper);
  const Sign dir = cls(big);
  if (dir == Sign::kZero) {
    all_vacuous("vacuous-zero: sigma(H_{u_s}) = sigma(H^{u_t})");
    return rep;
  }
  if (dir == Sign::kIndeterminate) {
    CheckReport c;
    c.name = "nlem1-u-common-sign";
    c.verdict = Verdict::kFail;
    c.detail = "sigma(H_{u_s}) - sigma(H^{u_t}) = " + fmt(big) + " lies in the indeterminate band";
    rep.add(c);
    return rep;
  }

  // Common sign with the balance for every window.
  CheckReport u_sign{"nlem1-u-common-sign", INFINITY, rule.gap * sigma, Verdict::kPass, ""};
  for (std::size_t l = 0; l <= r + 1; ++l) {
    double d = xu(t - l) - xu(s + l);
    u_sign.max_residual = std::min(u_sign.max_residual, std::abs(d));
    if (cls(d) != dir && u_sign.verdict == Verdict::kPass) {
      u_sign.verdict = Verdict::kFail;
      u_sign.detail = "l=" + std::to_string(l) + " has sign " + std::string(to_string(cls(d)));
    }
  }
  rep.add(u_sign);
  if (has_w) {
    CheckReport w_sign{"nlem1-w-common-sign", INFINITY, rule.gap * sigma, Verdict::kPass, ""};
    Sign base = cls(xw(t + 1) - xw(s));
    if (base != dir && base != Sign::kZero) {
      w_sign.verdict = Verdict::kFail;
      w_sign.detail = "base term has sign " + std::string(to_string(base));
    }
    for (std::size_t l = 1; l <= r + 1; ++l) {
      double d = xw(t + 1 - l) - xw(s + l);
      w_sign.max_residual = std::min(w_sign.max_residual, std::abs(d));
      if (cls(d) != dir && w_sign.verdict == Verdict::kPass) {
        w_sign.verdict = Verdict::kFail;
        w_sign.detail = "l=" + std::to_string(l) + " has sign " + std::string(to_string(cls(d)));
      }
    }
    rep.add(w_sign);
  } else {
    rep.add(vacuous("nlem1-w-common-sign", "k = 2 has no interior vertices"));
  }

  // Monotone windows. The l = 0 window compares x_{u_t} - x_{u_s} with its
  // own negative when s = t + 1, so the chain starts at l = 1.
  const bool positive = dir == Sign::kPositive;
  const std::string tag = positive ? "ncor1" : "ncor2";
  const std::string other = positive ? "ncor2" : "ncor1";
  // Orient the values so both corollaries read as "increasing towards the end".
  const double flip = positive ? 1.0 : -1.0;
  Chain u_chain{tag + "-u-chain", {}, Bound::kPositive, Bound::kNone, std::nullopt};
  u_chain.values.push_back(flip * (xu(t) - xu(s)));
  for (std::size_t l = 1; l <= r + 1; ++l) u_chain.values.push_back(flip * (xu(t - l) - xu(s + l)));
  rep.add(check_chain(u_chain, rule, sigma));
  if (has_w) {
    Chain w_chain{tag + "-w-chain", {}, Bound::kNonNegative, Bound::kNone, std::nullopt};
    w_chain.values.push_back(flip * (xw(t + 1) - xw(s)));
    for (std::size_t l = 1; l <= r + 1; ++l) w_chain.values.push_back(flip * (xw(t - l + 1) - xw(s + l)));
    rep.add(check_chain(w_chain, rule, sigma));
  } else {
    rep.add(vacuous(tag + "-w-chain", "k = 2 has no interior vertices"));
  }
  rep.add(vacuous(other + "-u-chain", "balance has the other sign"));
  rep.add(vacuous(other + "-w-chain", "balance has the other sign"));
  return rep;
}

}  // namespace

VerificationReport verify_sign_chain(const SpineLabeledHypergraph& h, std::size_t s, std::size_t t, std::size_t r,
                                     const GapRule& rule) {
  return sign_chain_with(h, perron(h.graph), s, t, r, rule);
}

VerificationReport verify_lem6(const GcParams& params, const GapRule& rule) {
  params.validate();
  if (!(params.s >= params.t && params.t >= 2)) throw DomainError("balance inequalities need s >= t >= 2");
  SpineLabeledHypergraph h = g_c(params);
  DistanceMatrix dm = distance_matrix(h.graph);
  SpectralResult r = perron(dm);
  Accumulators acc(dm, r.x);
  const double sigma = acc.sigma_all();
  SpineSplit at_s = spine_split(h, params.s), at_s1 = spine_split(h, params.s + 1);

  VerificationReport rep;
  rep.target = "lem6";
  rep.parameters = {{"k", params.k}, {"s", params.s}, {"t", params.t}, {"c", params.c},
                    {"core_edges", params.core.graph.edge_count()}};

  double first = acc.sigma(at_s.upper_prime) + acc.x(h.u(params.s)) - acc.sigma(at_s1.lower_prime) -
                 acc.x(h.u(params.s + 1));
  CheckReport c1{"lem6-strict", first, rule.gap * sigma, Verdict::kPass, "difference " + fmt(first)};
  if (!rule.positive(first, sigma)) c1.verdict = Verdict::kFail;
  rep.add(c1);

  double second = acc.sigma(at_s.upper_prime) - acc.sigma(at_s.lower_prime);
  CheckReport c2{"lem6-weak", second, rule.gap * sigma, Verdict::kPass, "difference " + fmt(second)};
  Sign s2 = rule.classify(second, sigma);
  if (s2 != Sign::kPositive && s2 != Sign::kZero) c2.verdict = Verdict::kFail;
  rep.add(c2);
  return rep;
}

VerificationReport verify_alem(const Hypergraph& h, Vertex u1, Vertex u2, const RootedHypergraph& g1,
                               const RootedHypergraph& g2, const GapRule& rule, double tol) {
  if (u1 == u2 || u1 >= h.vertex_count() || u2 >= h.vertex_count()) {
    throw DomainError("attachment comparison needs two distinct vertices of H");
  }
  if (g1.trivial() || g2.trivial()) throw DomainError("attachment comparison needs nontrivial rooted graphs");
  std::vector<RootedHypergraph> parts{g1, g2};
  std::vector<Vertex> both_at_u1{u1, u1}, split{u1, u2};
  Hypergraph h1 = rooted_product(h, both_at_u1, parts);
  Hypergraph h2 = rooted_product(h, split, parts);
  DistanceMatrix d1 = distance_matrix(h1);
  SpectralResult r1 = perron(d1);
  Accumulators acc(d1, r1.x);
  const double sigma = acc.sigma_all();
  const std::size_t n = h.vertex_count();

  bool cond1 = degree(h, u1) == 1 && degree(h, u2) == 1 && d1(u1, u2) == 1;
  double lhs2 = acc.sigma(id_range(n, n + g1.graph.vertex_count() - 1)) + acc.x(u1);
  double rhs2 = acc.sigma(id_range(0, n));
  Sign s2 = rule.classify(lhs2 - rhs2, sigma);
  bool cond2 = s2 == Sign::kPositive || s2 == Sign::kZero;

  VerificationReport rep;
  rep.target = "alem";
  rep.parameters = {{"host", to_string(h)}, {"u1", u1}, {"u2", u2}, {"g1_edges", g1.graph.edge_count()},
                    {"g2_edges", g2.graph.edge_count()}};
  GraftOutcome o;
  o.name = "alem-increase";
  o.before = h1;
  o.after = h2;
  o.rho_before = r1.rho;
  o.rho_after = rho_of(h2);
  if (!cond1 && !cond2) {
    rep.add(vacuous("alem-hypothesis", "neither sufficient condition holds"));
    rep.add(vacuous("alem-increase", "hypothesis not met; gap " + fmt(o.gap())));
    return rep;
  }
  CheckReport hyp;
  hyp.name = "alem-hypothesis";
  hyp.detail = std::string(cond1 ? "condition 1" : "") + (cond1 && cond2 ? " and " : "") + (cond2 ? "condition 2" : "");
  rep.add(hyp);
  rep.add(o.check(rule));
  Hypergraph g0 = rooted_product(h, std::vector<Vertex>{u1}, std::vector<RootedHypergraph>{g1});
  for (auto& c : check_attachment_move(g0, u1, u2, g2, tol)) rep.add(std::move(c));
  return rep;
}

EdgeDegreeAudit verify_edge_degree_bound(const Hypergraph& t) {
  EdgeDegreeAudit audit;
  auto deg = t.degrees();
  for (std::size_t i = 0; i < t.edge_count(); ++i) {
    const Edge& e = t.edges()[i];
    std::size_t c = std::count_if(e.begin(), e.end(), [&](Vertex v) { return deg[v] >= 2; });
    if (c > audit.max_count) {
      audit.max_count = c;
      audit.worst_edge = i;
    }
  }
  audit.report.name = "nlem3-edge-degree-census";
  audit.report.max_residual = static_cast<double>(audit.max_count);
  audit.report.tolerance = 2;
  audit.report.verdict = audit.max_count <= 2 ? Verdict::kPass : Verdict::kFail;
  audit.report.detail = "max vertices of degree >= 2 in one edge: " + std::to_string(audit.max_count) +
                        (audit.max_count > 2 ? " (edge " + std::to_string(audit.worst_edge) + ")" : "");
  return audit;
}

// ---- sweeps -----------------------------------------------------------------

namespace {

std::vector<std::size_t> parse_values(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t\r") + 1);
    if (item.empty()) continue;
    auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoul(item));
      } else {
        std::size_t lo = std::stoul(item.substr(0, dots)), hi = std::stoul(item.substr(dots + 2));
        if (lo > hi) throw DomainError("empty range '" + item + "'");
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const DomainError*>(&e)) throw;
      throw DomainError("bad value '" + item + "'");
    }
  }
  return out;
}

bool allowed(const std::vector<std::size_t>& filter, std::size_t v) {
  return filter.empty() || std::find(filter.begin(), filter.end(), v) != filter.end();
}

RootedHypergraph rooted(const SpineLabeledHypergraph& h) { return {h.graph, h.u(0)}; }

// Rooted branches for G_c cores; each root is a degree-one vertex of a
// pendant edge of its branch.
RootedHypergraph single_edge(std::size_t k) { return {loose_path(1, k).graph, 0}; }
RootedHypergraph path_branch(std::size_t len, std::size_t k) { return rooted(loose_path(len, k)); }
RootedHypergraph star_branch(std::size_t pendants, std::size_t k) {
  RootedHypergraph s = hyperstar(pendants + 1, k);
  s.root = 1;
  return s;
}
RootedHypergraph path_with_star(std::size_t pendants, std::size_t k) {
  std::vector<RootedHypergraph> att{trivial_rooted(), trivial_rooted(), hyperstar(pendants, k)};
  return rooted(attach_along_spine(2, k, std::move(att)));
}

struct NamedCore {
  std::string name;
  RootedHypergraph core;
};

std::vector<NamedCore> core_catalog(std::size_t k, std::size_t c) {
  auto glue = [&](std::vector<RootedHypergraph> parts) { return glue_at_root(parts); };
  auto pad = [&](std::vector<RootedHypergraph> parts) {
    while (parts.size() < c) parts.push_back(single_edge(k));
    return parts;
  };
  std::vector<NamedCore> out;
  if (c == 1) {
    out.push_back({"path2", glue({path_branch(2, k)})});
    out.push_back({"path3", glue({path_branch(3, k)})});
    out.push_back({"star-branch2", glue({star_branch(2, k)})});
    out.push_back({"path-star1", glue({path_with_star(1, k)})});
  } else {
    out.push_back({"path2+edges", glue(pad({path_branch(2, k)}))});
    out.push_back({"path3+edges", glue(pad({path_branch(3, k)}))});
    out.push_back({"star-branch+edges", glue(pad({star_branch(c, k)}))});
    out.push_back({"path-star+edges", glue(pad({path_with_star(c, k)}))});
    out.push_back({"star-branch+path2", glue(pad({star_branch(c, k), path_branch(2, k)}))});
  }
  return out;
}

using Point = std::function<VerificationReport()>;

void add_gc_points(std::vector<Point>& pts, const SweepGrid& g, const std::string& target, const SweepOptions& o) {
  for (std::size_t k : g.k) {
    for (std::size_t c : g.c) {
      if (c == 0) continue;
      for (const auto& nc : core_catalog(k, c)) {
        for (std::size_t s : g.s) {
          for (std::size_t t : g.t) {
            if (!(s >= t && t >= 2)) continue;
            GcParams p{k, s, t, c, nc.core};
            pts.push_back([=]() {
              VerificationReport rep;
              if (target == "lem6") {
                rep = verify_lem6(p, o.rule);
              } else {
                rep = outcome_report(target, gc_shift(p), o.rule);
                rep.parameters["case"] = to_string(classify_gc(p));
              }
              rep.target = target;
              rep.parameters["k"] = k;
              rep.parameters["s"] = s;
              rep.parameters["t"] = t;
              rep.parameters["c"] = c;
              rep.parameters["core"] = nc.name;
              return rep;
            });
          }
        }
      }
    }
  }
}

std::vector<CaterpillarParams> caterpillar_grid(const SweepGrid& g, bool facts_range) {
  std::vector<CaterpillarParams> out;
  for (std::size_t k : g.k) {
    for (std::size_t ms : g.m_star) {
      for (std::size_t delta : g.delta) {
        for (std::size_t b = 0; b < ms; ++b) {
          for (std::size_t a = 0; a + b < ms; ++a) {
            if (!allowed(g.a, a) || !allowed(g.b, b) || !allowed(g.n, a + b)) continue;
            if (facts_range && (a + 2 > b || a + b + 2 > ms)) continue;
            out.push_back({k, ms, delta, a, b});
          }
        }
      }
    }
  }
  return out;
}

nlohmann::ordered_json cat_json(const CaterpillarParams& p) {
  return {{"k", p.k}, {"m_star", p.m_star}, {"delta", p.delta}, {"a", p.a}, {"b", p.b}};
}

// Spine-labelled hosts for the sign-chain and identity sweeps.
std::vector<std::pair<std::string, SpineLabeledHypergraph>> spine_hosts(const SweepGrid& g) {
  std::vector<std::pair<std::string, SpineLabeledHypergraph>> out;
  for (std::size_t k : g.k) {
    for (std::size_t ms : g.m_star) {
      out.emplace_back("path:" + std::to_string(ms) + "," + std::to_string(k), loose_path(ms, k));
      for (std::size_t delta : g.delta) {
        for (std::size_t b = 0; b < ms; ++b) {
          for (std::size_t a = 0; a <= b && a + b < ms; ++a) {
            if (a + b == 0 || !allowed(g.a, a) || !allowed(g.b, b) || !allowed(g.n, a + b)) continue;
            CaterpillarParams p{k, ms, delta, a, b};
            out.emplace_back("cat:" + std::to_string(k) + "," + std::to_string(ms) + "," + std::to_string(delta) +
                                 "," + std::to_string(a) + "," + std::to_string(b),
                             caterpillar(p));
          }
        }
      }
    }
    for (std::size_t c : g.c) {
      if (c == 0) continue;
      for (const auto& nc : core_catalog(k, c)) {
        for (std::size_t s : g.s) {
          for (std::size_t t : g.t) {
            if (!(s >= t && t >= 1)) continue;
            out.emplace_back("gc:" + std::to_string(k) + "," + std::to_string(s) + "," + std::to_string(t) + "," +
                                 std::to_string(c) + "," + nc.name,
                             g_c({k, s, t, c, nc.core}));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> sweep_targets() {
  return {"graft1", "graft2", "alem", "lem5", "lem6", "lem7", "nlem1", "ncor1", "ncor2", "fact1", "fact2", "fact3",
          "eigen-identities"};
}

SweepGrid default_grid(const std::string& target) {
  SweepGrid g;
  if (target == "graft1") {
    g.s = {1, 2, 3};
    g.t = {1, 2, 3};
  } else if (target == "graft2") {
    g.k = {3, 4};
    g.s = {1, 2, 3};
    g.t = {1, 2, 3};
  } else if (target == "alem") {
    g.k = {2, 3};
  } else if (target == "lem5") {
    g.m_star = {3, 4, 5, 6, 7, 8};
  } else if (target == "lem6" || target == "lem7") {
    g.k = {2, 3, 4};
    g.s = {2, 3, 4};
    g.t = {2, 3};
    g.c = {1, 2, 3};
  } else if (target == "nlem1" || target == "ncor1" || target == "ncor2") {
    g.k = {3, 4};
    g.m_star = {4, 5, 6, 7};
    g.delta = {3, 4};
    g.s = {2, 3};
    g.t = {2};
    g.c = {1, 2};
  } else if (target == "fact1" || target == "fact2" || target == "fact3") {
    g.k = {3, 4};
    g.m_star = {4, 5, 6, 7, 8, 9};
    g.delta = {3, 4, 5};
  } else if (target == "eigen-identities") {
    g.k = {3, 4};
    g.m_star = {2, 4, 6};
    g.delta = {3, 4};
    g.n = {1, 2, 3};
    g.s = {2, 3};
    g.t = {2};
    g.c = {1, 2};
  }
  return g;
}

SweepGrid parse_grid(const std::string& text, SweepGrid base) {
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("grid line " + std::to_string(lineno) + ": expected key = values");
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::vector<std::size_t> vals;
    try {
      vals = parse_values(line.substr(eq + 1));
    } catch (const DomainError& e) {
      throw DomainError("grid line " + std::to_string(lineno) + ": " + e.what());
    }
    if (key == "k") base.k = vals;
    else if (key == "mstar" || key == "m_star") base.m_star = vals;
    else if (key == "delta") base.delta = vals;
    else if (key == "a") base.a = vals;
    else if (key == "b") base.b = vals;
    else if (key == "n") base.n = vals;
    else if (key == "s") base.s = vals;
    else if (key == "t") base.t = vals;
    else if (key == "c") base.c = vals;
    else throw DomainError("grid line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return base;
}

std::vector<VerificationReport> run_sweep(const std::string& target, const SweepGrid& grid,
                                          const SweepOptions& options) {
  std::vector<Point> pts;
  const SweepOptions o = options;

  if (target == "graft1" || target == "graft2") {
    const bool two = target == "graft2";
    for (std::size_t k : grid.k) {
      if (two && k < 3) continue;
      std::vector<std::pair<std::string, Hypergraph>> hosts;
      if (!two) hosts.emplace_back("path:1," + std::to_string(k), loose_path(1, k).graph);
      hosts.emplace_back("path:2," + std::to_string(k), loose_path(2, k).graph);
      hosts.emplace_back("path:3," + std::to_string(k), loose_path(3, k).graph);
      hosts.emplace_back("star:2," + std::to_string(k), hyperstar(2, k).graph);
      hosts.emplace_back("star:3," + std::to_string(k), hyperstar(3, k).graph);
      for (const auto& [name, h] : hosts) {
        std::vector<std::pair<Vertex, Vertex>> anchors;
        if (two) {
          auto deg = h.degrees();
          for (const Edge& e : h.edges()) {
            for (std::size_t i = 0; i < e.size(); ++i) {
              for (std::size_t j = i + 1; j < e.size(); ++j) {
                if (deg[e[i]] == 1 && deg[e[j]] == 1) anchors.emplace_back(e[i], e[j]);
              }
            }
          }
        } else {
          for (std::size_t u = 0; u < h.vertex_count(); ++u) anchors.emplace_back(u, u);
        }
        for (auto [u, v] : anchors) {
          for (std::size_t s : grid.s) {
            for (std::size_t t : grid.t) {
              if (!(s >= t && t >= 1)) continue;
              pts.push_back([=, h = h, name = name]() {
                GraftOutcome out = two ? graft_two_vertex_shift(h, u, v, s, t) : graft_path_shift(h, u, s, t);
                VerificationReport rep = outcome_report(target, out, o.rule);
                rep.parameters["host"] = name;
                rep.parameters["u"] = u;
                if (two) rep.parameters["v"] = v;
                rep.parameters["s"] = s;
                rep.parameters["t"] = t;
                return rep;
              });
            }
          }
        }
      }
    }
  } else if (target == "alem") {
    for (std::size_t k : grid.k) {
      std::vector<std::pair<std::string, Hypergraph>> hosts{
          {"path:2," + std::to_string(k), loose_path(2, k).graph},
          {"path:3," + std::to_string(k), loose_path(3, k).graph},
          {"star:2," + std::to_string(k), hyperstar(2, k).graph}};
      std::vector<std::pair<std::string, RootedHypergraph>> first{{"S1", hyperstar(1, k)},
                                                                  {"P2", path_branch(2, k)}};
      std::vector<std::pair<std::string, RootedHypergraph>> second{{"S1", hyperstar(1, k)}, {"S2", hyperstar(2, k)}};
      for (const auto& [hname, h] : hosts) {
        for (Vertex u1 = 0; u1 < h.vertex_count(); ++u1) {
          for (Vertex u2 = 0; u2 < h.vertex_count(); ++u2) {
            if (u1 == u2) continue;
            for (const auto& [n1, g1] : first) {
              for (const auto& [n2, g2] : second) {
                pts.push_back([=, h = h, hname = hname, n1 = n1, n2 = n2, g1 = g1, g2 = g2]() {
                  VerificationReport rep = verify_alem(h, u1, u2, g1, g2, o.rule, o.tol);
                  rep.parameters["host"] = hname;
                  rep.parameters["g1"] = n1;
                  rep.parameters["g2"] = n2;
                  return rep;
                });
              }
            }
          }
        }
      }
    }
  } else if (target == "lem5") {
    for (const auto& p : caterpillar_grid(grid, true)) {
      pts.push_back([=]() {
        VerificationReport rep = outcome_report(target, star_shift(p), o.rule);
        const nlohmann::ordered_json params = cat_json(p);
        for (const auto& [key, val] : params.items()) rep.parameters[key] = val;
        return rep;
      });
    }
  } else if (target == "lem6" || target == "lem7") {
    add_gc_points(pts, grid, target, o);
  } else if (target == "fact1" || target == "fact2" || target == "fact3") {
    for (const auto& p : caterpillar_grid(grid, true)) {
      pts.push_back([=]() {
        VerificationReport full = verify_facts(p, o.rule);
        VerificationReport rep;
        rep.target = target;
        rep.parameters = full.parameters;
        for (const auto& c : full.checks) {
          if (c.name.rfind(target, 0) == 0) rep.add(c);
        }
        return rep;
      });
    }
  } else if (target == "nlem1" || target == "ncor1" || target == "ncor2") {
    for (const auto& [name, h] : spine_hosts(grid)) {
      const std::size_t m = h.length();
      for (std::size_t t = 1; t < m; ++t) {
        for (std::size_t s = t + 1; s <= t + 2 && s + 1 <= m; ++s) {
          pts.push_back([=, h = h, name = name]() {
            SpectralResult res = perron(h.graph);
            std::size_t rmax = std::min(t - 1, m - s - 1);
            VerificationReport rep;
            for (std::size_t r = rmax + 1; r-- > 0;) {
              rep = sign_chain_with(h, res, s, t, r, o.rule);
              if (rep.checks.front().verdict != Verdict::kVacuous) break;
            }
            VerificationReport out;
            out.target = target;
            out.parameters = rep.parameters;
            out.parameters["host"] = name;
            for (const auto& c : rep.checks) {
              if (c.name == "sign-chain-hypothesis" || c.name.rfind(target, 0) == 0) out.add(c);
            }
            return out;
          });
        }
      }
    }
  } else if (target == "eigen-identities") {
    for (const auto& [name, h] : spine_hosts(grid)) {
      pts.push_back([=, h = h, name = name]() {
        VerificationReport rep;
        rep.target = target;
        rep.parameters["host"] = name;
        for (auto& c : check_identity_suite(h, o.rule, o.tol, o.perron)) rep.add(std::move(c));
        return rep;
      });
    }
  } else {
    throw DomainError("unknown sweep target '" + target + "'");
  }

  std::vector<VerificationReport> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = pts[i](); });
  return out;
}

std::string to_jsonl(const std::vector<VerificationReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

}  // namespace hyperdist
