#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hyperdist/hypergraph.hpp"

namespace hyperdist {

struct RootedHypergraph {
  Hypergraph graph;
  Vertex root = 0;

  bool trivial() const { return graph.edge_count() == 0; }
};

RootedHypergraph trivial_rooted();

// S_m^k rooted at its center (vertex 0). m = 0 gives the single-vertex graph.
RootedHypergraph hyperstar(std::size_t m, std::size_t k);

// Glues roots[i] onto host vertex attach_points[i]. The host keeps its ids;
// the non-root vertices of each attachment follow in attachment order, each
// keeping its relative order. Host edges come first, then attachment edges.
Hypergraph rooted_product(const Hypergraph& host, std::span<const Vertex> attach_points,
                          std::span<const RootedHypergraph> roots);

// A loose path u_0 e_1 u_1 ... e_m u_m with a rooted graph G_{u_i} glued at
// every spine vertex (trivial where nothing is attached).
//
// Vertex numbering: u_0..u_m are 0..m, then the k-2 interior vertices of
// e_1, e_2, ... in edge order, then the attachments in spine order. Spine
// edge e_i is edge index i-1.
struct SpineLabeledHypergraph {
  Hypergraph graph;
  std::size_t k = 0;
  std::vector<Vertex> spine;                      // u_0..u_m
  std::vector<std::size_t> spine_edges;           // e_1..e_m at [0, m)
  std::vector<std::optional<Vertex>> interior;    // w_1..w_m at [0, m); none when k = 2
  std::vector<RootedHypergraph> attached;         // G_{r_i} at [0, m]
  std::vector<std::vector<Vertex>> attached_vertices;  // V(G_{u_i}) incl. u_i, sorted
  std::vector<std::optional<Vertex>> pendant_rep;      // v_i, a pendant neighbour of u_i

  std::size_t length() const { return spine_edges.size(); }
  Vertex u(std::size_t i) const { return spine.at(i); }
  std::size_t e(std::size_t i) const { return spine_edges.at(i - 1); }
  std::optional<Vertex> w(std::size_t i) const { return interior.at(i - 1); }
};

SpineLabeledHypergraph attach_along_spine(std::size_t m, std::size_t k,
                                          std::vector<RootedHypergraph> attachments);

SpineLabeledHypergraph loose_path(std::size_t m, std::size_t k);

struct CaterpillarParams {
  std::size_t k = 3;
  std::size_t m_star = 1;
  std::size_t delta = 3;
  std::size_t a = 0;
  std::size_t b = 0;

  void validate() const;
  std::size_t edge_count() const { return m_star + (a + b) * (delta - 2); }
  std::size_t vertex_count() const { return edge_count() * (k - 1) + 1; }
  // Spine index i carries S_{delta-2} iff 1 <= i <= a or m_star - b <= i < m_star.
  bool has_star(std::size_t i) const;
};

// C_k(m*, delta, a, b), parameterised by its spine length m*.
SpineLabeledHypergraph caterpillar(const CaterpillarParams& params);

struct GcParams {
  std::size_t k = 3;
  std::size_t s = 1;
  std::size_t t = 1;
  std::size_t c = 1;
  RootedHypergraph core;  // G_{r_s}, glued at u_s

  void validate() const;
};

// G_c(s, t): loose path of length s+t, S_c^k at every interior spine vertex
// except u_s, which carries the core.
SpineLabeledHypergraph g_c(const GcParams& params);

// Builds G_{r_s} by identifying the roots h_1..h_c of the given parts.
RootedHypergraph glue_at_root(std::span<const RootedHypergraph> parts);

// Inverse of glue_at_root: the branches of `core` at its root, each rooted
// at a copy of the root, ordered by the smallest incident edge index.
std::vector<RootedHypergraph> root_branches(const RootedHypergraph& core);

// H_{u,v}(s, t, G_r): pendant k-uniform loose paths of lengths s and t glued
// at u and v by an end vertex, with a copy of g_r at each of their interior
// (degree-two) vertices. s = 0 or t = 0 attaches nothing on that side.
Hypergraph attach_two_paths(const Hypergraph& h, Vertex u, Vertex v, std::size_t s, std::size_t t,
                            const RootedHypergraph& g_r, std::size_t k);

struct SpineSplit {
  std::vector<Vertex> upper;        // V(H^{u_i}): component of H - e_{i+1} holding u_0
  std::vector<Vertex> lower;        // V(H_{u_i}): component of H - e_i holding u_m
  std::vector<Vertex> upper_prime;  // V(H^{u_i}) \ V(G_{u_i})
  std::vector<Vertex> lower_prime;  // V(H_{u_i}) \ V(G_{u_i})
  std::vector<Vertex> attachment;   // V(G_{u_i}), including u_i
};

SpineSplit spine_split(const SpineLabeledHypergraph& h, std::size_t i);

// Vertex set of H_{u_c}^{u_d}: the part of H between u_c and u_d, keeping
// u_c, u_d and the attachments strictly between them.
std::vector<Vertex> spine_middle(const SpineLabeledHypergraph& h, std::size_t c, std::size_t d);

// Every edge not on some path is a pendant edge centred at a link vertex of
// that path (a rooted product of a loose path with hyperstars).
bool is_caterpillar(const Hypergraph& g);

}  // namespace hyperdist
