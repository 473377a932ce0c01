#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperdist/error.hpp"

namespace hyperdist {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;  // strictly increasing vertex ids

// A finite hypergraph on vertices [0, vertex_count). Edges are kept in
// insertion order (callers index them), each stored sorted. Construction
// rejects empty edges, out-of-range ids, repeated vertices inside an edge
// and repeated edges. Isolated vertices are representable because edge
// deletion needs them; the family constructors never produce any.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const;

  // Edge indices incident to each vertex.
  std::vector<std::vector<std::size_t>> incidence() const;
  std::vector<std::size_t> degrees() const;

  // Structural equality: same vertex count and the same edge multiset,
  // independent of edge order.
  friend bool operator==(const Hypergraph& a, const Hypergraph& b);

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

std::size_t degree(const Hypergraph& g, Vertex v);
std::size_t max_degree(const Hypergraph& g);
bool contains(const Edge& e, Vertex v);

bool is_k_uniform(const Hypergraph& g, std::size_t k);
// Returns k if every edge has the same size k, nothing otherwise.
std::optional<std::size_t> uniformity(const Hypergraph& g);

// Connected-component label per vertex, labels numbered in order of first
// appearance by vertex id. A vertex in no edge is its own component.
std::vector<std::size_t> component_labels(const Hypergraph& g);
std::size_t component_count(const Hypergraph& g);
bool is_connected(const Hypergraph& g);
// Connected and with an acyclic vertex-edge incidence graph.
bool is_hypertree(const Hypergraph& g);
std::vector<Vertex> isolated_vertices(const Hypergraph& g);

// Edges e where every vertex except `center` has degree one and `center`
// has degree > 1 (pendant edges at `center`).
std::vector<std::size_t> pendant_edges_at(const Hypergraph& g, Vertex center);

struct WeakDeletion {
  Hypergraph graph;
  // old id -> new id, empty for deleted vertices
  std::vector<std::optional<Vertex>> remap;
};

// G \ U: removes the vertices of U from the vertex set and from every edge,
// then renumbers the survivors densely in increasing old-id order.
WeakDeletion weak_delete(const Hypergraph& g, std::span<const Vertex> removed);

struct EdgeDeletion {
  Hypergraph graph;  // same vertex set, one fewer edge
  std::vector<std::size_t> component;
  std::vector<Vertex> isolated;
};

// G - e_i. Vertices are kept even when they become isolated.
EdgeDeletion delete_edge(const Hypergraph& g, std::size_t edge_index);

// Replaces each selected edge e by (e \ {from}) U {to}.
Hypergraph move_edges(const Hypergraph& g, Vertex from, Vertex to,
                      std::span<const std::size_t> edge_indices);

// Moves a degree-one vertex v out of from_edge into to_edge. The source edge
// must keep at least two vertices.
Hypergraph transfer_vertex(const Hypergraph& g, Vertex v, std::size_t from_edge,
                           std::size_t to_edge);

std::string to_string(const Hypergraph& g);

// Isomorphism-class identifier. Equal codes iff isomorphic.
struct CanonicalCode {
  std::string bytes;
  std::string hex() const;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_code(const Hypergraph& g);
bool is_isomorphic(const Hypergraph& a, const Hypergraph& b);

}  // namespace hyperdist
