#include "hyperdist/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace hyperdist {

namespace {

std::string edge_str(const Edge& e) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << '}';
  return os.str();
}

void check_vertex(const Hypergraph& g, Vertex v) {
  if (v >= g.vertex_count()) {
    throw DomainError("vertex " + std::to_string(v) + " out of range (vertex_count " +
                      std::to_string(g.vertex_count()) + ")");
  }
}

void check_edge_index(const Hypergraph& g, std::size_t i) {
  if (i >= g.edge_count()) {
    throw DomainError("edge index " + std::to_string(i) + " out of range (edge_count " +
                      std::to_string(g.edge_count()) + ")");
  }
}

// Union-find over vertices, joined along edges.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Hypergraph::Hypergraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.empty()) throw DomainError("edge " + std::to_string(i) + " is empty");
    std::sort(e.begin(), e.end());
    if (e.back() >= vertex_count_) {
      throw DomainError("edge " + edge_str(e) + " has a vertex id >= vertex_count " +
                        std::to_string(vertex_count_));
    }
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw DomainError("edge " + edge_str(e) + " repeats a vertex");
    }
  }
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw DomainError("repeated edge " + edge_str(*dup));
}

const Edge& Hypergraph::edge(std::size_t i) const {
  check_edge_index(*this, i);
  return edges_[i];
}

std::vector<std::vector<std::size_t>> Hypergraph::incidence() const {
  std::vector<std::vector<std::size_t>> inc(vertex_count_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (Vertex v : edges_[i]) inc[v].push_back(i);
  }
  return inc;
}

std::vector<std::size_t> Hypergraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count_, 0);
  for (const Edge& e : edges_) {
    for (Vertex v : e) ++deg[v];
  }
  return deg;
}

bool operator==(const Hypergraph& a, const Hypergraph& b) {
  if (a.vertex_count_ != b.vertex_count_ || a.edges_.size() != b.edges_.size()) return false;
  std::vector<Edge> ea = a.edges_, eb = b.edges_;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

bool contains(const Edge& e, Vertex v) { return std::binary_search(e.begin(), e.end(), v); }

std::size_t degree(const Hypergraph& g, Vertex v) {
  check_vertex(g, v);
  return static_cast<std::size_t>(
      std::count_if(g.edges().begin(), g.edges().end(), [v](const Edge& e) { return contains(e, v); }));
}

std::size_t max_degree(const Hypergraph& g) {
  auto deg = g.degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool is_k_uniform(const Hypergraph& g, std::size_t k) {
  return std::all_of(g.edges().begin(), g.edges().end(), [k](const Edge& e) { return e.size() == k; });
}

std::optional<std::size_t> uniformity(const Hypergraph& g) {
  if (g.edge_count() == 0) return std::nullopt;
  std::size_t k = g.edges().front().size();
  if (!is_k_uniform(g, k)) return std::nullopt;
  return k;
}

std::vector<std::size_t> component_labels(const Hypergraph& g) {
  DisjointSets sets(g.vertex_count());
  for (const Edge& e : g.edges()) {
    for (std::size_t i = 1; i < e.size(); ++i) sets.unite(e[0], e[i]);
  }
  std::vector<std::size_t> label(g.vertex_count());
  std::vector<std::size_t> root_label(g.vertex_count(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::size_t r = sets.find(v);
    if (root_label[r] == SIZE_MAX) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

std::size_t component_count(const Hypergraph& g) {
  auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

bool is_connected(const Hypergraph& g) { return component_count(g) <= 1; }

bool is_hypertree(const Hypergraph& g) {
  if (g.vertex_count() == 0 || !is_connected(g)) return false;
  std::size_t incidences = 0;
  for (const Edge& e : g.edges()) incidences += e.size() - 1;
  return incidences + 1 == g.vertex_count();
}

std::vector<Vertex> isolated_vertices(const Hypergraph& g) {
  auto deg = g.degrees();
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] == 0) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<std::size_t> pendant_edges_at(const Hypergraph& g, Vertex center) {
  check_vertex(g, center);
  auto deg = g.degrees();
  std::vector<std::size_t> out;
  if (deg[center] < 2) return out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (!contains(e, center)) continue;
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return v == center || deg[v] == 1; })) {
      out.push_back(i);
    }
  }
  return out;
}

WeakDeletion weak_delete(const Hypergraph& g, std::span<const Vertex> removed) {
  std::vector<bool> gone(g.vertex_count(), false);
  for (Vertex v : removed) {
    check_vertex(g, v);
    gone[v] = true;
  }
  std::size_t kept = static_cast<std::size_t>(std::count(gone.begin(), gone.end(), false));
  if (kept == 0) throw DomainError("weak deletion would remove every vertex");

  WeakDeletion out;
  out.remap.assign(g.vertex_count(), std::nullopt);
  Vertex next = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!gone[v]) out.remap[v] = next++;
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    Edge e;
    for (Vertex v : g.edges()[i]) {
      if (out.remap[v]) e.push_back(*out.remap[v]);
    }
    if (e.empty()) throw DomainError("weak deletion empties edge " + std::to_string(i));
    edges.push_back(std::move(e));
  }
  out.graph = Hypergraph(kept, std::move(edges));
  return out;
}

EdgeDeletion delete_edge(const Hypergraph& g, std::size_t edge_index) {
  check_edge_index(g, edge_index);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() - 1);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (i != edge_index) edges.push_back(g.edges()[i]);
  }
  EdgeDeletion out{Hypergraph(g.vertex_count(), std::move(edges)), {}, {}};
  out.component = component_labels(out.graph);
  out.isolated = isolated_vertices(out.graph);
  return out;
}

Hypergraph move_edges(const Hypergraph& g, Vertex from, Vertex to,
                      std::span<const std::size_t> edge_indices) {
  check_vertex(g, from);
  check_vertex(g, to);
  std::vector<Edge> edges = g.edges();
  std::vector<std::size_t> bad;
  std::set<std::size_t> seen;
  for (std::size_t i : edge_indices) {
    check_edge_index(g, i);
    if (!seen.insert(i).second) continue;
    const Edge& e = g.edges()[i];
    if (!contains(e, from) || contains(e, to)) {
      bad.push_back(i);
      continue;
    }
    Edge moved;
    moved.reserve(e.size());
    for (Vertex v : e) moved.push_back(v == from ? to : v);
    std::sort(moved.begin(), moved.end());
    edges[i] = std::move(moved);
  }
  if (!bad.empty()) {
    std::string msg = "cannot move edges from " + std::to_string(from) + " to " + std::to_string(to) +
                      "; offending edge indices:";
    for (std::size_t i : bad) msg += " " + std::to_string(i) + edge_str(g.edges()[i]);
    throw DomainError(msg);
  }
  return Hypergraph(g.vertex_count(), std::move(edges));
}

Hypergraph transfer_vertex(const Hypergraph& g, Vertex v, std::size_t from_edge, std::size_t to_edge) {
  check_vertex(g, v);
  check_edge_index(g, from_edge);
  check_edge_index(g, to_edge);
  const Edge& src = g.edges()[from_edge];
  const Edge& dst = g.edges()[to_edge];
  if (!contains(src, v)) throw DomainError("vertex " + std::to_string(v) + " is not in the source edge");
  if (degree(g, v) != 1) throw DomainError("vertex " + std::to_string(v) + " does not have degree 1");
  if (contains(dst, v)) throw DomainError("vertex " + std::to_string(v) + " already lies in the target edge");
  if (src.size() < 3) throw DomainError("source edge would shrink below two vertices");

  std::vector<Edge> edges = g.edges();
  std::erase(edges[from_edge], v);
  edges[to_edge].push_back(v);
  std::sort(edges[to_edge].begin(), edges[to_edge].end());
  return Hypergraph(g.vertex_count(), std::move(edges));
}

std::string to_string(const Hypergraph& g) {
  std::ostringstream os;
  os << "Hypergraph(n=" << g.vertex_count() << ", edges=[";
  for (std::size_t i = 0; i < g.edge_count(); ++i) os << (i ? " " : "") << edge_str(g.edges()[i]);
  os << "])";
  return os.str();
}

}  // namespace hyperdist
