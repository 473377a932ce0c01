// Canonical codes for hypergraphs.
//
// Hypertrees have a tree-shaped vertex-edge incidence graph, so they are
// encoded exactly by a rooted-tree code taken at the center(s) of that tree.
// Everything else goes through individualization-refinement on the
// incidence graph: colour refinement, then branching on the first non-trivial
// cell, keeping the lexicographically least relabelled edge list over all
// leaves. Twin vertices (identical incident-edge sets) are interchangeable by
// an automorphism, so only one member of each twin class is branched on.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hyperdist/hypergraph.hpp"

namespace hyperdist {

namespace {

// Incidence graph: nodes [0, n) are vertices, [n, n + m) are edges.
struct Incidence {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<std::size_t>> adj;
};

Incidence build_incidence(const Hypergraph& g) {
  Incidence inc;
  inc.n = g.vertex_count();
  inc.m = g.edge_count();
  inc.adj.resize(inc.n + inc.m);
  for (std::size_t i = 0; i < inc.m; ++i) {
    for (Vertex v : g.edges()[i]) {
      inc.adj[v].push_back(inc.n + i);
      inc.adj[inc.n + i].push_back(v);
    }
  }
  return inc;
}

// ---- tree route ---------------------------------------------------------

std::string encode_rooted(const Incidence& inc, std::size_t node, std::size_t parent) {
  std::vector<std::string> children;
  for (std::size_t c : inc.adj[node]) {
    if (c != parent) children.push_back(encode_rooted(inc, c, node));
  }
  std::sort(children.begin(), children.end());
  std::string out(1, node < inc.n ? 'v' : 'e');
  out += '(';
  for (const auto& c : children) out += c;
  out += ')';
  return out;
}

std::vector<std::size_t> tree_centers(const Incidence& inc) {
  std::size_t total = inc.adj.size();
  if (total == 1) return {0};
  std::vector<std::size_t> deg(total);
  std::vector<std::size_t> layer;
  for (std::size_t i = 0; i < total; ++i) {
    deg[i] = inc.adj[i].size();
    if (deg[i] <= 1) layer.push_back(i);
  }
  std::size_t remaining = total;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<std::size_t> next;
    for (std::size_t leaf : layer) {
      for (std::size_t nb : inc.adj[leaf]) {
        if (--deg[nb] == 1) next.push_back(nb);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::string tree_code(const Hypergraph& g) {
  Incidence inc = build_incidence(g);
  std::string best;
  bool first = true;
  for (std::size_t c : tree_centers(inc)) {
    std::string code = encode_rooted(inc, c, SIZE_MAX);
    if (first || code < best) best = std::move(code);
    first = false;
  }
  return "T" + best;
}

// ---- general route ------------------------------------------------------

using Coloring = std::vector<std::size_t>;

// Equitable refinement. Colours are ranks; the previous colour is the
// primary sort key so refinement never reorders existing cells.
Coloring refine(const Incidence& inc, Coloring colors) {
  const std::size_t total = colors.size();
  std::size_t cells = 0;
  {
    Coloring sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    cells = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }
  while (true) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(total);
    for (std::size_t i = 0; i < total; ++i) {
      sig[i].first = colors[i];
      for (std::size_t nb : inc.adj[i]) sig[i].second.push_back(colors[nb]);
      std::sort(sig[i].second.begin(), sig[i].second.end());
    }
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
    Coloring next(total);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
      next[order[i]] = rank;
    }
    std::size_t next_cells = total == 0 ? 0 : rank + 1;
    colors = std::move(next);
    if (next_cells == cells) return colors;
    cells = next_cells;
  }
}

std::string leaf_code(const Hypergraph& g, const Incidence& inc, const Coloring& colors) {
  // Vertex colours occupy ranks [0, n) once discrete because the initial
  // colouring puts every vertex node before every edge node.
  std::vector<Edge> relabelled;
  relabelled.reserve(inc.m);
  for (const Edge& e : g.edges()) {
    Edge r;
    for (Vertex v : e) r.push_back(static_cast<Vertex>(colors[v]));
    std::sort(r.begin(), r.end());
    relabelled.push_back(std::move(r));
  }
  std::sort(relabelled.begin(), relabelled.end());
  std::string out = "G" + std::to_string(inc.n) + ":";
  for (const Edge& e : relabelled) {
    for (Vertex v : e) out += std::to_string(v) + ",";
    out += ";";
  }
  return out;
}

void search(const Hypergraph& g, const Incidence& inc, const Coloring& colors, std::string& best,
            bool& have_best) {
  const std::size_t total = colors.size();
  std::vector<std::size_t> cell_size(total, 0);
  for (std::size_t c : colors) ++cell_size[c];
  std::size_t target = SIZE_MAX;
  for (std::size_t c = 0; c < total; ++c) {
    if (cell_size[c] > 1) {
      target = c;
      break;
    }
  }
  if (target == SIZE_MAX) {
    std::string code = leaf_code(g, inc, colors);
    if (!have_best || code < best) {
      best = std::move(code);
      have_best = true;
    }
    return;
  }
  std::vector<std::vector<std::size_t>> twin_seen;
  for (std::size_t node = 0; node < total; ++node) {
    if (colors[node] != target) continue;
    std::vector<std::size_t> nbhd = inc.adj[node];
    std::sort(nbhd.begin(), nbhd.end());
    if (node < inc.n) {
      if (std::find(twin_seen.begin(), twin_seen.end(), nbhd) != twin_seen.end()) continue;
      twin_seen.push_back(nbhd);
    }
    Coloring next(total);
    for (std::size_t i = 0; i < total; ++i) {
      next[i] = 2 * colors[i] + ((colors[i] == target && i != node) ? 1 : 0);
    }
    search(g, inc, refine(inc, std::move(next)), best, have_best);
  }
}

std::string general_code(const Hypergraph& g) {
  Incidence inc = build_incidence(g);
  Coloring initial(inc.n + inc.m);
  for (std::size_t i = 0; i < inc.n; ++i) initial[i] = 0;
  for (std::size_t i = inc.n; i < initial.size(); ++i) initial[i] = 1;
  std::string best;
  bool have_best = false;
  if (initial.empty()) return "G0:";
  search(g, inc, refine(inc, std::move(initial)), best, have_best);
  return best;
}

}  // namespace

std::string CanonicalCode::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

CanonicalCode canonical_code(const Hypergraph& g) {
  if (is_hypertree(g)) return {tree_code(g)};
  return {general_code(g)};
}

bool is_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return canonical_code(a) == canonical_code(b);
}

}  // namespace hyperdist
