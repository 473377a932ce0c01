#include "hyperdist/families.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace hyperdist {

namespace {

std::vector<Vertex> sorted_difference(std::vector<Vertex> a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::sort(a.begin(), a.end());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Vertex> component_of(const Hypergraph& g, Vertex v) {
  auto labels = component_labels(g);
  std::vector<Vertex> out;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    if (labels[x] == labels[v]) out.push_back(static_cast<Vertex>(x));
  }
  return out;
}

}  // namespace

RootedHypergraph trivial_rooted() { return {Hypergraph(1, {}), 0}; }

RootedHypergraph hyperstar(std::size_t m, std::size_t k) {
  if (k < 2) throw DomainError("hyperstar needs k >= 2");
  std::vector<Edge> edges;
  Vertex next = 1;
  for (std::size_t i = 0; i < m; ++i) {
    Edge e{0};
    for (std::size_t j = 1; j < k; ++j) e.push_back(next++);
    edges.push_back(std::move(e));
  }
  return {Hypergraph(next, std::move(edges)), 0};
}

Hypergraph rooted_product(const Hypergraph& host, std::span<const Vertex> attach_points,
                          std::span<const RootedHypergraph> roots) {
  if (attach_points.size() != roots.size()) {
    throw DomainError("rooted product: " + std::to_string(attach_points.size()) + " attach points but " +
                      std::to_string(roots.size()) + " rooted graphs");
  }
  std::vector<Edge> edges = host.edges();
  std::size_t next = host.vertex_count();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const RootedHypergraph& r = roots[i];
    if (attach_points[i] >= host.vertex_count()) {
      throw DomainError("rooted product: attach point " + std::to_string(attach_points[i]) + " not in host");
    }
    if (r.root >= r.graph.vertex_count()) throw DomainError("rooted product: root outside its graph");
    std::vector<Vertex> map(r.graph.vertex_count());
    for (std::size_t v = 0; v < map.size(); ++v) {
      map[v] = v == r.root ? attach_points[i] : static_cast<Vertex>(next++);
    }
    for (const Edge& e : r.graph.edges()) {
      Edge mapped;
      for (Vertex v : e) mapped.push_back(map[v]);
      edges.push_back(std::move(mapped));
    }
  }
  return Hypergraph(next, std::move(edges));
}

SpineLabeledHypergraph attach_along_spine(std::size_t m, std::size_t k,
                                          std::vector<RootedHypergraph> attachments) {
  if (m < 1) throw DomainError("spine needs at least one edge");
  if (k < 2) throw DomainError("spine needs k >= 2");
  if (attachments.size() != m + 1) {
    throw DomainError("spine of length " + std::to_string(m) + " needs " + std::to_string(m + 1) +
                      " attachments, got " + std::to_string(attachments.size()));
  }
  SpineLabeledHypergraph h;
  h.k = k;
  std::vector<Edge> edges;
  Vertex next = static_cast<Vertex>(m + 1);
  for (std::size_t i = 0; i <= m; ++i) h.spine.push_back(static_cast<Vertex>(i));
  for (std::size_t i = 1; i <= m; ++i) {
    Edge e{static_cast<Vertex>(i - 1), static_cast<Vertex>(i)};
    std::optional<Vertex> w;
    for (std::size_t j = 0; j + 2 < k; ++j) {
      if (!w) w = next;
      e.push_back(next++);
    }
    h.interior.push_back(w);
    h.spine_edges.push_back(edges.size());
    edges.push_back(std::move(e));
  }
  Hypergraph path(next, std::move(edges));
  h.graph = rooted_product(path, h.spine, attachments);

  // Recover V(G_{u_i}) from the numbering rooted_product uses.
  std::size_t offset = path.vertex_count();
  for (std::size_t i = 0; i <= m; ++i) {
    std::vector<Vertex> verts{h.spine[i]};
    for (std::size_t j = 1; j < attachments[i].graph.vertex_count(); ++j) verts.push_back(static_cast<Vertex>(offset++));
    std::sort(verts.begin(), verts.end());
    h.attached_vertices.push_back(std::move(verts));
  }
  h.attached = std::move(attachments);

  auto deg = h.graph.degrees();
  for (std::size_t i = 0; i <= m; ++i) {
    std::optional<Vertex> rep;
    for (std::size_t ei : pendant_edges_at(h.graph, h.spine[i])) {
      const Edge& e = h.graph.edges()[ei];
      bool in_attachment = std::all_of(e.begin(), e.end(), [&](Vertex v) {
        return std::binary_search(h.attached_vertices[i].begin(), h.attached_vertices[i].end(), v);
      });
      if (!in_attachment) continue;
      for (Vertex v : e) {
        if (v != h.spine[i]) {
          rep = v;
          break;
        }
      }
      if (rep) break;
    }
    h.pendant_rep.push_back(rep);
  }
  return h;
}

SpineLabeledHypergraph loose_path(std::size_t m, std::size_t k) {
  return attach_along_spine(m, k, std::vector<RootedHypergraph>(m + 1, trivial_rooted()));
}

void CaterpillarParams::validate() const {
  if (k < 2) throw DomainError("caterpillar needs k >= 2");
  if (m_star < 1) throw DomainError("caterpillar needs m* >= 1");
  if (delta < 3) throw DomainError("caterpillar needs delta >= 3");
  if (a + b >= m_star) {
    throw DomainError("caterpillar needs a + b < m* (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                      ", m*=" + std::to_string(m_star) + ")");
  }
}

bool CaterpillarParams::has_star(std::size_t i) const {
  if (i == 0 || i >= m_star) return false;
  return i <= a || i >= m_star - b;
}

SpineLabeledHypergraph caterpillar(const CaterpillarParams& params) {
  params.validate();
  std::vector<RootedHypergraph> att;
  for (std::size_t i = 0; i <= params.m_star; ++i) {
    att.push_back(params.has_star(i) ? hyperstar(params.delta - 2, params.k) : trivial_rooted());
  }
  return attach_along_spine(params.m_star, params.k, std::move(att));
}

void GcParams::validate() const {
  if (k < 2) throw DomainError("G_c needs k >= 2");
  if (s < 1 || t < 1) throw DomainError("G_c needs s >= 1 and t >= 1");
  if (c < 1) throw DomainError("G_c needs c >= 1");
  if (core.root >= core.graph.vertex_count()) throw DomainError("G_c core root outside the core");
  if (core.graph.edge_count() > 0 && !is_k_uniform(core.graph, k)) {
    throw DomainError("G_c core is not " + std::to_string(k) + "-uniform");
  }
}

SpineLabeledHypergraph g_c(const GcParams& params) {
  params.validate();
  std::vector<RootedHypergraph> att;
  std::size_t m = params.s + params.t;
  for (std::size_t i = 0; i <= m; ++i) {
    if (i == params.s) {
      att.push_back(params.core);
    } else if (i == 0 || i == m) {
      att.push_back(trivial_rooted());
    } else {
      att.push_back(hyperstar(params.c, params.k));
    }
  }
  return attach_along_spine(m, params.k, std::move(att));
}

RootedHypergraph glue_at_root(std::span<const RootedHypergraph> parts) {
  Hypergraph point(1, {});
  std::vector<Vertex> at(parts.size(), 0);
  return {rooted_product(point, at, parts), 0};
}

std::vector<RootedHypergraph> root_branches(const RootedHypergraph& core) {
  const Hypergraph& g = core.graph;
  std::vector<RootedHypergraph> out;
  // Components of the core with the root split apart: weak-delete the root
  // and group edges by the component they land in.
  std::vector<Edge> without_root;
  for (const Edge& e : g.edges()) {
    Edge r;
    for (Vertex v : e) {
      if (v != core.root) r.push_back(v);
    }
    without_root.push_back(std::move(r));
  }
  std::vector<std::size_t> parent(g.vertex_count());
  for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : without_root) {
    for (std::size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
  }
  std::vector<std::size_t> branch_roots;  // component representative per branch, by first edge
  std::vector<std::vector<std::size_t>> branch_edges;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (without_root[i].empty()) throw DomainError("core has an edge made of the root alone");
    std::size_t rep = find(without_root[i][0]);
    auto it = std::find(branch_roots.begin(), branch_roots.end(), rep);
    if (it == branch_roots.end()) {
      branch_roots.push_back(rep);
      branch_edges.push_back({i});
    } else {
      branch_edges[static_cast<std::size_t>(it - branch_roots.begin())].push_back(i);
    }
  }
  for (const auto& edges : branch_edges) {
    std::vector<Vertex> verts{core.root};
    for (std::size_t ei : edges) {
      for (Vertex v : g.edges()[ei]) verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto local = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
    std::vector<Edge> local_edges;
    for (std::size_t ei : edges) {
      Edge e;
      for (Vertex v : g.edges()[ei]) e.push_back(local(v));
      local_edges.push_back(std::move(e));
    }
    out.push_back({Hypergraph(verts.size(), std::move(local_edges)), local(core.root)});
  }
  return out;
}

Hypergraph attach_two_paths(const Hypergraph& h, Vertex u, Vertex v, std::size_t s, std::size_t t,
                            const RootedHypergraph& g_r, std::size_t k) {
  if (u >= h.vertex_count() || v >= h.vertex_count()) throw DomainError("attach_two_paths: u or v not in H");
  auto pendant_path = [&](std::size_t len) {
    if (len == 0) return trivial_rooted();
    std::vector<RootedHypergraph> att(len + 1, trivial_rooted());
    for (std::size_t i = 1; i < len; ++i) att[i] = g_r;
    SpineLabeledHypergraph p = attach_along_spine(len, k, std::move(att));
    return RootedHypergraph{std::move(p.graph), p.u(0)};
  };
  std::vector<Vertex> points{u, v};
  std::vector<RootedHypergraph> paths{pendant_path(s), pendant_path(t)};
  return rooted_product(h, points, paths);
}

SpineSplit spine_split(const SpineLabeledHypergraph& h, std::size_t i) {
  const std::size_t m = h.length();
  if (i > m) throw DomainError("spine index " + std::to_string(i) + " beyond spine length " + std::to_string(m));
  SpineSplit out;
  if (i == m) {
    out.upper = component_of(h.graph, h.u(0));
  } else {
    out.upper = component_of(delete_edge(h.graph, h.e(i + 1)).graph, h.u(0));
  }
  if (i == 0) {
    out.lower = component_of(h.graph, h.u(m));
  } else {
    out.lower = component_of(delete_edge(h.graph, h.e(i)).graph, h.u(m));
  }
  out.attachment = h.attached_vertices[i];
  out.upper_prime = sorted_difference(out.upper, out.attachment);
  out.lower_prime = sorted_difference(out.lower, out.attachment);
  return out;
}

std::vector<Vertex> spine_middle(const SpineLabeledHypergraph& h, std::size_t c, std::size_t d) {
  if (!(c < d && d <= h.length())) throw DomainError("spine_middle needs 0 <= c < d <= m");
  SpineSplit sc = spine_split(h, c);
  SpineSplit sd = spine_split(h, d);
  std::vector<Vertex> removed = sc.upper_prime;
  removed.insert(removed.end(), sd.lower_prime.begin(), sd.lower_prime.end());
  for (Vertex v : sc.attachment) {
    if (v != h.u(c)) removed.push_back(v);
  }
  for (Vertex v : sd.attachment) {
    if (v != h.u(d)) removed.push_back(v);
  }
  std::sort(removed.begin(), removed.end());
  std::vector<Vertex> all(h.graph.vertex_count());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<Vertex>(v);
  return sorted_difference(all, removed);
}

bool is_caterpillar(const Hypergraph& g) {
  if (!is_hypertree(g)) return false;
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) return true;
  auto deg = g.degrees();
  auto inc = g.incidence();

  // Every non-path edge must be pendant at a link vertex of the path.
  auto accepts = [&](const std::vector<Vertex>& links, const std::vector<bool>& on_path) {
    std::vector<bool> is_link(n, false);
    for (Vertex x : links) is_link[x] = true;
    for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
      if (on_path[ei]) continue;
      const Edge& e = g.edges()[ei];
      std::size_t centers = 0;
      bool ok = true;
      for (Vertex x : e) {
        if (deg[x] > 1) {
          ++centers;
          if (!is_link[x]) ok = false;
        }
      }
      if (!ok || centers != 1) return false;
    }
    return true;
  };

  for (std::size_t src = 0; src < n; ++src) {
    // BFS over the incidence tree from src, remembering the edge and vertex
    // each vertex was reached through.
    std::vector<std::size_t> via_edge(n, SIZE_MAX);
    std::vector<Vertex> via_vertex(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<Vertex> queue{static_cast<Vertex>(src)};
    seen[src] = true;
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (std::size_t ei : inc[x]) {
        for (Vertex y : g.edges()[ei]) {
          if (!seen[y]) {
            seen[y] = true;
            via_edge[y] = ei;
            via_vertex[y] = x;
            queue.push_back(y);
          }
        }
      }
    }
    for (std::size_t dst = src; dst < n; ++dst) {
      std::vector<Vertex> links{static_cast<Vertex>(dst)};
      std::vector<bool> on_path(g.edge_count(), false);
      Vertex cur = static_cast<Vertex>(dst);
      while (cur != src) {
        on_path[via_edge[cur]] = true;
        cur = via_vertex[cur];
        links.push_back(cur);
      }
      if (accepts(links, on_path)) return true;
    }
  }
  return false;
}

}  // namespace hyperdist
