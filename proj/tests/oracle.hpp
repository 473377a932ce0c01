// Slow, independent reference implementations used only by the tests.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "hyperdist/hypergraph.hpp"

namespace oracle {

using hyperdist::Edge;
using hyperdist::Hypergraph;
using hyperdist::Vertex;

inline std::set<Edge> edge_set(const Hypergraph& g) { return {g.edges().begin(), g.edges().end()}; }

inline Edge image(const Edge& e, const std::vector<Vertex>& perm) {
  Edge out;
  for (Vertex v : e) out.push_back(perm[v]);
  std::sort(out.begin(), out.end());
  return out;
}

// Tries every vertex permutation. Only for tiny graphs.
inline bool permutation_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<Vertex> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  const auto target = edge_set(b);
  do {
    bool ok = true;
    for (const Edge& e : a.edges()) {
      if (!target.count(image(e, perm))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Degree-respecting backtracking; checks each edge once all its vertices are mapped.
inline bool backtrack_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  const std::size_t n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto da = a.degrees(), db = b.degrees();
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  const auto target = edge_set(b);
  // Edges of a, grouped by their largest vertex: checkable once that vertex is placed.
  std::vector<std::vector<const Edge*>> closing(n);
  for (const Edge& e : a.edges()) closing[e.back()].push_back(&e);
  std::vector<Vertex> perm(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> place = [&](std::size_t v) {
    if (v == n) return true;
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || db[w] != da[v]) continue;
      perm[v] = w;
      bool ok = true;
      for (const Edge* e : closing[v]) {
        if (!target.count(image(*e, perm))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[w] = true;
      if (place(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return place(0);
}

// Connected and spanning with sum(|e| - 1) = |V| - 1, via union-find.
inline bool spanning_hypertree(std::size_t n, const std::vector<Edge>& edges) {
  std::size_t incidences = 0;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t merges = 0;
  for (const Edge& e : edges) {
    incidences += e.size() - 1;
    for (std::size_t i = 1; i < e.size(); ++i) {
      std::size_t r1 = find(e[0]), r2 = find(e[i]);
      if (r1 == r2) return false;
      parent[r1] = r2;
      ++merges;
    }
  }
  return incidences == n - 1 && merges == n - 1;
}

// Every labeled k-uniform hypertree with m edges on m(k-1)+1 vertices,
// reduced to isomorphism classes by backtracking isomorphism.
inline std::vector<Hypergraph> labeled_hypertree_classes(std::size_t m, std::size_t k) {
  const std::size_t n = m * (k - 1) + 1;
  std::vector<Edge> all;
  std::vector<Vertex> pick(k);
  std::function<void(std::size_t, Vertex)> choose = [&](std::size_t depth, Vertex from) {
    if (depth == k) {
      all.push_back(pick);
      return;
    }
    for (Vertex v = from; v < n; ++v) {
      pick[depth] = v;
      choose(depth + 1, v + 1);
    }
  };
  choose(0, 0);

  std::map<std::vector<std::size_t>, std::vector<Hypergraph>> buckets;  // by sorted degree sequence
  std::vector<Edge> chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (chosen.size() == m) {
      if (!spanning_hypertree(n, chosen)) return;
      Hypergraph g(n, chosen);
      auto deg = g.degrees();
      std::sort(deg.begin(), deg.end());
      auto& bucket = buckets[deg];
      for (const auto& rep : bucket) {
        if (backtrack_isomorphic(rep, g)) return;
      }
      bucket.push_back(g);
      return;
    }
    for (std::size_t i = from; i < all.size(); ++i) {
      chosen.push_back(all[i]);
      extend(i + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  std::vector<Hypergraph> out;
  for (auto& [deg, reps] : buckets) {
    for (auto& g : reps) out.push_back(std::move(g));
  }
  return out;
}

// Floyd-Warshall on the co-edge relation.
inline Eigen::MatrixXd floyd_distances(const Hypergraph& g) {
  const std::size_t n = g.vertex_count();
  const double inf = 1e18;
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, inf);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0;
  for (const Edge& e : g.edges()) {
    for (Vertex a : e) {
      for (Vertex b : e) {
        if (a != b) d(a, b) = 1;
      }
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, w) + d(w, j));
    }
  }
  return d;
}

struct EigenPair {
  double rho;
  Eigen::VectorXd x;
};

inline EigenPair eigen_perron(const Hypergraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(floyd_distances(g));
  const auto n = solver.eigenvalues().size();
  Eigen::VectorXd x = solver.eigenvectors().col(n - 1);
  if (x.sum() < 0) x = -x;
  return {solver.eigenvalues()(n - 1), x};
}

}  // namespace oracle
