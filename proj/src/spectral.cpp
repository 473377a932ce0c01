#include "hyperdist/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "hyperdist/parallel.hpp"

namespace hyperdist {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<std::uint32_t> entries)
    : n_(n), d_(std::move(entries)) {
  if (d_.size() != n_ * n_) throw DomainError("distance matrix entry count does not match its order");
}

std::uint64_t DistanceMatrix::row_sum(std::size_t u) const {
  auto r = row(u);
  return std::accumulate(r.begin(), r.end(), std::uint64_t{0});
}

std::string DistanceMatrix::to_csv() const {
  std::ostringstream os;
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) os << (v ? "," : "") << (*this)(u, v);
    os << '\n';
  }
  return os.str();
}

DistanceMatrix distance_matrix(const Hypergraph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t comps = component_count(g);
  if (comps > 1) {
    throw DomainError("distance matrix needs a connected hypergraph; this one has " + std::to_string(comps) +
                      " components");
  }
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : g.edges()) {
    for (Vertex a : e) {
      for (Vertex b : e) {
        if (a != b) adj[a].push_back(b);
      }
    }
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  constexpr std::uint32_t kUnseen = UINT32_MAX;
  std::vector<std::uint32_t> d(n * n, kUnseen);
  parallel_for(n, [&](std::size_t src) {
    std::uint32_t* row = d.data() + src * n;
    row[src] = 0;
    std::deque<Vertex> queue{static_cast<Vertex>(src)};
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : adj[x]) {
        if (row[y] == kUnseen) {
          row[y] = row[x] + 1;
          queue.push_back(y);
        }
      }
    }
  });
  return DistanceMatrix(n, std::move(d));
}

namespace {

void multiply(const DistanceMatrix& dm, std::span<const double> x, std::vector<double>& out) {
  const std::size_t n = dm.order();
  out.assign(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    auto r = dm.row(u);
    double acc = 0.0;
    for (std::size_t v = 0; v < n; ++v) acc += r[v] * x[v];
    out[u] = acc;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

double eigen_residual(const DistanceMatrix& dm, double rho, std::span<const double> x) {
  std::vector<double> y;
  multiply(dm, x, y);
  double worst = 0.0;
  for (std::size_t u = 0; u < y.size(); ++u) worst = std::max(worst, std::abs(y[u] - rho * x[u]));
  return worst;
}

SpectralResult perron(const DistanceMatrix& dm, const PerronOptions& options) {
  const std::size_t n = dm.order();
  if (n < 2) throw DomainError("Perron vector needs at least two vertices");
  SpectralResult cur;
  cur.x.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y;
  double previous = 0.0;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    multiply(dm, cur.x, y);
    double rq = dot(cur.x, y);
    double residual = 0.0;
    for (std::size_t u = 0; u < n; ++u) residual = std::max(residual, std::abs(y[u] - rq * cur.x[u]));
    cur.rho = rq;
    cur.residual = residual;
    cur.iterations = it;
    if (it > 1 && std::abs(rq - previous) < options.tol * rq && residual <= options.tol * rq) return cur;
    previous = rq;
    for (std::size_t u = 0; u < n; ++u) y[u] += cur.x[u];
    double norm = std::sqrt(dot(y, y));
    for (std::size_t u = 0; u < n; ++u) cur.x[u] = y[u] / norm;
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(options.max_iter) +
                             " iterations (residual " + std::to_string(cur.residual) + ")",
                         cur);
}

SpectralResult perron(const Hypergraph& g, const PerronOptions& options) {
  return perron(distance_matrix(g), options);
}

double rayleigh(const DistanceMatrix& dm, std::span<const double> x) {
  if (x.size() != dm.order()) throw DomainError("vector length does not match the matrix order");
  double norm = std::sqrt(dot(x, x));
  if (std::abs(norm - 1.0) > 1e-9) throw DomainError("Rayleigh quotient needs a unit vector, got norm " + std::to_string(norm));
  std::vector<double> y;
  multiply(dm, x, y);
  return dot(x, y);
}

double rayleigh_difference(std::span<const double> x, const DistanceMatrix& d1, const DistanceMatrix& d2) {
  const std::size_t n = d1.order();
  if (d2.order() != n || x.size() != n) throw DomainError("rayleigh_difference: order mismatch");
  double acc = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      acc += x[u] * x[v] * (static_cast<double>(d2(u, v)) - static_cast<double>(d1(u, v)));
    }
  }
  return acc / 2.0;
}

double Accumulators::sigma(std::span<const Vertex> set) const {
  double acc = 0.0;
  for (Vertex v : set) acc += x_[v];
  return acc;
}

double Accumulators::sigma_all() const { return std::accumulate(x_.begin(), x_.end(), 0.0); }

double Accumulators::w(std::span<const Vertex> set, Vertex v) const {
  double acc = 0.0;
  for (Vertex u : set) acc += x_[u] * dm_(u, v);
  return acc;
}

double Accumulators::w_all(Vertex v) const {
  auto r = dm_.row(v);
  double acc = 0.0;
  for (std::size_t u = 0; u < r.size(); ++u) acc += x_[u] * r[u];
  return acc;
}

double Accumulators::w0(std::span<const Vertex> set, Vertex v) const {
  double acc = 0.0;
  for (Vertex u : set) acc += dm_(u, v);
  return acc;
}

double Accumulators::w_sets(std::span<const Vertex> u1, std::span<const Vertex> u2) const {
  double acc = 0.0;
  for (Vertex v : u2) acc += w(u1, v);
  return acc;
}

double Accumulators::wd(std::span<const Vertex> u, std::span<const Vertex> v1, std::span<const Vertex> v2) const {
  return w_sets(u, v1) - w_sets(u, v2);
}

}  // namespace hyperdist
