#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperdist/hypergraph.hpp"

namespace hyperdist {

// Dense symmetric matrix of hypergraph distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::vector<std::uint32_t> entries);

  std::size_t order() const { return n_; }
  std::uint32_t operator()(std::size_t u, std::size_t v) const { return d_[u * n_ + v]; }
  std::span<const std::uint32_t> row(std::size_t u) const { return {d_.data() + u * n_, n_}; }
  std::uint64_t row_sum(std::size_t u) const;

  std::string to_csv() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> d_;
};

// Breadth-first distances over the co-edge relation. Throws DomainError on
// disconnected input.
DistanceMatrix distance_matrix(const Hypergraph& g);

struct SpectralResult {
  double rho = 0.0;
  std::vector<double> x;  // positive, unit Euclidean norm
  double residual = 0.0;  // max_u |(D x)_u - rho x_u|
  std::size_t iterations = 0;
};

struct PerronOptions {
  double tol = 1e-12;
  std::size_t max_iter = 1'000'000;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SpectralResult last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const SpectralResult& last_iterate() const { return last_; }

 private:
  SpectralResult last_;
};

// Dominant eigenpair of D by power iteration on D + I from the all-ones
// vector. Stops once successive Rayleigh quotients agree to tol*rho and the
// residual is at most tol*rho.
SpectralResult perron(const DistanceMatrix& dm, const PerronOptions& options = {});
SpectralResult perron(const Hypergraph& g, const PerronOptions& options = {});

// x^T D x for a unit vector x.
double rayleigh(const DistanceMatrix& dm, std::span<const double> x);

// (1/2) x^T (D2 - D1) x, both matrices indexed by the same vertex ids.
double rayleigh_difference(std::span<const double> x, const DistanceMatrix& d1, const DistanceMatrix& d2);

// max_u |(D x)_u - rho x_u|
double eigen_residual(const DistanceMatrix& dm, double rho, std::span<const double> x);

// Perron-weighted sums over vertex sets.
class Accumulators {
 public:
  Accumulators(const DistanceMatrix& dm, std::span<const double> x) : dm_(dm), x_(x) {}

  // sigma(X) = sum_{u in X} x_u
  double sigma(std::span<const Vertex> set) const;
  double sigma_all() const;
  // W(U, v) = sum_{u in U} x_u d(u, v)
  double w(std::span<const Vertex> set, Vertex v) const;
  double w_all(Vertex v) const;
  // W_0(U, v) = sum_{u in U} d(u, v)
  double w0(std::span<const Vertex> set, Vertex v) const;
  // W(U1, U2) = sum_{u in U1, v in U2} x_u d(u, v)
  double w_sets(std::span<const Vertex> u1, std::span<const Vertex> u2) const;
  // WD(U; V1, V2) = W(U, V1) - W(U, V2)
  double wd(std::span<const Vertex> u, std::span<const Vertex> v1, std::span<const Vertex> v2) const;

  double x(Vertex v) const { return x_[v]; }

 private:
  const DistanceMatrix& dm_;
  std::span<const double> x_;
};

}  // namespace hyperdist
