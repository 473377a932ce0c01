#pragma once

#include <vector>

#include "hyperdist/families.hpp"
#include "hyperdist/report.hpp"
#include "hyperdist/spectral.hpp"

namespace hyperdist {

// rho x_u = W(G, u) for every vertex.
CheckReport check_eigenequation(const DistanceMatrix& dm, const SpectralResult& r, double tol);

// (rho + |e|) x_{u'} - rho x_u = sigma(G) for every edge e and u in e whose
// other vertices u' all have degree one. Residuals scaled by sigma(G).
CheckReport check_pendant_identity(const Hypergraph& g, const DistanceMatrix& dm, const SpectralResult& r,
                                   double tol);

// Two hyperstars of equal size l hanging at u1 and u2 (pendant edges).
struct StarPair {
  Vertex u1 = 0;
  std::vector<std::size_t> edges1;
  Vertex u2 = 0;
  std::vector<std::size_t> edges2;
};

// The attached stars at spine positions i and j.
StarPair star_pair(const SpineLabeledHypergraph& h, std::size_t i, std::size_t j);

// sigma(S1) - sigma(S2) = (rho l (k-1)/(rho+k) + 1)(x_{u1} - x_{u2}) and
// sgn(sigma(S1) - sigma(S2)) = sgn(x_{u1} - x_{u2}). Returns the closed-form
// residual check followed by the sign-agreement check.
std::vector<CheckReport> check_sign_identity(const Hypergraph& g, const SpectralResult& r, const StarPair& pair,
                                             const GapRule& rule, double tol);

// The spine identities of a loose path with rooted attachments: the w_i
// relations, the consecutive-difference forms, the (2 rho + k) relations,
// the telescoped u- and w-difference forms for every (s, t, i) in range, and
// the cut-vertex decomposition of W. Needs k >= 3.
std::vector<CheckReport> check_spine_identities(const SpineLabeledHypergraph& h, const DistanceMatrix& dm,
                                                const SpectralResult& r, double tol);

// Moving a rooted graph G from u1 to u2 of a host H0 (H1 = H0(u1, G),
// H2 = H0(u2, G)), with x = x(H1):
//   (1/2) x^T (D2 - D1) x = sigma(V'(G)) (W(H0, u2) - W(H0, u1))
//   rho(H1)(x_{u2} - x_{u1}) = d(u1, u2) sigma(V'(G)) + W(H0, u2) - W(H0, u1)
// plus the Rayleigh bound rho(H2) - rho(H1) >= x^T (D2 - D1) x.
std::vector<CheckReport> check_attachment_move(const Hypergraph& h0, Vertex u1, Vertex u2,
                                               const RootedHypergraph& g, double tol);

// Swapping G1 at u1 / G2 at u2 into G1 at u2 / G2 at u1:
//   (1/2) x^T (D2 - D1) x = (sigma(V'(G1)) - sigma(V'(G2))) (W(H0, u2) - W(H0, u1)).
std::vector<CheckReport> check_attachment_swap(const Hypergraph& h0, Vertex u1, Vertex u2,
                                               const RootedHypergraph& g1, const RootedHypergraph& g2,
                                               double tol);

// Every identity above that applies to a spine-labelled graph, in one list.
std::vector<CheckReport> check_identity_suite(const SpineLabeledHypergraph& h, const GapRule& rule, double tol,
                                              const PerronOptions& options = {});

}  // namespace hyperdist
