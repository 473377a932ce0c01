#include "hyperdist/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hyperdist {

namespace {

// Collects |lhs - rhs| over many evaluations of one identity.
class Residual {
 public:
  Residual(std::string name, double tolerance) : name_(std::move(name)), tolerance_(tolerance) {}

  void add(double lhs, double rhs, const std::string& where) {
    double r = std::abs(lhs - rhs);
    ++count_;
    if (r > worst_) {
      worst_ = r;
      worst_at_ = where;
    }
  }

  CheckReport report() const {
    CheckReport c;
    c.name = name_;
    c.max_residual = worst_;
    c.tolerance = tolerance_;
    if (count_ == 0) {
      c.verdict = Verdict::kVacuous;
      c.detail = "no index in range";
    } else {
      c.verdict = worst_ <= tolerance_ ? Verdict::kPass : Verdict::kFail;
      c.detail = std::to_string(count_) + " evaluations";
      if (!worst_at_.empty()) c.detail += "; worst at " + worst_at_;
    }
    return c;
  }

 private:
  std::string name_;
  double tolerance_;
  double worst_ = 0.0;
  std::string worst_at_;
  std::size_t count_ = 0;
};

std::string idx(std::initializer_list<std::pair<const char*, std::size_t>> parts) {
  std::string out;
  for (const auto& [k, v] : parts) {
    if (!out.empty()) out += ",";
    out += k;
    out += "=";
    out += std::to_string(v);
  }
  return out;
}

std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
  return v;
}

// Edges of `g` lying entirely inside the sorted vertex set.
std::vector<std::size_t> edges_within(const Hypergraph& g, const std::vector<Vertex>& verts) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return std::binary_search(verts.begin(), verts.end(), v); })) {
      out.push_back(i);
    }
  }
  return out;
}

bool is_star_attachment(const SpineLabeledHypergraph& h, std::size_t i) {
  const RootedHypergraph& a = h.attached[i];
  if (a.trivial()) return false;
  auto deg = a.graph.degrees();
  for (const Edge& e : a.graph.edges()) {
    if (!contains(e, a.root)) return false;
    for (Vertex v : e) {
      if (v != a.root && deg[v] != 1) return false;
    }
  }
  return true;
}

}  // namespace

CheckReport check_eigenequation(const DistanceMatrix& dm, const SpectralResult& r, double tol) {
  Residual res("eigenequation", tol * r.rho);
  Accumulators acc(dm, r.x);
  for (std::size_t u = 0; u < dm.order(); ++u) {
    res.add(r.rho * r.x[u], acc.w_all(static_cast<Vertex>(u)), idx({{"u", u}}));
  }
  return res.report();
}

CheckReport check_pendant_identity(const Hypergraph& g, const DistanceMatrix& dm, const SpectralResult& r,
                                   double tol) {
  Accumulators acc(dm, r.x);
  const double sigma = acc.sigma_all();
  Residual res("pendant-identity", tol * sigma);
  auto deg = g.degrees();
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
    const Edge& e = g.edges()[ei];
    if (e.size() < 2) continue;
    for (Vertex u : e) {
      bool others_pendant = std::all_of(e.begin(), e.end(), [&](Vertex v) { return v == u || deg[v] == 1; });
      if (!others_pendant) continue;
      for (Vertex up : e) {
        if (up == u) continue;
        double lhs = (r.rho + static_cast<double>(e.size())) * r.x[up] - r.rho * r.x[u];
        res.add(lhs, sigma, idx({{"edge", ei}, {"u", u}, {"u'", up}}));
      }
    }
  }
  return res.report();
}

StarPair star_pair(const SpineLabeledHypergraph& h, std::size_t i, std::size_t j) {
  for (std::size_t p : {i, j}) {
    if (p > h.length()) throw DomainError("spine index " + std::to_string(p) + " out of range");
    if (!is_star_attachment(h, p)) {
      throw DomainError("attachment at spine index " + std::to_string(p) + " is not a hyperstar");
    }
  }
  return {h.u(i), edges_within(h.graph, h.attached_vertices[i]), h.u(j),
          edges_within(h.graph, h.attached_vertices[j])};
}

std::vector<CheckReport> check_sign_identity(const Hypergraph& g, const SpectralResult& r, const StarPair& pair,
                                             const GapRule& rule, double tol) {
  if (pair.edges1.size() != pair.edges2.size()) {
    throw DomainError("sign identity needs stars of equal size (" + std::to_string(pair.edges1.size()) + " vs " +
                      std::to_string(pair.edges2.size()) + ")");
  }
  std::size_t k = 0;
  auto star_sigma = [&](Vertex center, const std::vector<std::size_t>& edges) {
    double s = r.x[center];
    for (std::size_t ei : edges) {
      const Edge& e = g.edge(ei);
      if (!contains(e, center)) throw DomainError("star edge does not contain its center");
      if (k == 0) k = e.size();
      if (e.size() != k) throw DomainError("sign identity needs stars with edges of one size");
      for (Vertex v : e) {
        if (v != center) s += r.x[v];
      }
    }
    return s;
  };
  double s1 = star_sigma(pair.u1, pair.edges1);
  double s2 = star_sigma(pair.u2, pair.edges2);
  double sigma = 0.0;
  for (double v : r.x) sigma += v;

  const double l = static_cast<double>(pair.edges1.size());
  const double kk = static_cast<double>(k);
  const double dx = r.x[pair.u1] - r.x[pair.u2];
  Residual closed("sign-identity-closed-form", tol * sigma);
  closed.add(s1 - s2, (r.rho * l * (kk - 1.0) / (r.rho + kk) + 1.0) * dx,
             idx({{"u1", pair.u1}, {"u2", pair.u2}, {"l", pair.edges1.size()}}));

  CheckReport sign;
  sign.name = "sign-identity-agreement";
  sign.tolerance = rule.gap * sigma;
  Sign a = rule.classify(s1 - s2, sigma);
  Sign b = rule.classify(dx, sigma);
  sign.max_residual = std::min(std::abs(s1 - s2), std::abs(dx));
  sign.verdict = (a == b && a != Sign::kIndeterminate) ? Verdict::kPass : Verdict::kFail;
  sign.detail = "sgn(sigma(S1)-sigma(S2))=" + std::string(to_string(a)) + ", sgn(x_u1-x_u2)=" +
                std::string(to_string(b));
  return {closed.report(), sign};
}

std::vector<CheckReport> check_spine_identities(const SpineLabeledHypergraph& h, const DistanceMatrix& dm,
                                                const SpectralResult& r, double tol) {
  if (h.k < 3) throw DomainError("spine identities need interior degree-one vertices (k >= 3)");
  const std::size_t m = h.length();
  const double rho = r.rho;
  const double k = static_cast<double>(h.k);
  Accumulators acc(dm, r.x);
  const double sigma = acc.sigma_all();
  const double scale = tol * sigma;

  std::vector<SpineSplit> split;
  std::vector<double> s_up(m + 1), s_low(m + 1), s_g(m + 1), xu(m + 1), xw(m + 2, 0.0);
  for (std::size_t i = 0; i <= m; ++i) {
    split.push_back(spine_split(h, i));
    s_up[i] = acc.sigma(split[i].upper);
    s_low[i] = acc.sigma(split[i].lower);
    s_g[i] = acc.sigma(split[i].attachment);
    xu[i] = acc.x(h.u(i));
  }
  for (std::size_t i = 1; i <= m; ++i) {
    auto w = h.w(i);
    if (!w) throw DomainError("spine edge " + std::to_string(i) + " has no degree-one representative");
    xw[i] = acc.x(*w);
  }

  Residual eq9a("spine-w-lower", scale), eq9b("spine-w-upper", scale), eq10("spine-u-step", scale),
      eq11("spine-w-step", scale), eq12("spine-u-sum", scale), eq13a("spine-u-skip-w", scale),
      eq13b("spine-u-skip-sigma", scale), eq14a("spine-u-window", scale), eq14b("spine-u-window-w", scale),
      eq15("spine-u-telescoped", scale), eq16("spine-w-window", scale), eq17("spine-w-telescoped", scale),
      cut("cut-vertex-decomposition", scale);

  for (std::size_t i = 1; i <= m; ++i) {
    auto at = idx({{"i", i}});
    eq9a.add(rho * xw[i], rho * xu[i] + s_low[i] - xw[i], at);
    eq9b.add(rho * xw[i], rho * xu[i - 1] + s_up[i - 1] - xw[i], at);
    eq10.add(rho * (xu[i - 1] - xu[i]), s_low[i] - s_up[i - 1], at);
    eq12.add(rho * (xu[i] + xu[i - 1]), (2 * rho + k) * xw[i] - sigma, at);
    if (i < m) {
      eq11.add((rho + 1) * (xw[i] - xw[i + 1]), s_low[i] - s_up[i], at);
      double lhs = rho * (xu[i - 1] - xu[i + 1]);
      eq13a.add(lhs, (2 * rho + k) * (xw[i] - xw[i + 1]), at);
      eq13b.add(lhs, (2 * rho + k) / (rho + k - 1) * (s_low[i + 1] - s_up[i - 1]), at);
    }
  }

  for (std::size_t s = 0; s <= m; ++s) {
    for (std::size_t t = 0; t <= m; ++t) {
      // u-difference windows, 1 <= i <= min(t, m - s).
      double running = 0.0;
      for (std::size_t i = 1; i <= std::min(t, m - s); ++i) {
        auto at = idx({{"s", s}, {"t", t}, {"i", i}});
        double lhs = rho * ((xu[t - i] - xu[s + i]) - (xu[t + 1 - i] - xu[s + i - 1]));
        eq14a.add(lhs, s_low[t + 1 - i] - s_up[t - i] + s_low[s + i] - s_up[s + i - 1], at);
        eq14b.add(lhs, 2 * (s_low[s + i] - s_up[t - i]) + (k - 2) * (xw[s + i] - xw[t + 1 - i]), at);
        std::size_t l = i - 1;
        running += s_g[t - l] - s_g[s + l] + (k - 2) * (xw[t - l] - xw[s + 1 + l]);
        eq15.add(lhs, 2 * (s_low[s] - s_up[t]) + 2 * running + (k - 2) * (xw[s + i] - xw[t + 1 - i]), at);
      }
      // w-difference windows: w_{t-i+1}, w_{t+2-i}, w_{s+i}, w_{s+i-1} all in [1, m].
      double wrunning = 0.0;
      for (std::size_t i = 1; i <= t && s + i <= m; ++i) {
        if (i >= 2) {
          std::size_t l = i - 2;
          wrunning += s_g[t - l] - s_g[s + l] + (k - 2) * (xw[t - l] - xw[s + 1 + l]);
        }
        if (t + 2 > m + i || s + i < 2) continue;
        auto at = idx({{"s", s}, {"t", t}, {"i", i}});
        double lhs = (rho + 1) * ((xw[t - i + 1] - xw[s + i]) - (xw[t + 2 - i] - xw[s + i - 1]));
        double tail = s_g[t - i + 1] - s_g[s + i - 1];
        eq16.add(lhs, 2 * (s_low[s + i - 1] - s_up[t - i + 1]) + tail, at);
        eq17.add(lhs, 2 * (s_low[s] - s_up[t]) + 2 * wrunning + tail, at);
      }
    }
  }

  const auto everything = all_vertices(dm.order());
  for (std::size_t i = 0; i <= m; ++i) {
    const Vertex ui = h.u(i);
    for (const auto* part : {&split[i].upper, &split[i].lower}) {
      const double sp = acc.sigma(*part);
      const double wu = acc.w(*part, ui);
      for (Vertex y : everything) {
        if (y != ui && std::binary_search(part->begin(), part->end(), y)) continue;
        cut.add(acc.w(*part, y), wu + dm(ui, y) * sp, idx({{"i", i}, {"y", y}}));
      }
    }
  }

  return {eq9a.report(),  eq9b.report(),  eq10.report(),  eq11.report(), eq12.report(),
          eq13a.report(), eq13b.report(), eq14a.report(), eq14b.report(), eq15.report(),
          eq16.report(),  eq17.report(),  cut.report()};
}

namespace {

struct MoveSides {
  DistanceMatrix d1, d2;
  SpectralResult r1;
  double rho2 = 0.0;
  double sigma = 0.0;
};

MoveSides evaluate_move(const Hypergraph& h1, const Hypergraph& h2) {
  MoveSides out;
  out.d1 = distance_matrix(h1);
  out.d2 = distance_matrix(h2);
  out.r1 = perron(out.d1);
  out.rho2 = perron(out.d2).rho;
  for (double v : out.r1.x) out.sigma += v;
  return out;
}

std::vector<Vertex> id_range(std::size_t lo, std::size_t hi) {
  std::vector<Vertex> out;
  for (std::size_t v = lo; v < hi; ++v) out.push_back(static_cast<Vertex>(v));
  return out;
}

CheckReport rayleigh_bound(const MoveSides& s, double half_difference, double tol) {
  CheckReport c;
  c.name = "rayleigh-bound";
  c.tolerance = tol * s.r1.rho;
  double slack = (s.rho2 - s.r1.rho) - 2.0 * half_difference;
  c.max_residual = slack < 0 ? -slack : 0.0;
  c.verdict = slack >= -c.tolerance ? Verdict::kPass : Verdict::kFail;
  c.detail = "rho2-rho1=" + std::to_string(s.rho2 - s.r1.rho) + ", x^T(D2-D1)x=" + std::to_string(2 * half_difference);
  return c;
}

}  // namespace

std::vector<CheckReport> check_attachment_move(const Hypergraph& h0, Vertex u1, Vertex u2,
                                               const RootedHypergraph& g, double tol) {
  if (u1 >= h0.vertex_count() || u2 >= h0.vertex_count()) throw DomainError("attachment move: vertex outside host");
  std::vector<RootedHypergraph> parts{g};
  std::vector<Vertex> at1{u1}, at2{u2};
  Hypergraph h1 = rooted_product(h0, at1, parts);
  Hypergraph h2 = rooted_product(h0, at2, parts);
  MoveSides s = evaluate_move(h1, h2);
  Accumulators acc(s.d1, s.r1.x);
  const auto host = id_range(0, h0.vertex_count());
  const auto rest = id_range(h0.vertex_count(), h1.vertex_count());
  const double sv = acc.sigma(rest);
  const double dw = acc.w(host, u2) - acc.w(host, u1);
  const double scale = tol * s.sigma * s.r1.rho;

  Residual eq6("attachment-move-rayleigh", scale);
  double half = rayleigh_difference(s.r1.x, s.d1, s.d2);
  eq6.add(half, sv * dw, idx({{"u1", u1}, {"u2", u2}}));
  Residual eq7("attachment-move-eigen", scale);
  eq7.add(s.r1.rho * (acc.x(u2) - acc.x(u1)), s.d1(u1, u2) * sv + dw, idx({{"u1", u1}, {"u2", u2}}));
  return {eq6.report(), eq7.report(), rayleigh_bound(s, half, tol)};
}

std::vector<CheckReport> check_attachment_swap(const Hypergraph& h0, Vertex u1, Vertex u2,
                                               const RootedHypergraph& g1, const RootedHypergraph& g2,
                                               double tol) {
  if (u1 >= h0.vertex_count() || u2 >= h0.vertex_count()) throw DomainError("attachment swap: vertex outside host");
  std::vector<RootedHypergraph> parts{g1, g2};
  std::vector<Vertex> before{u1, u2}, after{u2, u1};
  Hypergraph h1 = rooted_product(h0, before, parts);
  Hypergraph h2 = rooted_product(h0, after, parts);
  MoveSides s = evaluate_move(h1, h2);
  Accumulators acc(s.d1, s.r1.x);
  const std::size_t n0 = h0.vertex_count();
  const std::size_t n_g1 = n0 + g1.graph.vertex_count() - 1;
  const auto host = id_range(0, n0);
  const double dsig = acc.sigma(id_range(n0, n_g1)) - acc.sigma(id_range(n_g1, h1.vertex_count()));
  const double dw = acc.w(host, u2) - acc.w(host, u1);

  Residual eq8("attachment-swap-rayleigh", tol * s.sigma * s.r1.rho);
  double half = rayleigh_difference(s.r1.x, s.d1, s.d2);
  eq8.add(half, dsig * dw, idx({{"u1", u1}, {"u2", u2}}));
  return {eq8.report(), rayleigh_bound(s, half, tol)};
}

std::vector<CheckReport> check_identity_suite(const SpineLabeledHypergraph& h, const GapRule& rule, double tol,
                                              const PerronOptions& options) {
  DistanceMatrix dm = distance_matrix(h.graph);
  SpectralResult r = perron(dm, options);
  std::vector<CheckReport> out{check_eigenequation(dm, r, tol), check_pendant_identity(h.graph, dm, r, tol)};
  if (h.k >= 3) {
    for (auto& c : check_spine_identities(h, dm, r, tol)) out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i <= h.length(); ++i) {
    if (!is_star_attachment(h, i)) continue;
    for (std::size_t j = i + 1; j <= h.length(); ++j) {
      if (!is_star_attachment(h, j)) continue;
      if (h.attached[i].graph.edge_count() != h.attached[j].graph.edge_count()) continue;
      for (auto& c : check_sign_identity(h.graph, r, star_pair(h, i, j), rule, tol)) {
        c.detail += " (spine " + std::to_string(i) + " vs " + std::to_string(j) + ")";
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}
}  // namespace hyperdist
