#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperdist/extremal.hpp"
#include "hyperdist/family_spec.hpp"
#include "hyperdist/grafts.hpp"
#include "hyperdist/io.hpp"
#include "hyperdist/parallel.hpp"
#include "hyperdist/spectral.hpp"

namespace hyperdist::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", round_sig(v));
  return buf;
}

// "3", "5..7", "2..4,7"; the empty string is the empty list.
std::vector<std::size_t> parse_range(const std::string& flag, const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dots = item.find("..");
    auto num = [&](const std::string& s) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(s, &pos);
      } catch (const std::exception&) {
        pos = std::string::npos;
      }
      if (s.empty() || pos != s.size() || s[0] == '-') {
        throw UsageError("--" + flag + ": '" + s + "' is not a non-negative integer");
      }
      return static_cast<std::size_t>(v);
    };
    if (dots == std::string::npos) {
      out.push_back(num(item));
    } else {
      std::size_t lo = num(item.substr(0, dots)), hi = num(item.substr(dots + 2));
      if (lo > hi) throw UsageError("--" + flag + ": empty range " + item);
      for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  return out;
}

struct Common {
  double tol = 1e-12;
  double gap = 1e-9;
  std::string out_path;
  std::string csv_path;
  std::string manifest_path;
};

struct GridFlags {
  std::map<std::string, std::string> values;  // flag -> raw text, only when given
  std::string config;

  void bind(CLI::App* app, std::initializer_list<const char*> names) {
    for (const char* n : names) {
      auto* opt = app->add_option_function<std::string>(
          std::string("--") + n, [this, key = std::string(n)](const std::string& v) { values[key] = v; },
          std::string("values for ") + n + " (list or lo..hi)");
      opt->type_name("RANGE");
    }
  }
  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::vector<std::size_t> get(const std::string& key, std::vector<std::size_t> fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : parse_range(key, it->second);
  }
};

// Output sink: --out file or the given stream; records every artifact.
struct Outputs {
  std::ostream& out;
  const Common& common;
  std::vector<std::string> written;

  void emit(const std::string& text) {
    if (common.out_path.empty()) {
      out << text;
    } else {
      write_file(common.out_path, text);
    }
  }
  void csv(const std::string& text) {
    if (!common.csv_path.empty()) write_file(common.csv_path, text);
  }
  void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
    written.push_back(path);
  }
};

std::string lines(const std::vector<json>& items) {
  std::string s;
  for (const auto& j : items) s += j.dump() + "\n";
  return s;
}

struct Tally {
  std::size_t pass = 0, fail = 0, vacuous = 0;
  void add(Verdict v) {
    (v == Verdict::kPass ? pass : v == Verdict::kFail ? fail : vacuous)++;
  }
};

std::string report_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  out << "target,point,parameters,check,verdict,max_residual,tolerance\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::string params = reports[i].parameters.dump();
    std::string quoted = "\"";
    for (char c : params) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    quoted += "\"";
    for (const auto& c : reports[i].checks) {
      out << reports[i].target << ',' << i << ',' << quoted << ',' << c.name << ',' << to_string(c.verdict) << ','
          << fmt12(c.max_residual) << ',' << fmt12(c.tolerance) << '\n';
    }
  }
  return out.str();
}

std::string cat_spec(const CaterpillarParams& p) {
  return "cat:" + std::to_string(p.k) + "," + std::to_string(p.m_star) + "," + std::to_string(p.delta) + "," +
         std::to_string(p.a) + "," + std::to_string(p.b);
}

// ---- verify: extremal targets ------------------------------------------------

struct FamilyGrid {
  std::vector<std::size_t> k, m, delta, n;
  bool n_given = false;
};

std::vector<FamilyKey> family_keys(const FamilyGrid& g) {
  std::vector<FamilyKey> keys;
  for (std::size_t k : g.k) {
    std::vector<std::size_t> ms = g.m;
    if (ms.empty()) {
      for (std::size_t m = 3; m <= (k == 2 ? 8u : 9u); ++m) ms.push_back(m);
    }
    for (std::size_t m : ms) {
      for (std::size_t d : g.delta) {
        std::vector<std::size_t> ns = g.n;
        if (!g.n_given) {
          // Degrees satisfy sum(deg - 1) = m - 1 in a hypertree.
          for (std::size_t n = 1; n * (d - 1) <= m - 1; ++n) ns.push_back(n);
        }
        for (std::size_t n : ns) keys.push_back({k, m, d, n});
      }
    }
  }
  return keys;
}

VerificationReport extremal_point(const std::string& target, const ExtremalReport& r) {
  VerificationReport rep;
  rep.target = target;
  rep.parameters = {{"k", r.family.k}, {"m", r.family.m}, {"delta", r.family.delta}, {"n", r.family.n}};
  rep.parameters["scope"] = r.scope;
  rep.parameters["population"] = r.population;
  if (auto p = r.family.predicted()) rep.parameters["predicted"] = cat_spec(*p);
  if (r.population > 0) rep.parameters["max_rho"] = round_sig(r.max_rho);
  if (target == "nlem3") {
    rep.add(argmax_edge_census(r));
    return rep;
  }
  CheckReport c;
  c.name = target == "thm1" ? "caterpillar-argmax" : "argmax";
  c.tolerance = 1e-9 * r.max_rho;
  if (r.population == 0) {
    c.verdict = Verdict::kVacuous;
    c.detail = r.note;
  } else {
    c.verdict = r.verdict ? Verdict::kPass : Verdict::kFail;
    std::string which = r.verdict && rep.parameters.contains("predicted")
                            ? rep.parameters["predicted"].get<std::string>()
                            : std::to_string(r.argmax.size()) + " class(es): " + r.argmax.front();
    c.detail = "argmax " + which + (r.note.empty() ? "" : "; " + r.note);
  }
  rep.add(c);
  return rep;
}

std::vector<VerificationReport> run_extremal_targets(const std::string& target, const FamilyGrid& g) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Hypergraph>> pops;
  std::vector<VerificationReport> out;
  for (const auto& key : family_keys(g)) {
    auto& pop = pops[{key.m, key.k}];
    if (pop.empty()) pop = enumerate_hypertrees(key.m, key.k);
    ExtremalReport r = target == "thm1" ? verify_caterpillar_extremal(key, &pop) : verify_thm2(key, &pop);
    out.push_back(extremal_point(target, r));
  }
  return out;
}

std::vector<VerificationReport> run_delta_target(const GridFlags& f, const GapRule& rule) {
  std::vector<VerificationReport> out;
  std::size_t delta_hi = f.has("delta-hi") ? f.get("delta-hi", {}).back() : 5;
  for (std::size_t k : f.get("k", {2, 3})) {
    for (std::size_t m : f.get("m", {7, 8, 9, 10})) {
      std::vector<std::size_t> ns = f.get("n", {});
      if (!f.has("n")) {
        for (std::size_t n = 2; 2 * n <= m - 1; ++n) ns.push_back(n);
      }
      for (std::size_t n : ns) {
        DeltaReport d = delta_monotonicity(m, k, n, delta_hi, rule);
        VerificationReport rep;
        rep.target = "corollary-delta";
        rep.parameters = {{"k", k}, {"m", m}, {"n", n}, {"delta_hi", delta_hi}};
        json pts = json::array();
        for (const auto& p : d.points) {
          pts.push_back(p.feasible ? json{{"delta", p.delta}, {"rho", round_sig(p.rho)}}
                                   : json{{"delta", p.delta}, {"note", p.note}});
        }
        rep.parameters["points"] = pts;
        rep.add(d.check);
        out.push_back(rep);
      }
    }
  }
  return out;
}

// ---- explore -----------------------------------------------------------------

struct NamedRooted {
  std::string name;
  RootedHypergraph g;
};

std::vector<NamedRooted> explore_parts(std::size_t k) {
  RootedHypergraph star_branch = hyperstar(3, k);
  star_branch.root = 1;
  return {{"E", {loose_path(1, k).graph, 0}},
          {"P2", {loose_path(2, k).graph, 0}},
          {"SB2", star_branch},
          {"S2", hyperstar(2, k)}};
}

// Multisets of parts with 1..max_parts members, in lexicographic index order.
void multisets(std::size_t kinds, std::size_t max_parts, std::vector<std::size_t>& cur, std::size_t from,
               const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (!cur.empty()) fn(cur);
  if (cur.size() == max_parts) return;
  for (std::size_t i = from; i < kinds; ++i) {
    cur.push_back(i);
    multisets(kinds, max_parts, cur, i, fn);
    cur.pop_back();
  }
}

std::vector<json> explore_conjecture(const GridFlags& f, const GapRule& rule) {
  struct Item {
    std::size_t k, c, s, t;
    std::string core_name;
    RootedHypergraph core;
  };
  std::vector<Item> items;
  for (std::size_t k : f.get("k", {3})) {
    auto parts = explore_parts(k);
    for (std::size_t c : f.get("c", {2})) {
      if (c == 0) continue;
      std::vector<std::size_t> cur;
      multisets(parts.size(), c + 1, cur, 0, [&](const std::vector<std::size_t>& pick) {
        std::vector<RootedHypergraph> gs;
        std::string name;
        for (std::size_t i : pick) {
          gs.push_back(parts[i].g);
          name += (name.empty() ? "" : "+") + parts[i].name;
        }
        RootedHypergraph core = glue_at_root(gs);
        if (core.graph.edge_count() <= c || degree(core.graph, core.root) < c) return;
        for (std::size_t s : f.get("s", {2, 3, 4})) {
          for (std::size_t t : f.get("t", {2, 3, 4})) {
            if (s >= t && t >= 2) items.push_back({k, c, s, t, name, core});
          }
        }
      });
    }
  }
  std::vector<json> log(items.size());
  parallel_for(items.size(), [&](std::size_t i) {
    const Item& it = items[i];
    GcParams p{it.k, it.s, it.t, it.c, it.core};
    GcParams q = p;
    ++q.s;
    --q.t;
    double before = perron(g_c(p).graph).rho, after = perron(g_c(q).graph).rho;
    json j{{"k", it.k}, {"c", it.c}, {"s", it.s}, {"t", it.t}, {"core", it.core_name}};
    j["rho_before"] = round_sig(before);
    j["rho_after"] = round_sig(after);
    j["sign"] = std::string(to_string(rule.classify(after - before, before)));
    try {
      GcCase which = classify_gc(p);
      GraftOutcome o = gc_shift(p);
      j["proven_case"] = std::string(to_string(which));
      j["cross_check"] = std::abs(o.gap() - (after - before)) <= 1e-9 * before ? "agrees" : "disagrees";
    } catch (const DomainError&) {
      j["proven_case"] = nullptr;
    }
    log[i] = j;
  });
  return log;
}

std::vector<json> explore_question1(const GridFlags& f, const GapRule& rule) {
  struct Item {
    std::string host_name;
    Hypergraph host;
    Vertex u, v;
    std::size_t p, q, k;
    std::string gr_name;
    RootedHypergraph gr;
  };
  std::vector<Item> items;
  for (std::size_t k : f.get("k", {3})) {
    std::vector<std::pair<std::string, Hypergraph>> hosts{
        {"path:1," + std::to_string(k), loose_path(1, k).graph},
        {"path:2," + std::to_string(k), loose_path(2, k).graph},
        {"star:2," + std::to_string(k), hyperstar(2, k).graph}};
    std::vector<NamedRooted> grs{{"K1", trivial_rooted()}, {"S1", hyperstar(1, k)}, {"S2", hyperstar(2, k)}};
    for (const auto& [hn, h] : hosts) {
      for (Vertex u = 0; u < h.vertex_count(); ++u) {
        for (Vertex v = u + 1; v < h.vertex_count(); ++v) {
          for (const auto& gr : grs) {
            for (std::size_t p : f.get("s", {1, 2, 3})) {
              for (std::size_t q : f.get("t", {1, 2, 3})) {
                if (p >= q && q >= 1) items.push_back({hn, h, u, v, p, q, k, gr.name, gr.g});
              }
            }
          }
        }
      }
    }
  }
  std::vector<json> log(items.size());
  parallel_for(items.size(), [&](std::size_t i) {
    const Item& it = items[i];
    double a = perron(attach_two_paths(it.host, it.u, it.v, it.p, it.q, it.gr, it.k)).rho;
    double b = perron(attach_two_paths(it.host, it.u, it.v, it.p + 1, it.q - 1, it.gr, it.k)).rho;
    log[i] = json{{"host", it.host_name}, {"u", it.u},   {"v", it.v},
                  {"p", it.p},            {"q", it.q},   {"g_r", it.gr_name},
                  {"rho_pq", round_sig(a)}, {"rho_shifted", round_sig(b)},
                  {"sign", std::string(to_string(rule.classify(a - b, a)))}};
  });
  return log;
}

// ---- reproduce-paper ---------------------------------------------------------

struct ReferenceRow {
  std::string example, graph;
  double computed, published;
  bool ok;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance spectral radius of uniform hypertrees: construction, spectra and verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "Perron tolerance")->capture_default_str();
    sub->add_option("--gap", common.gap, "relative strict-gap threshold")->capture_default_str();
    sub->add_option("--out", common.out_path, "write JSON here instead of stdout");
    sub->add_option("--csv", common.csv_path, "write a CSV summary here");
    sub->add_option("--manifest", common.manifest_path, "write a run manifest here");
  };

  std::string spec;
  auto* construct = app.add_subcommand("construct", "build a family member and print its canonical JSON");
  construct->add_option("spec", spec, "star:m,k | path:m,k | cat:k,mstar,delta,a,b | gc:k,s,t,c,core=<file>")
      ->required();
  add_common(construct);

  std::string in_path, rho_spec;
  bool dump_vector = false;
  auto* rho = app.add_subcommand("rho", "distance spectral radius of a hypergraph file");
  rho->add_option("input", in_path, "hypergraph file (JSON or plain text)");
  rho->add_option("--family", rho_spec, "build the graph from a family spec instead");
  rho->add_flag("--vector", dump_vector, "include the Perron vector");
  add_common(rho);

  std::string target;
  bool nonuniform = false;
  GridFlags vflags;
  auto* verify = app.add_subcommand("verify", "run a verifier over a parameter grid");
  verify->add_option("target", target, "graft1 graft2 alem lem5 lem6 lem7 nlem1 ncor1 ncor2 fact1 fact2 fact3 "
                                       "nlem3 thm1 thm2 corollary-delta eigen-identities")
      ->required();
  vflags.bind(verify, {"k", "m", "mstar", "delta", "n", "a", "b", "s", "t", "c", "delta-hi"});
  verify->add_option("--config", vflags.config, "sweep grid file (key = values per line)");
  verify->add_flag("--nonuniform-counterexample", nonuniform, "graft2: run the non-uniform counterexample");
  add_common(verify);

  GridFlags eflags;
  auto* enumerate = app.add_subcommand("enumerate", "k-uniform hypertrees with m edges up to isomorphism");
  eflags.bind(enumerate, {"m", "k"});
  bool codes_only = false;
  enumerate->add_flag("--codes-only", codes_only, "omit the graphs");
  add_common(enumerate);

  GridFlags xflags;
  bool caterpillars_only = false;
  auto* extremal = app.add_subcommand("extremal", "brute-force argmax of rho over T_k(m, delta, n)");
  xflags.bind(extremal, {"k", "m", "delta", "n"});
  extremal->add_flag("--caterpillars", caterpillars_only, "restrict to caterpillars");
  add_common(extremal);

  auto* reproduce = app.add_subcommand("reproduce-paper", "recompute the published example values");
  add_common(reproduce);

  std::string question;
  GridFlags oflags;
  auto* explore = app.add_subcommand("explore", "log evidence for the open G_c claim or the two-path question");
  explore->add_option("question", question, "conjecture | question1")->required();
  oflags.bind(explore, {"k", "c", "s", "t"});
  add_common(explore);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  Outputs sink{out, common, {}};
  GapRule rule;
  rule.gap = common.gap;
  PerronOptions popts{common.tol, PerronOptions{}.max_iter};
  json params = json::object();
  std::string command;
  int code = 0;

  try {
    if (*construct) {
      command = "construct";
      params["spec"] = spec;
      FamilySpec f = parse_family_spec(spec);
      sink.emit(to_json(f.graph) + "\n");
    } else if (*rho) {
      command = "rho";
      if (in_path.empty() == rho_spec.empty()) throw UsageError("rho needs exactly one of <input> or --family");
      Hypergraph g = rho_spec.empty() ? read_hypergraph(in_path) : parse_family_spec(rho_spec).graph;
      params["input"] = rho_spec.empty() ? in_path : rho_spec;
      SpectralResult r = perron(g, popts);
      json j{{"vertex_count", g.vertex_count()},
             {"edge_count", g.edge_count()},
             {"rho", round_sig(r.rho)},
             {"residual", round_sig(r.residual)},
             {"iterations", r.iterations}};
      if (dump_vector) {
        json x = json::array();
        for (double v : r.x) x.push_back(round_sig(v));
        j["x"] = x;
      }
      sink.emit(j.dump() + "\n");
    } else if (*verify) {
      command = "verify";
      params["target"] = target;
      for (const auto& [key, v] : vflags.values) params[key] = v;
      std::vector<VerificationReport> reports;
      const auto sweeps = sweep_targets();
      if (target == "graft2" && nonuniform) {
        params["nonuniform_counterexample"] = true;
        GraftOutcome o = nonuniform_two_vertex_counterexample();
        reports.push_back(outcome_report("graft2", o, rule));
        reports.back().parameters["example"] = "nonuniform-two-path";
      } else if (nonuniform) {
        throw UsageError("--nonuniform-counterexample only applies to graft2");
      } else if (std::find(sweeps.begin(), sweeps.end(), target) != sweeps.end()) {
        SweepGrid grid = default_grid(target);
        if (!vflags.config.empty()) {
          std::ifstream cf(vflags.config);
          if (!cf) throw UsageError("cannot read config " + vflags.config);
          std::stringstream buf;
          buf << cf.rdbuf();
          grid = parse_grid(buf.str(), grid);
          params["config"] = vflags.config;
        }
        grid.k = vflags.get("k", grid.k);
        grid.m_star = vflags.get("mstar", grid.m_star);
        grid.delta = vflags.get("delta", grid.delta);
        grid.a = vflags.get("a", grid.a);
        grid.b = vflags.get("b", grid.b);
        grid.n = vflags.get("n", grid.n);
        grid.s = vflags.get("s", grid.s);
        grid.t = vflags.get("t", grid.t);
        grid.c = vflags.get("c", grid.c);
        SweepOptions so;
        so.rule = rule;
        so.perron = popts;
        reports = run_sweep(target, grid, so);
      } else if (target == "thm1" || target == "thm2" || target == "nlem3") {
        FamilyGrid g{vflags.get("k", {2, 3}), vflags.get("m", {}), vflags.get("delta", {3}), vflags.get("n", {}),
                     vflags.has("n")};
        reports = run_extremal_targets(target, g);
      } else if (target == "corollary-delta") {
        reports = run_delta_target(vflags, rule);
      } else {
        throw UsageError("unknown verify target '" + target + "'");
      }
      Tally tally;
      std::vector<json> js;
      for (const auto& r : reports) {
        tally.add(r.overall());
        js.push_back(to_json(r));
      }
      sink.emit(lines(js));
      sink.csv(report_csv(reports));
      err << target << ": " << reports.size() << " points, " << tally.pass << " pass, " << tally.fail << " fail, "
          << tally.vacuous << " vacuous\n";
      code = tally.fail > 0 ? 1 : 0;
    } else if (*enumerate) {
      command = "enumerate";
      std::vector<json> js;
      for (std::size_t k : eflags.get("k", {3})) {
        for (std::size_t m : eflags.get("m", {4})) {
          auto pop = enumerate_hypertrees(m, k);
          json j{{"m", m}, {"k", k}, {"count", pop.size()}};
          json classes = json::array();
          for (const auto& g : pop) {
            json c{{"code", canonical_code(g).hex()}};
            if (!codes_only) c["graph"] = json::parse(to_json(g));
            classes.push_back(c);
          }
          j["classes"] = classes;
          js.push_back(j);
        }
      }
      params["k"] = eflags.values.count("k") ? eflags.values.at("k") : "3";
      params["m"] = eflags.values.count("m") ? eflags.values.at("m") : "4";
      sink.emit(lines(js));
    } else if (*extremal) {
      command = "extremal";
      for (const auto& [key, v] : xflags.values) params[key] = v;
      params["caterpillars"] = caterpillars_only;
      FamilyGrid g{xflags.get("k", {3}), xflags.get("m", {8}), xflags.get("delta", {3}), xflags.get("n", {}),
                   xflags.has("n")};
      std::map<std::pair<std::size_t, std::size_t>, std::vector<Hypergraph>> pops;
      std::vector<ExtremalReport> reports;
      std::vector<json> js;
      for (const auto& key : family_keys(g)) {
        auto& pop = pops[{key.m, key.k}];
        if (pop.empty()) pop = enumerate_hypertrees(key.m, key.k);
        reports.push_back(caterpillars_only ? verify_caterpillar_extremal(key, &pop) : verify_thm2(key, &pop));
        js.push_back(to_json(reports.back()));
      }
      sink.emit(lines(js));
      sink.csv(extremal_csv(reports));
    } else if (*reproduce) {
      command = "reproduce-paper";
      constexpr double kTol = 0.01;
      std::vector<ReferenceRow> rows;
      PublishedExample b = vertex_transfer_example();
      double b0 = perron(b.before, popts).rho, b1 = perron(b.after, popts).rho;
      rows.push_back({"B", "C_3(5,3,1,2)", b0, b.published_before, std::abs(b0 - b.published_before) <= kTol});
      rows.push_back({"B", "vertex-transfer", b1, b.published_after, std::abs(b1 - b.published_after) <= kTol});
      PublishedExample a = nonuniform_path_example();
      double a0 = perron(a.before, popts).rho, a1 = perron(a.after, popts).rho;
      bool direct = std::abs(a0 - a.published_before) <= kTol && std::abs(a1 - a.published_after) <= kTol;
      bool swapped = std::abs(a0 - a.published_after) <= kTol && std::abs(a1 - a.published_before) <= kTol;
      double pa0 = swapped && !direct ? a.published_after : a.published_before;
      double pa1 = swapped && !direct ? a.published_before : a.published_after;
      rows.push_back({"A", "two paths glued", a0, pa0, direct || swapped});
      rows.push_back({"A", "e_1 moved to u_5", a1, pa1, direct || swapped});

      json j{{"tolerance", kTol}};
      json rs = json::array();
      std::ostringstream table;
      table << "example  graph              computed       published  status\n";
      for (const auto& r : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%-8s %-18s %-14.6f %-10.2f %s\n", r.example.c_str(), r.graph.c_str(),
                      r.computed, r.published, r.ok ? "ok" : "MISMATCH");
        table << line;
        rs.push_back({{"example", r.example},
                      {"graph", r.graph},
                      {"computed", round_sig(r.computed)},
                      {"published", r.published},
                      {"match", r.ok}});
        if (!r.ok) code = 1;
      }
      j["rows"] = rs;
      j["example_a_matching"] = direct ? "ordered" : swapped ? "unordered (labels swapped)" : "none";
      j["example_a_direction"] = a1 < a0 ? "decrease: the two-vertex shift fails for non-uniform hosts"
                                         : "no decrease observed";
      j["example_b_direction"] = b1 > b0 ? "increase: the caterpillar is not extremal among non-uniform trees"
                                         : "no increase observed";
      table << "example A matched as an " << (direct ? "ordered" : "unordered") << " pair; rho "
            << (a1 < a0 ? "drops" : "does not drop") << " after the move\n";
      if (common.out_path.empty()) {
        out << table.str();
      } else {
        sink.emit(j.dump(2) + "\n");
        out << table.str();
      }
      sink.csv([&] {
        std::ostringstream c;
        c << "example,graph,computed,published,match\n";
        for (const auto& r : rows) {
          c << r.example << ',' << r.graph << ',' << fmt12(r.computed) << ',' << r.published << ','
            << (r.ok ? "true" : "false") << '\n';
        }
        return c.str();
      }());
    } else if (*explore) {
      command = "explore";
      params["question"] = question;
      for (const auto& [key, v] : oflags.values) params[key] = v;
      std::vector<json> log;
      if (question == "conjecture") {
        log = explore_conjecture(oflags, rule);
      } else if (question == "question1") {
        log = explore_question1(oflags, rule);
      } else {
        throw UsageError("explore expects 'conjecture' or 'question1'");
      }
      sink.emit(lines(log));
      std::map<std::string, std::size_t> signs;
      for (const auto& j : log) signs[j["sign"].get<std::string>()]++;
      err << question << ": " << log.size() << " instances";
      for (const auto& [s, n] : signs) err << ", " << n << " " << s;
      err << "\n";
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (!common.manifest_path.empty()) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    json m{{"command", command},
           {"parameters", params},
           {"tool_version", kVersion},
           {"tolerance", {{"perron_tol", common.tol}, {"gap", common.gap}, {"zero_band", rule.zero_band}}},
           {"wall_clock_seconds", std::round(secs * 1000.0) / 1000.0},
           {"outputs", sink.written},
           {"exit_code", code}};
    std::ofstream f(common.manifest_path);
    if (!f) {
      err << "error: cannot write " << common.manifest_path << "\n";
      return 2;
    }
    f << m.dump(2) << "\n";
  }
  return code;
}

}  // namespace hyperdist::cli
