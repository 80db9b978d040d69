#include "relalg/witness.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "relalg/error.hpp"

namespace relalg {

namespace {

constexpr std::uint32_t kNoPoint = std::numeric_limits<std::uint32_t>::max();

std::string edge_str(const Edge& e) { return to_string(e); }

bool is_black(const Form& f) { return !f.is_white(); }

// Out-neighbours of a node, read off the ordered edge map.
std::vector<std::uint32_t> successors(const LabeledGraph& g, std::uint32_t a) {
  std::vector<std::uint32_t> out;
  for (auto it = g.edges.lower_bound({a, 0}); it != g.edges.end() && it->first.r == a; ++it)
    out.push_back(it->first.s);
  return out;
}

struct NewEdge {
  Edge edge;
  std::uint32_t depth;
};

}  // namespace

const EdgeInfo& LabeledGraph::at(const Edge& e) const {
  auto it = edges.find(e);
  if (it == edges.end()) throw InputError("edge " + to_string(e) + " is not in the graph");
  return it->second;
}

Model LabeledGraph::as_model() const {
  Model model;
  model.base = node_count();
  model.unit = Relation(model.base);
  model.valuation.assign(sig.m, Relation(model.base));
  for (const auto& [e, info] : edges) {
    model.unit.insert(e);
    for (std::uint32_t i = 0; i < sig.m; ++i)
      if (info.label.color() & var_bit(i)) model.valuation[i].insert(e);
  }
  return model;
}

Form seed_tau(const PointedModel& pm, std::uint32_t q) {
  if (q == 0) throw InputError("q must be at least 1");
  if (!pm.model.unit.contains(pm.edge)) throw InputError("seed edge " + to_string(pm.edge) + " is not in the unit");
  if (!eval(builtin("t"), pm.model).contains(pm.edge))
    throw InputError("seed edge " + to_string(pm.edge) + " does not satisfy t");
  Form tau = form_of_edge(pm, q);
  if (!conv_f(tau)) throw InputError("the seed form has no converse entry");
  return tau;
}

LabeledGraph build_round0(const PointedModel& pm, std::uint32_t q, const Signature& sig) {
  const auto report = validate_model(pm.model, sig);
  if (!report.ok()) throw InputError("seed is not an " + sig.h_string() + "-model: " + report.violations.front());
  if (pm.model.arity() < sig.m) throw InputError("seed valuation is shorter than m");
  const Form tau = seed_tau(pm, q);

  LabeledGraph g;
  g.sig = sig;
  g.q = q;
  g.seed = pm.model;
  g.seed.valuation.resize(sig.m);
  const auto r = pm.edge.r;
  const auto s = pm.edge.s;
  g.node_point = {r, s};
  g.node_depth = {q, q - 1};

  EdgeLabeler seed(g.seed);
  auto add = [&](Edge e, Edge anchor, std::uint32_t depth) {
    g.edges[e] = EdgeInfo{seed.form(anchor, depth), depth, anchor, true, 0};
  };
  add({0, 1}, {r, s}, q);
  add({1, 0}, {s, r}, q - 1);
  if (g.at({1, 0}).label != *conv_f(tau)) throw PropertyViolation("round0", "reverse label differs from f(tau)");
  if (left_L(tau)) {
    // The loop at u is labelled by the seed loop at r; a label at (r,s) would be black.
    add({0, 0}, {r, r}, q);
  }
  if (auto rv = right_R(tau)) {
    add({1, 1}, {s, s}, q - 1);
    if (g.at({1, 1}).label != *rv) throw PropertyViolation("round0", "loop at v differs from R(tau)");
  }
  return g;
}

void expand(LabeledGraph& g, std::uint32_t rounds, const GraphBudget& budget) {
  EdgeLabeler seed(g.seed);
  const bool S = g.sig.symmetric;
  const bool R = g.sig.reflexive;
  for (std::uint32_t step = 0; step < rounds; ++step) {
    const std::uint32_t round = g.rounds + 1;
    std::vector<Edge> work;
    for (const auto& [e, info] : g.edges)
      if (info.round == g.rounds && info.depth >= 1 && info.anchored) work.push_back(e);

    std::map<Edge, EdgeInfo> added;
    for (const auto& e : work) {
      const auto a = e.r;
      const auto b = e.s;
      const auto& info = g.at(e);
      const std::uint32_t k = info.depth;
      const bool in_y = !g.has(e.reversed()) || info.depth >= g.depth(e.reversed());
      const auto r = g.node_point[a];
      const auto s = g.node_point[b];

      for (const auto& [s1, s2] : info.label.sub()) {
        if (!is_black(s1) || !is_black(s2)) continue;
        const bool f1 = conv_f(s1).has_value();
        const bool f2 = conv_f(s2).has_value();
        if (!in_y && f1 && f2) continue;

        std::uint32_t p = kNoPoint;
        for (std::uint32_t x = 0; x < g.seed.base && p == kNoPoint; ++x) {
          if (x == r || x == s || !g.seed.unit.contains(r, x) || !g.seed.unit.contains(x, s)) continue;
          if (seed.form({r, x}, k - 1) == s1 && seed.form({x, s}, k - 1) == s2) p = x;
        }
        if (p == kNoPoint)
          throw PropertyViolation("expand", "no decomposition witness in the seed for " + edge_str(e));

        const std::uint32_t w = g.node_count();
        if (w + 1 > budget.max_nodes) throw BudgetExceeded("graph nodes", w + 1, budget.max_nodes);
        g.node_point.push_back(p);
        g.middles[e].push_back(w);

        std::vector<NewEdge> out;
        std::uint32_t loop_depth = k >= 2 ? k - 2 : 0;
        const std::uint32_t da = g.node_depth[a];
        const std::uint32_t db = g.node_depth[b];
        const bool case1 = g.has(e.reversed()) && g.depth(e.reversed()) + 1 == k;
        const auto r1 = right_R(s1);
        // With a reverse edge of depth k+1, the edge closing the triangle through w
        // is kept at depth k; at k-1 it would break condition (4) for (b,a).
        const bool deep_reverse = g.has(e.reversed()) && g.depth(e.reversed()) == k + 1;
        auto add_loop_short = [&] {
          if (r1 || R) out.push_back({{w, w}, r1 ? k - 2 : 0});
        };

        if (case1) {
          out.push_back({{a, w}, k - 1});
          out.push_back({{w, b}, k - 1});
          if (da == k && db + 1 == k) {
            if (f1 || S) out.push_back({{w, a}, k - 1});
            if (f2 || S) out.push_back({{b, w}, f2 ? k - 2 : 0});
          } else if (da + 1 == k && db == k) {
            if (f2 || S) out.push_back({{b, w}, k - 1});
            if (f1 || S) out.push_back({{w, a}, f1 ? k - 2 : 0});
          } else {
            throw PropertyViolation("expand", "loop depths around " + edge_str(e) + " break condition (5)");
          }
          add_loop_short();
        } else if (da != k + 1 && db != k + 1) {
          out.push_back({{a, w}, k - 1});
          out.push_back({{w, b}, k - 1});
          if (f1 || S) out.push_back({{w, a}, k - 1});
          if (f2 || S) out.push_back({{b, w}, k - 1});
          add_loop_short();
        } else if (da == k + 1) {
          const Form rho = seed.form({r, p}, k);
          out.push_back({{a, w}, k});
          out.push_back({{w, b}, k - 1});
          if (conv_f(rho)) out.push_back({{w, a}, k});
          if (f2 || S) out.push_back({{b, w}, deep_reverse ? k : k - 1});
          if (right_R(rho)) out.push_back({{w, w}, k - 1});
          loop_depth = k - 1;
        } else {
          const Form rho = seed.form({p, s}, k);
          out.push_back({{a, w}, k - 1});
          out.push_back({{w, b}, k});
          if (conv_f(rho)) out.push_back({{b, w}, k});
          if (f1 || S) out.push_back({{w, a}, deep_reverse ? k : k - 1});
          if (left_L(rho)) out.push_back({{w, w}, k - 1});
          loop_depth = k - 1;
        }
        g.node_depth.push_back(loop_depth);

        for (const auto& ne : out) {
          const Edge anchor{g.node_point[ne.edge.r], g.node_point[ne.edge.s]};
          added[ne.edge] = EdgeInfo{seed.form(anchor, ne.depth), ne.depth, anchor, true, round};
        }
        if (g.edges.size() + added.size() > budget.max_edges)
          throw BudgetExceeded("graph edges", g.edges.size() + added.size(), budget.max_edges);
      }
    }
    g.edges.merge(added);
    g.rounds = round;
  }
}

ConsistencyReport check_consistency(const LabeledGraph& g) {
  ConsistencyReport report;
  auto flag = [&](int cond, const std::string& what) {
    report.violations.push_back("(" + std::to_string(cond) + ") " + what);
  };
  auto in_range = [](std::uint32_t x, std::uint32_t k) { return x + 1 >= k && x <= k + 1; };
  const bool S = g.sig.symmetric;
  const bool R = g.sig.reflexive;
  EdgeLabeler seed(g.seed);

  for (const auto& [e, info] : g.edges) {
    const auto u = e.r;
    const auto v = e.s;
    if (u >= g.node_count() || v >= g.node_count()) {
      flag(0, edge_str(e) + " has an endpoint outside the node set");
      continue;
    }
    if (info.round > g.rounds) flag(0, edge_str(e) + " is newer than the graph");
    if (S && !g.has(e.reversed())) flag(0, edge_str(e) + " has no reverse");
    if (R && (!g.has({u, u}) || !g.has({v, v}))) flag(0, edge_str(e) + " misses an endpoint loop");

    const auto k = info.depth;
    if (info.label.degree() != k) flag(1, edge_str(e) + " label degree differs from its depth");
    if (info.label.is_white() != e.is_loop()) flag(1, edge_str(e) + " label color does not match loopness");

    const bool has_rev = g.has(e.reversed());
    const auto du = g.node_depth[u];
    const auto dv = g.node_depth[v];
    if (has_rev && !in_range(g.depth(e.reversed()), k)) flag(2, edge_str(e) + " and its reverse");
    if (!in_range(du, k) || !in_range(dv, k)) flag(3, edge_str(e) + " and its endpoint depths");
    for (auto w : successors(g, u)) {
      if (!g.has({w, v})) continue;
      if (!in_range(g.depth({u, w}), k) || !in_range(g.depth({w, v}), k))
        flag(4, edge_str(e) + " through node " + std::to_string(w));
    }
    if (k >= 1 && has_rev && g.depth(e.reversed()) + 1 == k) {
      if (!((du == k && dv + 1 == k) || (du + 1 == k && dv == k))) flag(5, edge_str(e));
    }
    if (!has_rev || g.depth(e.reversed()) == k) {
      if (du == k + 1 && dv == k + 1) flag(6, edge_str(e));
    }

    // (7) and (8) hold in the seed model at the anchors: every label is the
    // seed form of its anchor, and every missing converse or loop is missing
    // in the seed too unless the label is too coarse to tell.
    if (!info.anchored) continue;
    const Edge anchor{g.node_point[u], g.node_point[v]};
    if (info.anchor != anchor || !g.seed.unit.contains(anchor) || seed.form(anchor, k) != info.label) {
      flag(7, edge_str(e) + " label is not realised at its anchor");
      continue;
    }
    if (e.is_loop()) continue;
    if (!has_rev && k >= 1 && g.seed.unit.contains(anchor.reversed()))
      flag(8, edge_str(e) + " has no reverse but its anchor has");
    if (!g.has({u, u}) && k >= 1 && g.seed.unit.contains(anchor.r, anchor.r))
      flag(8, edge_str(e) + " has no loop at its source but its anchor has");
    if (!g.has({v, v}) && k >= 1 && g.seed.unit.contains(anchor.s, anchor.s))
      flag(8, edge_str(e) + " has no loop at its target but its anchor has");
  }
  return report;
}

std::vector<Edge> satisfaction_failures(const LabeledGraph& g, std::uint32_t settled_rounds) {
  const Model model = g.as_model();
  EdgeLabeler labeler(model);
  std::vector<Edge> out;
  std::vector<std::uint32_t> newest(g.node_count(), 0);
  for (const auto& [e, info] : g.edges) {
    newest[e.r] = std::max(newest[e.r], info.round);
    newest[e.s] = std::max(newest[e.s], info.round);
  }
  for (const auto& [e, info] : g.edges) {
    if (std::max(newest[e.r], newest[e.s]) + settled_rounds > g.rounds) continue;
    if (labeler.form(e, info.depth) != info.label) out.push_back(e);
  }
  return out;
}

namespace {

// Nodes w other than a,b with (a,w),(w,b),(w,a),(b,w) all present at depth >= d(a,b).
std::vector<std::uint32_t> four_way_nodes(const LabeledGraph& g, const Edge& e) {
  const auto k = g.depth(e);
  std::vector<std::uint32_t> out;
  for (auto w : successors(g, e.r)) {
    if (w == e.r || w == e.s) continue;
    const Edge four[] = {{e.r, w}, {w, e.s}, {w, e.r}, {e.s, w}};
    if (std::all_of(std::begin(four), std::end(four), [&](const Edge& x) { return g.has(x) && g.depth(x) >= k; }))
      out.push_back(w);
  }
  return out;
}

std::optional<Edge> top_edge(const LabeledGraph& g) {
  std::optional<Edge> found;
  for (const auto& [e, info] : g.edges) {
    if (e.is_loop() || info.depth != g.q) continue;
    if (found) return std::nullopt;
    found = e;
  }
  return found;
}

}  // namespace

bool is_useful(const LabeledGraph& g, const Edge& e) {
  if (!g.has(e) || !g.has(e.reversed()) || g.depth(e.reversed()) >= g.depth(e)) return false;
  if (!e.is_loop() && g.depth(e) == g.q && top_edge(g) == e) return true;
  return four_way_nodes(g, e).size() == 1;
}

bool is_side(const LabeledGraph& g, const Edge& e) {
  if (!g.has(e) || g.depth(e) != 0) return false;
  if (g.has(e.reversed()) != g.sig.symmetric) return false;
  if ((g.has({e.r, e.r}) && g.has({e.s, e.s})) != g.sig.reflexive) return false;
  return g.node_depth[e.r] == 0 && g.node_depth[e.s] == 0;
}

Zigzag select_zigzag(const LabeledGraph& g) {
  const auto top = top_edge(g);
  if (!top) throw PropertyViolation("zigzag", "no unique non-loop edge of depth q");

  Zigzag z;
  // Depth-first descent; candidates in middle order, (a,w) before (w,b).
  std::function<bool(const Edge&, std::uint32_t)> descend = [&](const Edge& e, std::uint32_t k) {
    z.edges.push_back(e);
    if (k == 0) return true;
    auto it = g.middles.find(e);
    if (it != g.middles.end()) {
      for (auto w : it->second) {
        for (const Edge c : {Edge{e.r, w}, Edge{w, e.s}}) {
          if (!g.has(c) || g.depth(c) != k - 1) continue;
          if (!(k - 1 >= 1 ? is_useful(g, c) : is_side(g, c))) continue;
          z.middles.push_back(w);
          if (descend(c, k - 1)) return true;
          z.middles.pop_back();
        }
      }
    }
    z.edges.pop_back();
    return false;
  };
  if (!descend(*top, g.q)) throw PropertyViolation("zigzag", "no descent of useful edges to a side edge");

  // No other node may decompose e_k with labels compatible with those through w_k,
  // except the node that makes e_k useful.
  for (std::size_t i = 0; i < z.middles.size(); ++i) {
    const Edge e = z.edges[i];
    const auto w = z.middles[i];
    const auto four = four_way_nodes(g, e);
    for (auto y : successors(g, e.r)) {
      if (y == w || y == e.r || y == e.s || !g.has({y, e.s})) continue;
      if (!compatible(g.at({e.r, y}).label, g.at({e.r, w}).label)) continue;
      if (!compatible(g.at({y, e.s}).label, g.at({w, e.s}).label)) continue;
      if (four.size() == 1 && four.front() == y) continue;
      z.uniqueness_violations.push_back("node " + std::to_string(y) + " also decomposes " + edge_str(e));
    }
  }
  return z;
}

LabeledGraph extend_plus(const LabeledGraph& g, const Zigzag& z, Extension* out) {
  if (g.sig.atomic_case()) throw InputError("atomic case: m = 0 and H = {R,S} has no witness");
  if (z.edges.empty()) throw InputError("empty zigzag");
  LabeledGraph gp = g;
  Extension ext;
  const Edge e0 = z.edges.back();
  const auto u0 = e0.r;
  const auto v0 = e0.s;
  auto add = [&](Edge e, Color color) {
    const Form f = Form::color_form(color);
    gp.edges[e] = EdgeInfo{f, 0, {}, false, g.rounds};
    ext.added.emplace_back(e, f);
  };

  if (g.sig.m >= 1) {
    ext.kind = "fresh_node";
    const std::uint32_t h = gp.node_count();
    gp.node_point.push_back(kNoPoint);
    gp.node_depth.push_back(0);
    std::set<Color> left_colors, right_colors;
    for (auto z1 : successors(g, u0)) {
      if (z1 == u0 || z1 == v0 || !g.has({z1, v0})) continue;
      left_colors.insert(g.at({u0, z1}).label.color());
      right_colors.insert(g.at({z1, v0}).label.color());
    }
    // Black degree-0 colors avoiding those seen on paths u0 -> z -> v0.
    auto pick = [&](const std::set<Color>& avoid) -> Color {
      if (avoid.empty()) return 0;
      for (Color c = 0; c < color_count(g.sig.m); ++c)
        if (!(c & kWhite) && !avoid.count(c)) return c;
      for (Color c = 0; c < color_count(g.sig.m); ++c)
        if (!(c & kWhite) && c != *avoid.begin()) return c;
      return 0;
    };
    add({u0, h}, pick(left_colors));
    add({h, v0}, pick(right_colors));
    if (g.sig.symmetric) {
      add({h, u0}, 0);
      add({v0, h}, 0);
    }
    if (g.sig.reflexive) add({h, h}, kWhite);
  } else if (!g.sig.symmetric) {
    ext.kind = "converse_edge";
    add(e0.reversed(), 0);
  } else {
    ext.kind = "loop";
    if (z.middles.empty()) throw InputError("zigzag has no middle node");
    const auto w1 = z.middles.back();
    add({w1, w1}, kWhite);
  }
  if (out) *out = std::move(ext);
  return gp;
}

std::vector<SonDaughter> son_daughter(const LabeledGraph& g, const LabeledGraph& g_plus, const Zigzag& z) {
  const Model mg = g.as_model();
  const Model mp = g_plus.as_model();
  EdgeLabeler lg(mg);
  EdgeLabeler lp(mp);
  std::vector<SonDaughter> out;
  for (std::uint32_t j = 0; j <= g.q; ++j) {
    const Edge e = z.edges[g.q - j];
    out.push_back({lg.form(e, j + 1), lp.form(e, j + 1)});
  }
  return out;
}

PointedModel default_seed(const Signature& sig) {
  Model model = Model::full(3, sig.m);
  if (!sig.reflexive)
    for (std::uint32_t x = 0; x < 3; ++x) model.unit.erase({x, x});
  return {model, {0, 1}};
}

namespace {

nlohmann::json edge_json(const Edge& e) { return nlohmann::json::array({e.r, e.s}); }

nlohmann::json make_certificate(const PointedModel& pm, const Signature& sig, const WitnessRun& run,
                                std::uint32_t stability_round) {
  const auto& g = run.graph;
  FormTableWriter forms;
  nlohmann::json cert;
  cert["signature"] = {{"m", sig.m}, {"H", sig.h_string()}};
  cert["q"] = g.q;
  cert["seed"] = {{"model", model_to_json(pm.model)}, {"edge", edge_json(pm.edge)}};
  cert["tau"] = forms.add(g.at(run.zigzag.edges.front()).label);
  cert["graph"] = {{"rounds", g.rounds},
                   {"nodes", g.node_count()},
                   {"edges", g.edges.size()},
                   {"extended_nodes", run.extended.node_count()},
                   {"extended_edges", run.extended.edges.size()}};
  auto added = nlohmann::json::array();
  for (const auto& [e, f] : run.extension.added) added.push_back({{"edge", edge_json(e)}, {"label", forms.add(f)}});
  cert["extension"] = {{"kind", run.extension.kind}, {"edges", added}};
  auto zig = nlohmann::json::array();
  for (std::size_t i = 0; i < run.zigzag.edges.size(); ++i) {
    const Edge e = run.zigzag.edges[i];
    nlohmann::json step = {{"j", g.q - i}, {"edge", edge_json(e)}, {"depth", g.depth(e)}, {"label", forms.add(g.at(e).label)}};
    step["middle"] = i < run.zigzag.middles.size() ? nlohmann::json(run.zigzag.middles[i]) : nlohmann::json(nullptr);
    zig.push_back(step);
  }
  cert["zigzag"] = zig;
  cert["uniqueness_violations"] = run.zigzag.uniqueness_violations;
  auto pairs = nlohmann::json::array();
  for (std::size_t j = 0; j < run.pairs.size(); ++j)
    pairs.push_back({{"j", j}, {"son", forms.add(run.pairs[j].son)}, {"daughter", forms.add(run.pairs[j].daughter)}});
  cert["pairs"] = pairs;
  cert["stability_round"] = stability_round;
  cert["forms"] = forms.table();
  return cert;
}

}  // namespace

WitnessRun run_witness(const PointedModel& pm, std::uint32_t q, const Signature& sig, const WitnessOptions& opts) {
  if (sig.atomic_case()) throw InputError("atomic case: m = 0 and H = {R,S} has no witness");
  const std::uint32_t rounds = opts.rounds ? opts.rounds : q + 3;

  WitnessRun run;
  run.graph = build_round0(pm, q, sig);
  auto consistent = [](const LabeledGraph& g, const std::string& when) {
    const auto report = check_consistency(g);
    if (!report.ok()) throw PropertyViolation("consistency", when + ": " + report.violations.front());
  };
  consistent(run.graph, "round 0");
  expand(run.graph, rounds, opts.budget);
  consistent(run.graph, "round " + std::to_string(rounds));

  run.zigzag = select_zigzag(run.graph);
  run.extended = extend_plus(run.graph, run.zigzag, &run.extension);
  run.pairs = son_daughter(run.graph, run.extended, run.zigzag);

  // One more round must not change any son or daughter.
  LabeledGraph next = run.graph;
  expand(next, 1, opts.budget);
  consistent(next, "round " + std::to_string(rounds + 1));
  const LabeledGraph next_plus = extend_plus(next, run.zigzag);
  const auto next_pairs = son_daughter(next, next_plus, run.zigzag);
  for (std::uint32_t j = 0; j <= q; ++j) {
    if (next_pairs[j].son != run.pairs[j].son || next_pairs[j].daughter != run.pairs[j].daughter)
      throw PropertyViolation("stability", "forms at j=" + std::to_string(j) + " change between rounds " +
                                               std::to_string(rounds) + " and " + std::to_string(rounds + 1));
  }
  for (std::uint32_t j = 0; j <= q; ++j) {
    const auto& [son, daughter] = run.pairs[j];
    if (son == daughter) throw PropertyViolation("son_daughter", "son and daughter agree at j=" + std::to_string(j));
    if (project(son) != project(daughter))
      throw PropertyViolation("son_daughter", "son and daughter project apart at j=" + std::to_string(j));
  }
  run.certificate = make_certificate(pm, sig, run, rounds);
  return run;
}

nlohmann::json witness_nonatomicity(const PointedModel& pm, std::uint32_t q, const Signature& sig,
                                    const WitnessOptions& opts) {
  return run_witness(pm, q, sig, opts).certificate;
}

CertificateCheck verify_certificate(const nlohmann::json& cert) {
  CertificateCheck check;
  auto problem = [&](const std::string& p) { check.problems.push_back(p); };
  try {
    const auto sig = Signature::from_h(cert.at("signature").at("m").get<std::uint32_t>(),
                                       cert.at("signature").at("H").get<std::string>());
    if (sig.atomic_case()) problem("certificate claims the atomic case");
    const auto q = cert.at("q").get<std::uint32_t>();
    FormTableReader forms(cert.at("forms"));
    const auto& zig = cert.at("zigzag");
    if (zig.size() != q + 1) problem("zigzag has " + std::to_string(zig.size()) + " edges, expected q+1");
    if (!zig.empty() && zig.front().at("label") != cert.at("tau")) problem("zigzag does not start at tau");
    for (std::size_t i = 0; i < zig.size(); ++i) {
      const auto depth = zig[i].at("depth").get<std::uint32_t>();
      if (depth != q - i) problem("zigzag depth " + std::to_string(depth) + " at position " + std::to_string(i));
      if (forms.get(zig[i].at("label").get<std::string>()).degree() != depth)
        problem("label degree differs from depth at position " + std::to_string(i));
      if (i + 1 < zig.size()) {
        const auto a = zig[i].at("edge")[0].get<std::uint32_t>();
        const auto b = zig[i].at("edge")[1].get<std::uint32_t>();
        const auto w = zig[i].at("middle").get<std::uint32_t>();
        const auto next = zig[i + 1].at("edge");
        if (next != nlohmann::json::array({a, w}) && next != nlohmann::json::array({w, b}))
          problem("zigzag step " + std::to_string(i + 1) + " does not pass through the middle node");
      }
    }
    const auto& pairs = cert.at("pairs");
    if (pairs.size() != q + 1) problem("expected q+1 son/daughter pairs");
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const Form son = forms.get(pairs[j].at("son").get<std::string>());
      const Form daughter = forms.get(pairs[j].at("daughter").get<std::string>());
      const auto tag = " at j=" + std::to_string(j);
      if (son == daughter) problem("son equals daughter" + tag);
      if (son.degree() != j + 1 || daughter.degree() != j + 1) problem("wrong degree" + tag);
      if (son.degree() >= 1 && daughter.degree() >= 1 && project(son) != project(daughter))
        problem("son and daughter project apart" + tag);
    }
  } catch (const std::exception& ex) {
    problem(std::string("malformed certificate: ") + ex.what());
  }
  return check;
}

std::string graph_to_dot(const LabeledGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::uint32_t x = 0; x < g.node_count(); ++x) {
    out << "  n" << x << " [label=\"" << x;
    if (g.node_point[x] != kNoPoint) out << " @" << g.node_point[x];
    out << " d=" << g.node_depth[x] << "\"];\n";
  }
  for (const auto& [e, info] : g.edges) {
    std::string color;
    for (const auto& sym : color_symbols(info.label.color())) color += (color.empty() ? "" : ",") + sym;
    out << "  n" << e.r << " -> n" << e.s << " [label=\"" << info.label.hash_hex().substr(0, 8) << " d=" << info.depth
        << " {" << color << "}\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace relalg
