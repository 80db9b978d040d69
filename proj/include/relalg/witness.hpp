#pragma once

// Non-atomicity witnesses. Starting from a seed model in which an edge
// satisfies t, a labeled graph is grown round by round so that every edge
// carries a normal form realised by the seed at the edge's anchor. A descent
// of edges (the zigzag) is then picked, the graph is extended by one local
// mutation, and the forms of the zigzag edges before and after the mutation
// are shown to differ while agreeing one degree lower.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "relalg/model.hpp"
#include "relalg/normal_form.hpp"

namespace relalg {

struct EdgeInfo {
  Form label;
  std::uint32_t depth = 0;
  Edge anchor;  // edge of the seed model realising the label
  bool anchored = true;  // false for edges added by the extension
  std::uint32_t round = 0;
};

struct LabeledGraph {
  Signature sig;
  std::uint32_t q = 0;
  Model seed;
  std::vector<std::uint32_t> node_point;  // seed point of each node
  std::vector<std::uint32_t> node_depth;  // d(x,x), kept even when the loop is absent
  std::map<Edge, EdgeInfo> edges;
  std::map<Edge, std::vector<std::uint32_t>> middles;  // fresh nodes created for an edge
  std::uint32_t rounds = 0;  // expansion rounds performed

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(node_point.size()); }
  bool has(const Edge& e) const { return edges.count(e) != 0; }
  const EdgeInfo& at(const Edge& e) const;
  std::uint32_t depth(const Edge& e) const { return at(e).depth; }

  // The graph as a model: unit = edges, x_i = edges whose label color has x_i.
  Model as_model() const;
};

struct GraphBudget {
  std::uint64_t max_nodes = 200000;
  std::uint64_t max_edges = 1000000;
};

// τ = degree-q form of the seed edge. Throws InputError when q = 0, the edge
// does not satisfy t, or τ has no converse entry.
Form seed_tau(const PointedModel& pm, std::uint32_t q);

LabeledGraph build_round0(const PointedModel& pm, std::uint32_t q, const Signature& sig);

// Runs the given number of further rounds in place.
void expand(LabeledGraph& g, std::uint32_t rounds, const GraphBudget& budget = {});

struct ConsistencyReport {
  std::vector<std::string> violations;  // "(k) ..." with the offending edges
  bool ok() const { return violations.empty(); }
};

ConsistencyReport check_consistency(const LabeledGraph& g);

// Edges whose realised form in the graph model differs from their label.
// Only edges whose endpoints have seen no new edge in the last
// `settled_rounds` rounds are considered: newer edges still miss
// decompositions and disturb the forms around them.
std::vector<Edge> satisfaction_failures(const LabeledGraph& g, std::uint32_t settled_rounds);

struct Zigzag {
  std::vector<Edge> edges;             // e_q, ..., e_0
  std::vector<std::uint32_t> middles;  // w_q, ..., w_1
  std::vector<std::string> uniqueness_violations;  // alternative decomposition nodes found
};

bool is_useful(const LabeledGraph& g, const Edge& e);
bool is_side(const LabeledGraph& g, const Edge& e);

// Throws PropertyViolation when no descent exists in the graph.
Zigzag select_zigzag(const LabeledGraph& g);

struct Extension {
  std::string kind;  // "fresh_node", "converse_edge" or "loop"
  std::vector<std::pair<Edge, Form>> added;
};

// Throws InputError("atomic case") when m = 0 and H = {R,S}.
LabeledGraph extend_plus(const LabeledGraph& g, const Zigzag& z, Extension* out = nullptr);

struct SonDaughter {
  Form son;
  Form daughter;
};

std::vector<SonDaughter> son_daughter(const LabeledGraph& g, const LabeledGraph& g_plus, const Zigzag& z);

struct WitnessOptions {
  std::uint32_t rounds = 0;  // 0 means q + 3
  GraphBudget budget;
};

// Base-3 seed satisfying t at (0,1): loops iff R in H, every non-loop pair.
PointedModel default_seed(const Signature& sig);

struct WitnessRun {
  LabeledGraph graph;
  LabeledGraph extended;
  Zigzag zigzag;
  Extension extension;
  std::vector<SonDaughter> pairs;
  nlohmann::json certificate;
};

WitnessRun run_witness(const PointedModel& pm, std::uint32_t q, const Signature& sig, const WitnessOptions& opts = {});

// Full pipeline. Errors are PropertyViolation tagged with the stage, or
// InputError for the atomic case and bad seeds.
nlohmann::json witness_nonatomicity(const PointedModel& pm, std::uint32_t q, const Signature& sig,
                                    const WitnessOptions& opts = {});

struct CertificateCheck {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Re-checks a serialized certificate from its own contents.
CertificateCheck verify_certificate(const nlohmann::json& cert);

std::string graph_to_dot(const LabeledGraph& g, const std::string& name = "G");

}  // namespace relalg
