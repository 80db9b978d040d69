#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "relalg/error.hpp"
#include "relalg/witness.hpp"

using namespace relalg;

namespace {

struct Config {
  std::uint32_t m;
  const char* h;
  const char* extension;
};

const Config kConfigs[] = {{0, "", "converse_edge"}, {0, "R", "converse_edge"}, {0, "S", "loop"}, {1, "RS", "fresh_node"}};

}  // namespace

TEST_CASE("round 0 places the seed edge, its reverse and both loops") {
  const auto sig = Signature::from_h(1, "RS");
  for (std::uint32_t q : {1u, 2u}) {
    const auto g = build_round0(default_seed(sig), q, sig);
    CHECK(g.node_count() == 2);
    REQUIRE(g.edges.size() == 4);
    CHECK(g.depth({0, 1}) == q);
    CHECK(g.depth({1, 0}) == q - 1);
    CHECK(g.depth({0, 0}) == q);
    CHECK(g.depth({1, 1}) == q - 1);
    CHECK(g.at({0, 1}).label == seed_tau(default_seed(sig), q));
    CHECK(check_consistency(g).ok());
  }
  const auto bare = build_round0(default_seed(Signature::from_h(0, "")), 1, Signature::from_h(0, ""));
  CHECK(bare.edges.size() == 2);
}

TEST_CASE("seeds that cannot start a witness are rejected") {
  const auto sig = Signature::from_h(0, "S");
  CHECK_THROWS_AS(seed_tau(default_seed(sig), 0), InputError);
  Model small = Model::full(2);
  small.unit.erase({0, 0});
  small.unit.erase({1, 1});
  CHECK_THROWS_AS(build_round0({small, {0, 1}}, 1, sig), InputError);
  CHECK_THROWS_AS(build_round0({Model::full(2), {0, 1}}, 1, Signature::from_h(0, "RS")), InputError);
}

TEST_CASE("expanded graphs stay consistent and their settled edges realise their labels") {
  for (const auto& c : kConfigs) {
    const auto sig = Signature::from_h(c.m, c.h);
    for (std::uint32_t q : {1u, 2u}) {
      INFO("m=" << c.m << " H=" << c.h << " q=" << q);
      auto g = build_round0(default_seed(sig), q, sig);
      expand(g, q + 3);
      CHECK(g.rounds == q + 3);
      const auto rep = check_consistency(g);
      CHECK(rep.ok());
      CHECK(satisfaction_failures(g, 2).empty());
    }
  }
}

TEST_CASE("consistency flags a depth that jumps by two and a black loop") {
  const auto sig = Signature::from_h(0, "S");
  auto g = build_round0(default_seed(sig), 2, sig);
  expand(g, 2);
  REQUIRE(check_consistency(g).ok());

  auto deeper = g;
  deeper.edges.at({1, 0}).depth += 3;
  const auto rep = check_consistency(deeper);
  CHECK_FALSE(rep.ok());
  CHECK(std::any_of(rep.violations.begin(), rep.violations.end(), [](const auto& v) { return v.rfind("(2)", 0) == 0; }));

  const auto rsig = Signature::from_h(0, "R");
  auto h = build_round0(default_seed(rsig), 1, rsig);
  REQUIRE(h.has({0, 0}));
  h.edges.at({0, 0}).label = h.at({0, 1}).label;
  const auto rep2 = check_consistency(h);
  CHECK(std::any_of(rep2.violations.begin(), rep2.violations.end(), [](const auto& v) { return v.rfind("(1)", 0) == 0; }));
}

TEST_CASE("the zigzag descends one degree per step") {
  for (const auto& c : kConfigs) {
    const auto sig = Signature::from_h(c.m, c.h);
    for (std::uint32_t q : {1u, 2u}) {
      INFO("m=" << c.m << " H=" << c.h << " q=" << q);
      const auto run = run_witness(default_seed(sig), q, sig);
      REQUIRE(run.zigzag.edges.size() == q + 1);
      CHECK(run.zigzag.middles.size() == q);
      for (std::uint32_t i = 0; i <= q; ++i) CHECK(run.graph.depth(run.zigzag.edges[i]) == q - i);
      CHECK(run.zigzag.edges.front() == Edge{0, 1});
      CHECK(run.extension.kind == c.extension);
      CHECK_FALSE(run.extension.added.empty());
      REQUIRE(run.pairs.size() == q + 1);
      for (std::uint32_t j = 0; j <= q; ++j) {
        CHECK(run.pairs[j].son != run.pairs[j].daughter);
        CHECK(run.pairs[j].son.degree() == j + 1);
        CHECK(project(run.pairs[j].son) == project(run.pairs[j].daughter));
      }
    }
  }
}

TEST_CASE("the extension only adds edges") {
  const auto sig = Signature::from_h(1, "RS");
  const auto run = run_witness(default_seed(sig), 1, sig);
  for (const auto& [e, info] : run.graph.edges) {
    REQUIRE(run.extended.has(e));
    CHECK(run.extended.at(e).label == info.label);
  }
  CHECK(run.extended.edges.size() == run.graph.edges.size() + run.extension.added.size());
  CHECK(run.extended.node_count() == run.graph.node_count() + 1);
}

TEST_CASE("the atomic case is refused") {
  const auto sig = Signature::from_h(0, "RS");
  try {
    witness_nonatomicity(default_seed(sig), 1, sig);
    FAIL("expected the atomic case to be refused");
  } catch (const InputError& ex) {
    CHECK(std::string(ex.what()).find("atomic case") != std::string::npos);
  }
}

TEST_CASE("certificates are deterministic and verify") {
  const auto sig = Signature::from_h(0, "S");
  const auto a = witness_nonatomicity(default_seed(sig), 2, sig);
  const auto b = witness_nonatomicity(default_seed(sig), 2, sig);
  CHECK(a.dump() == b.dump());
  CHECK(verify_certificate(a).ok());
  CHECK(a.at("stability_round").get<std::uint32_t>() == 5);
}

TEST_CASE("tampered certificates are caught") {
  const auto sig = Signature::from_h(0, "");
  const auto cert = witness_nonatomicity(default_seed(sig), 2, sig);
  REQUIRE(verify_certificate(cert).ok());

  auto same = cert;
  same["pairs"][1]["daughter"] = same["pairs"][1]["son"];
  CHECK_FALSE(verify_certificate(same).ok());

  auto shallow = cert;
  shallow["zigzag"][1]["depth"] = 0;
  CHECK_FALSE(verify_certificate(shallow).ok());

  auto short_zig = cert;
  short_zig["zigzag"].erase(short_zig["zigzag"].size() - 1);
  CHECK_FALSE(verify_certificate(short_zig).ok());

  auto atomic = cert;
  atomic["signature"]["H"] = "RS";
  CHECK_FALSE(verify_certificate(atomic).ok());

  auto missing = cert;
  missing.erase("forms");
  CHECK_FALSE(verify_certificate(missing).ok());
}

TEST_CASE("graphs render to dot") {
  const auto sig = Signature::from_h(0, "R");
  const auto g = build_round0(default_seed(sig), 1, sig);
  const auto dot = graph_to_dot(g, "G");
  CHECK(dot.rfind("digraph G {", 0) == 0);
  CHECK(dot.find("n0 -> n1") != std::string::npos);
}
