#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "relalg/error.hpp"
#include "relalg/model.hpp"

using namespace relalg;

namespace {

using Pairs = std::set<std::pair<std::uint32_t, std::uint32_t>>;

Pairs as_pairs(const Relation& r) {
  Pairs out;
  for (const auto& e : r.edges()) out.insert({e.r, e.s});
  return out;
}

// Straight from the definitions, on sets of pairs.
Pairs reference_eval(const Term& t, const Model& m) {
  const Pairs w = as_pairs(m.unit);
  switch (t.op()) {
    case Op::Zero: return {};
    case Op::One: return w;
    case Op::Identity: {
      Pairs out;
      for (auto [a, b] : w)
        if (a == b) out.insert({a, b});
      return out;
    }
    case Op::Var: return as_pairs(m.valuation.at(t.var_index()));
    case Op::Complement: {
      const Pairs x = reference_eval(t.child(), m);
      Pairs out;
      for (auto p : w)
        if (!x.count(p)) out.insert(p);
      return out;
    }
    case Op::Sum: {
      Pairs out = reference_eval(t.lhs(), m);
      for (auto p : reference_eval(t.rhs(), m)) out.insert(p);
      return out;
    }
    case Op::Product: {
      const Pairs y = reference_eval(t.rhs(), m);
      Pairs out;
      for (auto p : reference_eval(t.lhs(), m))
        if (y.count(p)) out.insert(p);
      return out;
    }
    case Op::Converse: {
      Pairs out;
      for (auto [a, b] : reference_eval(t.child(), m))
        if (w.count({b, a})) out.insert({b, a});
      return out;
    }
    case Op::Compose: {
      const Pairs x = reference_eval(t.lhs(), m);
      const Pairs y = reference_eval(t.rhs(), m);
      Pairs out;
      for (auto [a, b] : x)
        for (auto [c, d] : y)
          if (b == c && w.count({a, d})) out.insert({a, d});
      return out;
    }
  }
  return {};
}

std::uint64_t expected_units(std::uint32_t n, const Signature& sig) {
  std::uint64_t free_pairs = 0;
  if (sig.symmetric)
    free_pairs = sig.reflexive ? n * (n - 1) / 2 : n * (n + 1) / 2;
  else
    free_pairs = sig.reflexive ? n * n - n : n * n;
  return std::uint64_t{1} << free_pairs;
}

}  // namespace

TEST_CASE("evaluation agrees with the set-of-pairs definition") {
  std::mt19937_64 rng(3);
  const char* hs[] = {"", "R", "S", "RS"};
  for (int i = 0; i < 300; ++i) {
    const auto sig = Signature::from_h(2, hs[i % 4]);
    const Model m = random_model(1 + i % 5, sig, rng);
    const Term t = random_term(2, 4, rng);
    INFO(render(t));
    CHECK(as_pairs(eval(t, m)) == reference_eval(t, m));
  }
}

TEST_CASE("composition and converse are cut down to the unit") {
  Model m;
  m.base = 3;
  m.unit = Relation(3);
  m.unit.insert(0, 1);
  m.unit.insert(1, 2);
  const Term one = Term::one();
  CHECK(eval(compose(one, one), m).empty());
  CHECK(eval(converse(one), m).empty());
  m.unit.insert(0, 2);
  CHECK(as_pairs(eval(compose(one, one), m)) == Pairs{{0, 2}});
}

TEST_CASE("identity on the one-point model") {
  const Model m = Model::full(1);
  CHECK(as_pairs(eval(Term::identity(), m)) == Pairs{{0, 0}});
}

TEST_CASE("t holds on the six non-identity pairs of the full 3-model") {
  const Model m = Model::full(3);
  const auto t = eval(builtin("t"), m);
  CHECK(t.size() == 6);
  CHECK(t == Relation::full(3) - Relation::identity(3));
}

TEST_CASE("variables outside the valuation are rejected") {
  const Model m = Model::full(2, 0);
  CHECK_THROWS_AS(eval(Term::var(0), m), InputError);
}

TEST_CASE("unit counts match the free-pair formula") {
  const char* hs[] = {"", "R", "S", "RS"};
  for (auto h : hs) {
    const auto sig = Signature::from_h(0, h);
    for (std::uint32_t n = 1; n <= 3; ++n) {
      CHECK(count_units(n, sig) == expected_units(n, sig));
      ModelEnumerator it(n, sig);
      std::uint64_t seen = 0;
      std::set<Pairs> distinct;
      while (auto m = it.next()) {
        ++seen;
        CHECK(validate_model(*m, sig).ok());
        distinct.insert(as_pairs(m->unit));
      }
      CHECK(seen == expected_units(n, sig));
      CHECK(distinct.size() == seen);
    }
  }
  std::uint64_t ws = 0;
  for (std::uint32_t n = 1; n <= 4; ++n) ws += count_units(n, Signature::from_h(0, "RS"));
  CHECK(ws == 75);
}

TEST_CASE("enumerated valuations stay inside the unit") {
  const auto sig = Signature::from_h(1, "S");
  ModelEnumerator it(2, sig);
  std::uint64_t n = 0;
  while (auto m = it.next()) {
    ++n;
    CHECK(m->valuation.size() == 1);
    CHECK(m->valuation[0].subset_of(m->unit));
  }
  // 8 symmetric units on 2 points, each with every subset of its pairs:
  // the units have 0,1,2,3,1,2,3,4 pairs.
  CHECK(n == 1 + 2 + 4 + 8 + 2 + 4 + 8 + 16);
}

TEST_CASE("validation names the broken closure property") {
  Model m;
  m.base = 2;
  m.unit = Relation(2);
  m.unit.insert(0, 1);
  const auto rep = validate_model(m, Signature::from_h(0, "RS"));
  CHECK_FALSE(rep.ok());
  CHECK(rep.violations.size() == 3);
  CHECK(validate_model(m, Signature::from_h(0, "")).ok());
}

TEST_CASE("t has no model below base 3 and one at base 3") {
  const auto sig = Signature::from_h(0, "RS");
  CHECK_FALSE(find_model(builtin("t"), sig, 2).has_value());
  const auto found = find_model(builtin("t"), sig, 3);
  REQUIRE(found.has_value());
  CHECK(found->model.base == 3);
  CHECK(found->model.unit == Relation::full(3));
  CHECK(found->edge == Edge{0, 1});
}

TEST_CASE("bounded validity finds counterexamples and accepts laws") {
  const auto sig = Signature::from_h(1, "RS");
  const Term x = Term::var(0);
  CHECK(check_validity(compose(Term::identity(), x), x, sig, 3).ok);
  CHECK(check_validity(converse(converse(x)), x, sig, 3).ok);
  const auto bad = check_validity(compose(x, x), x, sig, 3);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.counterexample.has_value());
  const auto& cx = *bad.counterexample;
  CHECK(eval(compose(x, x), cx.model).contains(cx.edge) != eval(x, cx.model).contains(cx.edge));
}

TEST_CASE("model files round-trip and reject stray pairs") {
  std::mt19937_64 rng(5);
  const Model m = random_model(4, Signature::from_h(2, "S"), rng);
  CHECK(model_from_json(model_to_json(m)) == m);
  const auto bad = nlohmann::json::parse(R"({"base": 2, "unit": [[0, 2]]})");
  CHECK_THROWS_AS(model_from_json(bad), InputError);
  const auto outside = nlohmann::json::parse(R"({"base": 2, "unit": [[0, 1]], "valuation": [[[1, 0]]]})");
  CHECK_THROWS_AS(model_from_json(outside), InputError);
}

TEST_CASE("H strings parse in either order") {
  CHECK(Signature::from_h(0, "SR") == Signature::from_h(0, "RS"));
  CHECK(Signature::from_h(0, "RS").atomic_case());
  CHECK_FALSE(Signature::from_h(1, "RS").atomic_case());
  CHECK_THROWS_AS(Signature::from_h(0, "T"), InputError);
}
