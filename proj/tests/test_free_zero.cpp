#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "relalg/error.hpp"
#include "relalg/free_zero.hpp"

using namespace relalg;

namespace {

// Atom of an edge read off the unit directly: loops split by whether the point
// has another neighbour, other edges by whether a third point links them.
Atom classify(const Model& m, Edge e) {
  bool through_other = false;
  for (std::uint32_t z = 0; z < m.base; ++z) {
    if (z == e.r || z == e.s) continue;
    if (m.unit.contains({e.r, z}) && m.unit.contains({z, e.s})) through_other = true;
  }
  if (e.r == e.s) return through_other ? Atom::E2 : Atom::E1;
  return through_other ? Atom::M3 : Atom::M2;
}

struct Derived {
  std::array<std::array<AtomSet, 4>, 4> compose{};
  std::array<AtomSet, 4> converse{};
};

// Composition is read off as: c is in a;b iff some c-edge factors as an
// a-edge followed by a b-edge on some small unit.
Derived derive_tables(std::uint32_t max_base) {
  Derived d;
  const auto sig = Signature::from_h(0, "RS");
  for (std::uint32_t n = 1; n <= max_base; ++n) {
    ModelEnumerator it(n, sig);
    while (auto model = it.next()) {
      for (const auto& e : model->unit.edges()) {
        const Atom c = classify(*model, e);
        d.converse[static_cast<int>(c)] = d.converse[static_cast<int>(c)] | AtomSet{classify(*model, {e.s, e.r})};
        for (std::uint32_t z = 0; z < n; ++z) {
          if (!model->unit.contains({e.r, z}) || !model->unit.contains({z, e.s})) continue;
          auto& cell = d.compose[static_cast<int>(classify(*model, {e.r, z}))][static_cast<int>(classify(*model, {z, e.s}))];
          cell = cell | AtomSet{c};
        }
      }
    }
  }
  return d;
}

}  // namespace

TEST_CASE("derived table agrees with the hard-coded one except at m2;m2") {
  const auto fz = tables();
  const auto d = derive_tables(4);
  for (auto a : kAtoms) {
    CHECK(d.converse[static_cast<int>(a)] == AtomSet{fz.converse(a)});
    for (auto b : kAtoms) {
      INFO(atom_name(a) << ";" << atom_name(b));
      if (a == Atom::M2 && b == Atom::M2) continue;
      CHECK(fz.compose(a, b) == d.compose[static_cast<int>(a)][static_cast<int>(b)]);
    }
  }
  // On the full 2-point unit (0,1) is an m2 edge, so the loop (0,0) lies in m2;m2.
  CHECK(fz.compose(Atom::M2, Atom::M2).empty());
  CHECK(d.compose[static_cast<int>(Atom::M2)][static_cast<int>(Atom::M2)] == AtomSet{Atom::E2});
}

TEST_CASE("atom terms pick out the classified edges") {
  const auto fz = tables();
  const auto sig = Signature::from_h(0, "RS");
  for (std::uint32_t n = 1; n <= 4; ++n) {
    ModelEnumerator it(n, sig);
    while (auto model = it.next())
      for (auto a : kAtoms) {
        const auto ext = eval(fz.term(a), *model);
        for (const auto& e : model->unit.edges()) CHECK(ext.contains(e) == (classify(*model, e) == a));
      }
  }
}

TEST_CASE("as equations, exactly m2;m2 and m3;m3 fail on the full 2-point unit") {
  const auto report = verify_tables(tables(), {.max_base = 3, .random_units = 50});
  CHECK(report.entries.size() == 20);
  CHECK(report.random_models == 50);
  CHECK(report.failures() == 2);
  const std::string full2 = R"({"base":2,"unit":[[0,0],[0,1],[1,0],[1,1]],"valuation":[]})";
  for (const auto& e : report.entries) {
    INFO(e.equation);
    const bool expected_bad = e.equation.rfind("m2;m2", 0) == 0 || e.equation.rfind("m3;m3", 0) == 0;
    CHECK(e.ok == !expected_bad);
    if (!e.ok) CHECK(e.counterexample.find(full2) != std::string::npos);
  }
}

TEST_CASE("m3;m3 contains m3 and meets e2 without containing it") {
  const auto sig = Signature::from_h(0, "RS");
  const Term m3 = builtin("m3");
  const Term sq = compose(m3, m3);
  CHECK(check_validity(m3 * sq, m3, sig, 4).ok);
  CHECK_FALSE(check_validity(builtin("e2") * sq, Term::zero(), sig, 3).ok);
  CHECK_FALSE(check_validity(builtin("e2") * sq, builtin("e2"), sig, 3).ok);
}

TEST_CASE("a perturbed entry is caught with a counterexample") {
  auto fz = tables();
  fz.composition_table[static_cast<int>(Atom::E1)][static_cast<int>(Atom::E2)] = AtomSet{Atom::E1};
  const auto report = verify_tables(fz, {.max_base = 3, .random_units = 0});
  bool caught = false;
  for (const auto& e : report.entries)
    if (e.equation.rfind("e1;e2", 0) == 0) caught = !e.ok && !e.counterexample.empty();
  CHECK(caught);
  CHECK(report.failures() == 3);
}

TEST_CASE("terms without variables evaluate to atom sets") {
  const auto fz = tables();
  // 0' is m2+m3 and only m3;m3 is nonzero among their products.
  CHECK(eval_in_free0(compose(Term::diversity(), Term::diversity()), fz) == AtomSet{Atom::E2, Atom::M3});
  CHECK(eval_in_free0(Term::identity(), fz) == AtomSet{Atom::E1, Atom::E2});
  CHECK(eval_in_free0(Term::one(), fz) == AtomSet::top());
  CHECK(eval_in_free0(Term::zero(), fz).empty());
  CHECK(eval_in_free0(builtin("m3"), fz) == AtomSet{Atom::M3});
  CHECK(eval_in_free0(builtin("e2"), fz) == AtomSet{Atom::E2});
  CHECK_THROWS_AS(eval_in_free0(Term::var(0), fz), InputError);
}

TEST_CASE("the composition table is symmetric") {
  const auto fz = tables();
  for (auto a : kAtoms)
    for (auto b : kAtoms) CHECK(fz.compose(a, b) == fz.compose(b, a));
}

TEST_CASE("the algebra is atomic with four atoms") {
  const auto res = is_atomic(tables());
  CHECK(res.atomic);
  CHECK(res.atoms.size() == 4);
  CHECK(tables().elements().size() == 16);
  CHECK(AtomSet{Atom::E2, Atom::M3}.str() == "e2+m3");
  CHECK(AtomSet{}.str() == "0");
}
