#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "relalg/dnf.hpp"
#include "relalg/error.hpp"
#include "relalg/model.hpp"

using namespace relalg;

namespace {

// A degree-1 form with no variables lists the pairs of colors met on the way
// through a middle point; 0';0' holds iff some pair has two black colors.
bool has_black_pair(const Form& f) {
  for (const auto& [a, b] : f.sub())
    if (!a.is_white() && !b.is_white()) return true;
  return false;
}

bool agrees_everywhere(const Term& t, const DnfResult& d, const Model& model) {
  const auto truth = eval(t, model);
  EdgeLabeler labeler(model);
  for (const auto& e : model.unit.edges())
    if (truth.contains(e) != d.forms.contains(labeler.form(e, d.degree))) return false;
  return true;
}

}  // namespace

TEST_CASE("constants have degree 0") {
  const auto id = dnf(Term::identity(), 0);
  CHECK(id.degree == 0);
  const auto members = id.forms.materialize(0);
  REQUIRE(members.size() == 1);
  CHECK(members.front().is_white());
  CHECK(dnf(Term::one(), 0).forms.materialize(0).size() == 2);
  CHECK(dnf(Term::zero(), 0).forms.materialize(0).empty());
  CHECK(dnf(Term::var(0), 1).forms.materialize(1).size() == 2);
}

TEST_CASE("0';0' is the 64 degree-1 forms with a black pair") {
  const auto d = dnf(compose(Term::diversity(), Term::diversity()), 0);
  CHECK(d.degree == 1);
  const auto members = d.forms.materialize(0);
  CHECK(members.size() == 64);
  for (const auto& f : enum_forms(0, 1)->forms) CHECK(d.forms.contains(f) == has_black_pair(f));
}

TEST_CASE("degree is the composition-converse depth") {
  CHECK(dnf(converse(Term::var(0)), 1).degree == 1);
  CHECK(dnf(compose(converse(Term::var(0)), Term::var(0)), 1).degree == 2);
  CHECK(dnf(Term::var(0) + compose(Term::var(0), Term::var(0)), 1).degree == 1);
  CHECK(dnf(builtin("t"), 0).degree == 2);
}

TEST_CASE("variables beyond m are rejected") {
  CHECK_THROWS_AS(dnf(Term::var(1), 1), InputError);
  CHECK_THROWS_AS(dnf(builtin("e1") + Term::var(0), 0), InputError);
}

TEST_CASE("normal forms agree with evaluation on random terms and models") {
  std::mt19937_64 rng(41);
  const char* hs[] = {"", "R", "S", "RS"};
  for (int i = 0; i < 60; ++i) {
    const std::uint32_t m = i % 3;
    const Term t = random_term(m, 3, rng);
    const auto d = dnf(t, m);
    for (int j = 0; j < 8; ++j) {
      const Model model = random_model(1 + j % 4, Signature::from_h(m, hs[j % 4]), rng);
      INFO(render(t));
      CHECK(agrees_everywhere(t, d, model));
    }
  }
}

TEST_CASE("Boolean connectives act pointwise on form sets") {
  const auto a = dnf(compose(Term::diversity(), Term::diversity()), 0).forms;
  const auto b = dnf(converse(Term::diversity()), 0).forms;
  const auto all = enum_forms(0, 1)->forms;
  for (const auto& f : all) {
    CHECK((a | b).contains(f) == (a.contains(f) || b.contains(f)));
    CHECK((a & b).contains(f) == (a.contains(f) && b.contains(f)));
    CHECK(a.complement().contains(f) == !a.contains(f));
  }
  CHECK(FormSet::all(1).materialize(0).size() == 128);
  CHECK(FormSet::empty(1).materialize(0).empty());
}

TEST_CASE("lifting keeps membership under projection") {
  const auto d = dnf(Term::diversity(), 0).forms;
  const auto up = d.lifted();
  CHECK(up.degree() == 1);
  for (const auto& f : enum_forms(0, 1)->forms) CHECK(up.contains(f) == d.contains(project(f)));
  CHECK(d.lifted_to(2).degree() == 2);
}

TEST_CASE("materializing a large universe is refused") {
  CHECK_THROWS_AS(dnf(converse(Term::var(0)), 1).forms.materialize(1), BudgetExceeded);
}
