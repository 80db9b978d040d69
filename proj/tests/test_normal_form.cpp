#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "relalg/error.hpp"
#include "relalg/normal_form.hpp"

using namespace relalg;

namespace {

// |F_0| = 2^(m+1); each further degree chooses a color, a subset of pairs and a subset of singles.
std::uint64_t universe_by_recursion(std::uint32_t m, std::uint32_t degree) {
  std::uint64_t size = std::uint64_t{1} << (m + 1);
  for (std::uint32_t k = 0; k < degree; ++k) size = (std::uint64_t{1} << (m + 1)) << (size * size + size);
  return size;
}

std::vector<Model> small_models(std::uint32_t m, const char* h, std::uint32_t max_base) {
  std::vector<Model> out;
  for (std::uint32_t n = 1; n <= max_base; ++n) {
    ModelEnumerator it(n, Signature::from_h(m, h));
    while (auto model = it.next()) out.push_back(*model);
  }
  return out;
}

}  // namespace

TEST_CASE("universe sizes follow the recursion") {
  CHECK(universe_size(0, 0) == 2);
  CHECK(universe_size(0, 1) == 128);
  CHECK(universe_size(1, 0) == 4);
  CHECK(universe_size(1, 1) == 4194304);
  CHECK(universe_size(0, 1) == universe_by_recursion(0, 1));
  CHECK(universe_size(1, 1) == universe_by_recursion(1, 1));
  CHECK(universe_size(2, 0) == universe_by_recursion(2, 0));
  CHECK(universe_size(0, 2) == UINT64_MAX);
}

TEST_CASE("enumerated universes are complete, sorted and distinct") {
  const auto f1 = enum_forms(0, 1);
  CHECK(f1->forms.size() == 128);
  CHECK(std::is_sorted(f1->forms.begin(), f1->forms.end()));
  CHECK(std::set<Form>(f1->forms.begin(), f1->forms.end()).size() == 128);
  CHECK(enum_forms(1, 0)->forms.size() == 4);
  CHECK(enum_forms(2, 0)->forms.size() == 8);
  CHECK_THROWS_AS(enum_forms(1, 1), BudgetExceeded);
  CHECK_THROWS_AS(enum_forms(0, 2), BudgetExceeded);
}

TEST_CASE("interning makes equal forms identical") {
  const Form w = Form::color_form(kWhite);
  const Form b = Form::color_form(0);
  const Form x = Form::make(1, 0, {{w, b}, {b, b}}, {b});
  const Form y = Form::make(1, 0, {{b, b}, {w, b}, {b, b}}, {b});
  CHECK(x == y);
  CHECK(x.hash() == y.hash());
  CHECK(x.hash_hex().size() == 16);
  CHECK(x != Form::make(1, 0, {{w, b}}, {b}));
  CHECK_THROWS_AS(Form::make(1, 0, {{x, b}}), InputError);
  CHECK_THROWS_AS(Form::make(0, 0, {}, {b}), InputError);
}

TEST_CASE("every edge realises one form per degree, and projections chain") {
  std::mt19937_64 rng(17);
  const char* hs[] = {"", "R", "S", "RS"};
  for (int i = 0; i < 40; ++i) {
    const Model model = random_model(1 + i % 5, Signature::from_h(i % 3, hs[i % 4]), rng);
    EdgeLabeler labeler(model);
    for (const auto& e : model.unit.edges()) {
      for (std::uint32_t n = 0; n < 3; ++n) {
        const Form f = labeler.form(e, n + 1);
        CHECK(f.degree() == n + 1);
        CHECK(project(f) == labeler.form(e, n));
        CHECK(compatible(f, labeler.form(e, n)));
        CHECK(satisfies(model, e, f));
      }
      CHECK(project_to(labeler.form(e, 3), 0) == labeler.form(e, 0));
    }
  }
  CHECK_THROWS_AS(project(Form::color_form(0)), InputError);
}

TEST_CASE("the extraction maps read the neighbourhood of an edge") {
  const PointedModel pm{Model::full(3), {0, 1}};
  const Form tau = form_of_edge(pm, 1);
  REQUIRE(conv_f(tau).has_value());
  CHECK(*conv_f(tau) == form_of_edge({pm.model, {1, 0}}, 0));
  REQUIRE(right_R(tau).has_value());
  CHECK(right_R(tau)->is_white());
  REQUIRE(left_L(tau).has_value());
  CHECK(left_L(tau)->is_white());
  CHECK_FALSE(conv_f(Form::color_form(0)).has_value());
  CHECK_FALSE(right_R(Form::color_form(0)).has_value());

  Model no_loops = Model::full(3);
  for (std::uint32_t x = 0; x < 3; ++x) no_loops.unit.erase({x, x});
  const Form bare = form_of_edge({no_loops, {0, 1}}, 1);
  CHECK_FALSE(right_R(bare).has_value());
  CHECK_FALSE(left_L(bare).has_value());
  CHECK(conv_f(bare).has_value());
}

TEST_CASE("a form with its color flipped is not satisfied") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const Model model = random_model(3, Signature::from_h(1, "RS"), rng);
    for (const auto& e : model.unit.edges()) {
      const Form f = form_of_edge({model, e}, 2);
      const Form flipped = Form::make(2, f.color() ^ var_bit(0), f.sub(), f.conv());
      CHECK_FALSE(satisfies(model, e, flipped));
    }
  }
}

TEST_CASE("neighbours are the unit edges sharing an endpoint") {
  const Model model = Model::full(3);
  const auto nb = neighbors(model, {0, 1});
  for (const auto& e : model.unit.edges())
    CHECK(nb.contains(e) == (e.r == 0 || e.r == 1 || e.s == 0 || e.s == 1));
  CHECK_THROWS_AS(neighbors(Model::full(1), {0, 1}), InputError);
}

TEST_CASE("rendered degree-1 forms hold exactly at the edges that realise them") {
  const auto universe = enum_forms(0, 1);
  std::vector<Term> terms;
  for (const auto& f : universe->forms) terms.push_back(to_term(f, 0));
  for (const auto& model : small_models(0, "", 2)) {
    EdgeLabeler labeler(model);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto ext = eval(terms[i], model);
      for (const auto& e : model.unit.edges()) CHECK(ext.contains(e) == (labeler.form(e, 1) == universe->forms[i]));
    }
  }
}

TEST_CASE("refinement splits a form into the next degree") {
  const auto f0 = enum_forms(0, 0);
  std::size_t total = 0;
  for (const auto& f : f0->forms) {
    const auto kids = refine(f, 0);
    CHECK(kids.size() == 64);
    for (const auto& k : kids) CHECK(project(k) == f);
    total += kids.size();
  }
  CHECK(total == 128);
}

TEST_CASE("partition checks pass on random models") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 10; ++i) {
    const Model model = random_model(4, Signature::from_h(1, "R"), rng);
    const auto rep = check_partition(model, 2, false);
    CHECK(rep.ok());
    CHECK(rep.edges_checked == model.unit.size());
  }
  const auto rep = check_partition(Model::full(2), 1, true);
  CHECK(rep.extensional_run);
  CHECK(rep.ok());
  CHECK(rep.forms_rendered == 128);
}

TEST_CASE("forms serialize canonically and round-trip") {
  std::mt19937_64 rng(31);
  const Model model = random_model(4, Signature::from_h(1, "S"), rng);
  FormTableWriter writer;
  std::vector<std::pair<std::string, Form>> written;
  for (const auto& e : model.unit.edges()) {
    const Form f = form_of_edge({model, e}, 2);
    CHECK(form_from_json(form_to_json(f)) == f);
    written.emplace_back(writer.add(f), f);
  }
  const auto table = writer.table();
  FormTableReader reader(table);
  for (const auto& [hash, f] : written) {
    CHECK(hash == f.hash_hex());
    CHECK(reader.get(hash) == f);
  }
  auto broken = table;
  if (!written.empty()) {
    const Form& first = written.front().second;
    broken[written.front().first]["color"] = color_symbols(first.color() ^ var_bit(0));
    FormTableReader bad(broken);
    CHECK_THROWS(bad.get(written.front().first));
  }
}
