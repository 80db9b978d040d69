#include "relalg/free_zero.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include "relalg/error.hpp"

namespace relalg {

std::string atom_name(Atom a) {
  switch (a) {
    case Atom::E1: return "e1";
    case Atom::E2: return "e2";
    case Atom::M2: return "m2";
    case Atom::M3: return "m3";
  }
  return "?";
}

std::vector<Atom> AtomSet::atoms() const {
  std::vector<Atom> out;
  for (auto a : kAtoms)
    if (contains(a)) out.push_back(a);
  return out;
}

std::string AtomSet::str() const {
  if (empty()) return "0";
  std::string s;
  for (auto a : atoms()) {
    if (!s.empty()) s += '+';
    s += atom_name(a);
  }
  return s;
}

std::vector<AtomSet> FreeZero::elements() const {
  std::vector<AtomSet> out;
  for (std::uint8_t b = 0; b < 16; ++b) out.push_back(AtomSet::from_bits(b));
  return out;
}

FreeZero tables() {
  using enum Atom;
  return FreeZero{
      {builtin("e1"), builtin("e2"), builtin("m2"), builtin("m3")},
      {E1, E2, M2, M3},
      {{
          {AtomSet{E1}, AtomSet{}, AtomSet{}, AtomSet{}},
          {AtomSet{}, AtomSet{E2}, AtomSet{M2}, AtomSet{M3}},
          {AtomSet{}, AtomSet{M2}, AtomSet{}, AtomSet{}},
          {AtomSet{}, AtomSet{M3}, AtomSet{}, AtomSet{E2, M3}},
      }},
  };
}

AtomSet eval_in_free0(const Term& t, const FreeZero& fz) {
  switch (t.op()) {
    case Op::Zero: return AtomSet{};
    case Op::One: return AtomSet::top();
    case Op::Identity: return AtomSet{Atom::E1, Atom::E2};
    case Op::Var: throw InputError("the 0-generated algebra has no variables (found x" +
                                   std::to_string(t.var_index()) + ")");
    case Op::Complement: return ~eval_in_free0(t.child(), fz);
    case Op::Sum: return eval_in_free0(t.lhs(), fz) | eval_in_free0(t.rhs(), fz);
    case Op::Product: return eval_in_free0(t.lhs(), fz) & eval_in_free0(t.rhs(), fz);
    case Op::Converse: {
      AtomSet out;
      for (auto a : eval_in_free0(t.child(), fz).atoms()) out = out | AtomSet{fz.converse(a)};
      return out;
    }
    case Op::Compose: {
      const auto x = eval_in_free0(t.lhs(), fz);
      const auto y = eval_in_free0(t.rhs(), fz);
      AtomSet out;
      for (auto a : x.atoms())
        for (auto b : y.atoms()) out = out | fz.compose(a, b);
      return out;
    }
  }
  return AtomSet{};
}

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.ok ? 0 : 1;
  return n;
}

namespace {

Term sum_of(const FreeZero& fz, AtomSet s) {
  std::vector<Term> terms;
  for (auto a : s.atoms()) terms.push_back(fz.term(a));
  return big_sum(std::move(terms));
}

struct Equation {
  std::string text;
  Term lhs;
  Term rhs;
};

std::vector<Equation> table_equations(const FreeZero& fz) {
  std::vector<Equation> out;
  for (auto a : kAtoms) {
    for (auto b : kAtoms) {
      out.push_back({atom_name(a) + ";" + atom_name(b) + " = " + fz.compose(a, b).str(),
                     compose(fz.term(a), fz.term(b)), sum_of(fz, fz.compose(a, b))});
    }
  }
  for (auto a : kAtoms) {
    out.push_back({atom_name(a) + "~ = " + atom_name(fz.converse(a)), converse(fz.term(a)), fz.term(fz.converse(a))});
  }
  return out;
}

void check_on(const Model& model, const std::vector<Equation>& equations, VerifyReport& report) {
  for (std::size_t i = 0; i < equations.size(); ++i) {
    auto& entry = report.entries[i];
    if (!entry.ok) continue;
    const auto a = eval(equations[i].lhs, model);
    const auto b = eval(equations[i].rhs, model);
    if (a != b) {
      const auto diff = ((a - b) | (b - a)).edges();
      entry.ok = false;
      entry.counterexample = model_to_json(model).dump() + " at " + to_string(diff.front());
    }
  }
}

}  // namespace

VerifyReport verify_tables(const FreeZero& fz, const VerifyOptions& opts) {
  const auto equations = table_equations(fz);
  VerifyReport report;
  for (const auto& eq : equations) report.entries.push_back({eq.text, true, {}});

  const auto sig = Signature::from_h(0, "RS");
  SearchOptions search;
  search.max_base_cap = std::max(search.max_base_cap, opts.max_base);
  for (std::uint32_t base = 1; base <= opts.max_base; ++base) {
    ModelEnumerator models(base, sig, search);
    while (auto model = models.next()) {
      ++report.exhaustive_models;
      check_on(*model, equations, report);
    }
  }
  std::mt19937_64 rng(opts.rng_seed);
  std::uniform_int_distribution<std::uint32_t> base_dist(opts.random_min_base, opts.random_max_base);
  for (std::uint32_t i = 0; i < opts.random_units; ++i) {
    const auto model = random_model(base_dist(rng), sig, rng);
    ++report.random_models;
    check_on(model, equations, report);
  }
  return report;
}

AtomicityResult is_atomic(const FreeZero& fz) {
  const auto elems = fz.elements();
  auto below = [](AtomSet x, AtomSet y) { return (x & y) == x; };
  AtomicityResult result;
  std::vector<AtomSet> minimal;
  for (auto x : elems) {
    if (x.empty()) continue;
    bool is_min = true;
    for (auto y : elems)
      if (!y.empty() && y != x && below(y, x)) is_min = false;
    if (is_min) minimal.push_back(x);
  }
  result.atomic = true;
  for (auto x : elems) {
    if (x.empty()) continue;
    bool dominates = false;
    for (auto a : minimal) dominates = dominates || below(a, x);
    result.atomic = result.atomic && dominates;
  }
  for (auto a : minimal) {
    const auto atoms = a.atoms();
    if (atoms.size() == 1) result.atoms.push_back(atoms.front());
  }
  return result;
}

nlohmann::json free_zero_to_json(const FreeZero& fz) {
  nlohmann::json j;
  for (auto a : kAtoms) j["atoms"][atom_name(a)] = render(fz.term(a));
  for (auto a : kAtoms) j["converse"][atom_name(a)] = atom_name(fz.converse(a));
  for (auto a : kAtoms) {
    for (auto b : kAtoms) {
      auto entry = nlohmann::json::array();
      for (auto c : fz.compose(a, b).atoms()) entry.push_back(atom_name(c));
      j["composition"][atom_name(a)][atom_name(b)] = entry;
    }
  }
  return j;
}

std::string free_zero_table_text(const FreeZero& fz) {
  std::ostringstream out;
  out << "atoms:\n";
  for (auto a : kAtoms) out << "  " << atom_name(a) << " = " << render(fz.term(a)) << "\n";
  out << "converse:\n";
  for (auto a : kAtoms) out << "  " << atom_name(a) << "~ = " << atom_name(fz.converse(a)) << "\n";
  out << "composition:\n";
  out << "  " << std::setw(4) << ";";
  for (auto b : kAtoms) out << std::setw(8) << atom_name(b);
  out << "\n";
  for (auto a : kAtoms) {
    out << "  " << std::setw(4) << atom_name(a);
    for (auto b : kAtoms) out << std::setw(8) << fz.compose(a, b).str();
    out << "\n";
  }
  return out.str();
}

}  // namespace relalg
