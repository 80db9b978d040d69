#include "relalg/acceptance.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "relalg/dnf.hpp"
#include "relalg/error.hpp"
#include "relalg/free_zero.hpp"
#include "relalg/model.hpp"
#include "relalg/normal_form.hpp"
#include "relalg/witness.hpp"

namespace relalg {

namespace {

// Time limits per criterion, in seconds.
constexpr double kTablesLimit = 60;
constexpr double kAtomsLimit = 10;
constexpr double kPartitionLimit = 120;
constexpr double kDnfLimit = 300;
constexpr double kWitnessLimitPerConfig = 600;
constexpr double kGuardLimit = 10;
constexpr double kSearchLimit = 10;

constexpr std::uint64_t kPartitionSeed = 0x5eed0003;
constexpr std::uint64_t kDnfSeed = 0x5eed0004;

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome check_tables() {
  using enum Atom;
  const auto fz = tables();
  Outcome o;
  // The expected table, row by row.
  const std::array<std::array<AtomSet, 4>, 4> expected{{
      {AtomSet{E1}, AtomSet{}, AtomSet{}, AtomSet{}},
      {AtomSet{}, AtomSet{E2}, AtomSet{M2}, AtomSet{M3}},
      {AtomSet{}, AtomSet{M2}, AtomSet{}, AtomSet{}},
      {AtomSet{}, AtomSet{M3}, AtomSet{}, AtomSet{E2, M3}},
  }};
  for (auto a : kAtoms) {
    if (fz.converse(a) != a) o = {false, "converse of " + atom_name(a) + " is not itself"};
    for (auto b : kAtoms)
      if (fz.compose(a, b) != expected[static_cast<int>(a)][static_cast<int>(b)])
        o = {false, "entry " + atom_name(a) + ";" + atom_name(b) + " differs"};
  }
  if (!o.pass) return o;
  const auto report = verify_tables(fz);
  std::ostringstream d;
  d << report.entries.size() - report.failures() << "/" << report.entries.size() << " entries hold on "
    << report.exhaustive_models << " exhaustive + " << report.random_models << " random units";
  o.detail = d.str();
  o.pass = report.failures() == 0 && report.exhaustive_models == 75 && report.random_models == 1000;
  for (const auto& e : report.entries)
    if (!e.ok) o.detail += "; " + e.equation + " fails at " + e.counterexample;
  return o;
}

Outcome check_atoms() {
  const auto fz = tables();
  const auto res = is_atomic(fz);
  const std::vector<Atom> all(kAtoms.begin(), kAtoms.end());
  if (!res.atomic || res.atoms != all) return {false, "atom list differs from e1,e2,m2,m3"};
  const auto sig = Signature::from_h(0, "RS");
  std::uint64_t models = 0;
  for (std::uint32_t base = 1; base <= 4; ++base) {
    ModelEnumerator it(base, sig);
    while (auto model = it.next()) {
      ++models;
      std::vector<Relation> ext;
      for (auto a : kAtoms) ext.push_back(eval(fz.term(a), *model));
      Relation sum(model->base);
      for (std::size_t i = 0; i < ext.size(); ++i) {
        sum = sum | ext[i];
        for (std::size_t j = i + 1; j < ext.size(); ++j)
          if (!(ext[i] & ext[j]).empty()) return {false, "atoms overlap on " + model_to_json(*model).dump()};
      }
      if (sum != model->unit) return {false, "atoms miss part of the unit on " + model_to_json(*model).dump()};
    }
  }
  return {true, "4 atoms, disjoint with sum 1 on " + std::to_string(models) + " units"};
}

Outcome check_partition_theorem() {
  std::mt19937_64 rng(kPartitionSeed);
  const char* hs[] = {"", "R", "S", "RS"};
  std::uint64_t edges = 0;
  const std::uint32_t kModels = 200;
  for (std::uint32_t i = 0; i < kModels; ++i) {
    const auto sig = Signature::from_h(i % 3, hs[(i / 3) % 4]);
    const std::uint32_t base = 1 + static_cast<std::uint32_t>(rng() % 5);
    const auto model = random_model(base, sig, rng);
    for (std::uint32_t n = 0; n <= 3; ++n) {
      const auto report = check_partition(model, n, false);
      edges += report.edges_checked;
      if (!report.ok())
        return {false, "degree " + std::to_string(n) + " on " + model_to_json(model).dump() + ": " +
                           (report.violations.empty() ? "" : report.violations.front())};
    }
  }
  std::uint64_t ext_models = 0;
  const auto sig = Signature::from_h(0, "");
  for (std::uint32_t base = 1; base <= 3; ++base) {
    ModelEnumerator it(base, sig);
    while (auto model = it.next()) {
      ++ext_models;
      for (std::uint32_t n = 0; n <= 1; ++n) {
        const auto report = check_partition(*model, n, true);
        if (!report.ok() || !report.extensional_run)
          return {false, "extensional degree " + std::to_string(n) + " on " + model_to_json(*model).dump()};
      }
    }
  }
  return {true, std::to_string(kModels) + " random models (" + std::to_string(edges) + " edge checks), " +
                    std::to_string(ext_models) + " units with all 128 rendered forms"};
}

Outcome check_dnf() {
  std::mt19937_64 rng(kDnfSeed);
  const char* hs[] = {"", "R", "S", "RS"};
  const std::uint32_t kTerms = 100;
  const std::uint32_t kModelsPerTerm = 20;
  for (std::uint32_t i = 0; i < kTerms; ++i) {
    const std::uint32_t m = i % 2;
    const Term t = random_term(m, 3, rng);
    const auto d = dnf(t, m);
    for (std::uint32_t j = 0; j < kModelsPerTerm; ++j) {
      const auto sig = Signature::from_h(m, hs[rng() % 4]);
      const auto model = random_model(1 + static_cast<std::uint32_t>(rng() % 4), sig, rng);
      const auto truth = eval(t, model);
      EdgeLabeler labeler(model);
      for (const auto& e : model.unit.edges()) {
        if (truth.contains(e) != d.forms.contains(labeler.form(e, d.degree)))
          return {false, "term " + render(t) + " disagrees at " + to_string(e) + " on " + model_to_json(model).dump()};
      }
    }
  }
  // Refinement splits the two degree-0 forms into disjoint blocks covering F_1.
  const auto f0 = enum_forms(0, 0);
  const auto f1 = enum_forms(0, 1);
  std::size_t covered = 0;
  std::vector<Form> seen;
  for (const auto& f : f0->forms) {
    for (const auto& g : refine(f, 0)) {
      if (project(g) != f) return {false, "refinement does not project back"};
      seen.push_back(g);
    }
    covered += refine(f, 0).size();
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return {false, "refinements overlap"};
  if (seen != f1->forms) return {false, "refinements do not cover F_1"};
  return {true, std::to_string(kTerms) + " terms x " + std::to_string(kModelsPerTerm) + " models; refine covers " +
                    std::to_string(covered) + "/" + std::to_string(f1->forms.size()) + " degree-1 forms"};
}

Outcome check_witnesses(double& worst_seconds) {
  struct Config {
    std::uint32_t m;
    const char* h;
  };
  const Config configs[] = {{0, ""}, {0, "R"}, {0, "S"}, {1, "RS"}};
  std::ostringstream d;
  worst_seconds = 0;
  for (const auto& c : configs) {
    const auto sig = Signature::from_h(c.m, c.h);
    const auto start = std::chrono::steady_clock::now();
    for (std::uint32_t q : {1u, 2u}) {
      const auto tag = "m=" + std::to_string(c.m) + " H={" + sig.h_string() + "} q=" + std::to_string(q);
      const auto run = run_witness(default_seed(sig), q, sig);
      if (!check_consistency(run.graph).ok()) return {false, tag + ": consistency"};
      const auto check = verify_certificate(run.certificate);
      if (!check.ok()) return {false, tag + ": " + check.problems.front()};
      for (std::uint32_t i = 0; i <= q; ++i)
        if (run.graph.depth(run.zigzag.edges[i]) != q - i) return {false, tag + ": depth ladder"};
      if (run.certificate.at("stability_round").get<std::uint32_t>() > q + 3) return {false, tag + ": late stability"};
      d << tag << " ok; ";
    }
    worst_seconds =
        std::max(worst_seconds, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return {true, d.str() + "all certificates re-verified"};
}

Outcome check_guard() {
  const auto sig = Signature::from_h(0, "RS");
  try {
    witness_nonatomicity(default_seed(sig), 1, sig);
  } catch (const InputError& ex) {
    const std::string what = ex.what();
    if (what.find("atomic case") != std::string::npos) return {true, "refused: " + what};
    return {false, "wrong error: " + what};
  }
  return {false, "a certificate was produced"};
}

Outcome check_search() {
  const auto sig = Signature::from_h(0, "RS");
  const Term t = builtin("t");
  if (find_model(t, sig, 2)) return {false, "t has a model of base <= 2"};
  const auto found = find_model(t, sig, 3);
  if (!found) return {false, "no model of base 3"};
  if (found->model.base != 3 || !eval(t, found->model).contains(found->edge)) return {false, "bad witness"};
  return {true, "none at base <= 2; base 3 witness at " + to_string(found->edge)};
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name << "  (" << std::fixed
      << std::setprecision(2) << r.seconds << "s, limit " << std::setprecision(0) << r.limit_seconds << "s)  "
      << r.detail;
  return out.str();
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only) {
  struct Entry {
    int id;
    const char* name;
    double limit;
    std::function<Outcome(double&)> run;
  };
  auto timed = [](Outcome (*f)()) { return [f](double&) { return f(); }; };
  const std::vector<Entry> entries = {
      {1, "free-algebra tables", kTablesLimit, timed(check_tables)},
      {2, "atoms of the 0-generated algebra", kAtomsLimit, timed(check_atoms)},
      {3, "forms partition every unit", kPartitionLimit, timed(check_partition_theorem)},
      {4, "disjunctive normal forms", kDnfLimit, timed(check_dnf)},
      {5, "non-atomicity certificates", kWitnessLimitPerConfig, check_witnesses},
      {6, "atomic-case guard", kGuardLimit, timed(check_guard)},
      {7, "smallest model of t", kSearchLimit, timed(check_search)},
  };

  std::vector<CriterionResult> results;
  for (const auto& e : entries) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    r.limit_seconds = e.limit;
    const auto start = std::chrono::steady_clock::now();
    double measured = -1;  // set by checks that time their own sub-runs
    Outcome o;
    try {
      o = e.run(measured);
    } catch (const std::exception& ex) {
      o = {false, std::string("error: ") + ex.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limited = measured >= 0 ? measured : r.seconds;
    r.pass = o.pass && limited <= e.limit;
    r.detail = o.detail;
    if (o.pass && !r.pass) r.detail += " [over time limit]";
    out << format_result(r) << std::endl;
    results.push_back(r);
  }
  return results;
}

}  // namespace relalg
