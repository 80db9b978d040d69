// Command-line front end.
//
// Exit codes: 0 success, 1 input error, 2 budget exceeded, 3 property violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "relalg/acceptance.hpp"
#include "relalg/dnf.hpp"
#include "relalg/error.hpp"
#include "relalg/free_zero.hpp"
#include "relalg/model.hpp"
#include "relalg/normal_form.hpp"
#include "relalg/term.hpp"
#include "relalg/witness.hpp"

using namespace relalg;
using nlohmann::json;

namespace {

struct Config {
  std::uint32_t m = 0;
  std::string h = "RS";
  std::uint32_t max_base = 4;
  std::uint64_t budget = kDefaultFormBudget;
  std::uint32_t rounds = 0;
  std::string seed_model;
  std::uint32_t q = 1;
  std::string out;
  std::string format = "json";
  std::uint64_t rng_seed = 20240521;

  json echo() const {
    return {{"m", m},         {"H", h},   {"max_base", max_base}, {"budget", budget}, {"rounds", rounds},
            {"seed_model", seed_model}, {"q", q}, {"rng_seed", rng_seed}};
  }
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw InputError(path + ": " + ex.what());
  }
}

// Either a bare model or {"model": ..., "edge": [r,s]} as written by `search`.
PointedModel read_pointed(const std::string& path) {
  const json j = read_json_file(path);
  PointedModel pm;
  if (j.contains("model")) {
    pm.model = model_from_json(j.at("model"));
  } else {
    pm.model = model_from_json(j);
  }
  pm.edge = {0, 1};
  if (j.contains("edge")) pm.edge = {j["edge"].at(0).get<std::uint32_t>(), j["edge"].at(1).get<std::uint32_t>()};
  return pm;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw InputError("cannot write " + cfg.out);
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
  std::cout << cfg.out << '\n';
}

int cmd_eval(const Config& cfg, const std::string& term_text) {
  if (cfg.seed_model.empty()) throw InputError("eval needs --seed-model");
  const Model model = read_pointed(cfg.seed_model).model;
  const EdgeSet result = eval(parse_or_builtin(term_text), model);
  if (cfg.format == "json") {
    emit(cfg, edges_to_json(result).dump() + "\n");
  } else {
    std::string text;
    for (const auto& e : result.edges()) text += to_string(e) + "\n";
    emit(cfg, text);
  }
  return 0;
}

int cmd_dnf(const Config& cfg, const std::string& term_text) {
  const Term t = parse_or_builtin(term_text);
  const auto d = dnf(t, cfg.m);
  const auto members = d.forms.materialize(cfg.m, cfg.budget);
  json j;
  j["config"] = cfg.echo();
  j["term"] = render(t);
  j["degree"] = d.degree;
  j["count"] = members.size();
  j["forms"] = json::array();
  for (const auto& f : members) j["forms"].push_back(form_to_json(f));
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_free0(const Config& cfg, bool verify) {
  const auto fz = tables();
  if (!verify) {
    emit(cfg, cfg.format == "text" ? free_zero_table_text(fz) : free_zero_to_json(fz).dump(2) + "\n");
    return 0;
  }
  VerifyOptions opts;
  opts.max_base = cfg.max_base;
  opts.rng_seed = cfg.rng_seed;
  const auto report = verify_tables(fz, opts);
  if (cfg.format == "text") {
    std::ostringstream out;
    for (const auto& e : report.entries)
      out << (e.ok ? "ok    " : "FAIL  ") << e.equation << (e.ok ? "" : "  " + e.counterexample) << "\n";
    out << report.entries.size() - report.failures() << "/" << report.entries.size() << " entries ok over "
        << report.exhaustive_models << " exhaustive and " << report.random_models << " random units\n";
    emit(cfg, out.str());
  } else {
    json j;
    j["config"] = cfg.echo();
    j["exhaustive_models"] = report.exhaustive_models;
    j["random_models"] = report.random_models;
    j["entries"] = json::array();
    for (const auto& e : report.entries)
      j["entries"].push_back({{"equation", e.equation}, {"ok", e.ok}, {"counterexample", e.counterexample}});
    j["failures"] = report.failures();
    emit(cfg, j.dump(2) + "\n");
  }
  return report.failures() == 0 ? 0 : 3;
}

int cmd_witness(Config cfg) {
  const auto sig = Signature::from_h(cfg.m, cfg.h);
  const PointedModel seed = cfg.seed_model.empty() ? default_seed(sig) : read_pointed(cfg.seed_model);
  WitnessOptions opts;
  opts.rounds = cfg.rounds;
  const auto run = run_witness(seed, cfg.q, sig, opts);
  if (cfg.format == "dot") {
    emit(cfg, graph_to_dot(run.graph, "G") + graph_to_dot(run.extended, "G_plus"));
    return 0;
  }
  json cert = run.certificate;
  cert["config"] = cfg.echo();
  if (cfg.out.empty()) cfg.out = "certificate.json";
  emit(cfg, cert.dump(2) + "\n");
  return 0;
}

int cmd_search(Config cfg, const std::string& term_text) {
  const auto sig = Signature::from_h(cfg.m, cfg.h);
  SearchOptions opts;
  opts.rng_seed = cfg.rng_seed;
  const auto found = find_model(parse_or_builtin(term_text), sig, cfg.max_base, opts);
  json j;
  j["config"] = cfg.echo();
  j["found"] = found.has_value();
  if (found) {
    j["model"] = model_to_json(found->model);
    j["edge"] = {found->edge.r, found->edge.s};
  }
  emit(cfg, j.dump(2) + "\n");
  return found ? 0 : 3;
}

int cmd_partition(const Config& cfg, std::uint32_t degree, bool extensional) {
  if (cfg.seed_model.empty()) throw InputError("partition needs --seed-model");
  const Model model = read_pointed(cfg.seed_model).model;
  const auto report = check_partition(model, degree, extensional, cfg.budget);
  json j;
  j["config"] = cfg.echo();
  j["degree"] = degree;
  j["edges_checked"] = report.edges_checked;
  j["semantic_ok"] = report.semantic_ok;
  j["extensional_run"] = report.extensional_run;
  j["extensional_ok"] = report.extensional_ok;
  j["forms_rendered"] = report.forms_rendered;
  j["violations"] = report.violations;
  emit(cfg, j.dump(2) + "\n");
  return report.ok() ? 0 : 3;
}

int cmd_selftest(const std::vector<int>& only) {
  const auto results = run_acceptance(std::cout, only);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativized relation algebras: evaluation, normal forms, free algebras and witnesses"};
  app.require_subcommand(1);
  Config cfg;
  std::string term_text;
  bool verify = false;
  bool extensional = false;
  std::uint32_t degree = 1;
  std::vector<int> only;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "number of generators");
    sub->add_option("--H", cfg.h, "closure properties of the unit: \"\", R, S or RS");
    sub->add_option("--max-base", cfg.max_base, "largest base to enumerate");
    sub->add_option("--budget", cfg.budget, "largest form universe to enumerate");
    sub->add_option("--rounds", cfg.rounds, "construction rounds (0 means q+3)");
    sub->add_option("--seed-model", cfg.seed_model, "model file");
    sub->add_option("--q", cfg.q, "degree of the seed form");
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--format", cfg.format, "json, text or dot")
        ->check(CLI::IsMember({"json", "text", "dot"}));
    sub->add_option("--rng-seed", cfg.rng_seed, "seed for randomized checks");
  };

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a term on a model");
  eval_cmd->add_option("--term", term_text, "term or builtin name")->required();
  common(eval_cmd);
  auto* dnf_cmd = app.add_subcommand("dnf", "list the normal forms of a term");
  dnf_cmd->add_option("--term", term_text, "term or builtin name")->required();
  common(dnf_cmd);
  auto* free0_cmd = app.add_subcommand("free0", "tables of the 0-generated free algebra");
  free0_cmd->add_flag("--verify", verify, "check every entry on finite models");
  common(free0_cmd);
  auto* witness_cmd = app.add_subcommand("witness", "build a non-atomicity certificate");
  common(witness_cmd);
  auto* search_cmd = app.add_subcommand("search", "smallest model satisfying a term");
  search_cmd->add_option("--term", term_text, "term or builtin name")->required();
  common(search_cmd);
  auto* partition_cmd = app.add_subcommand("partition", "check that forms partition a model's unit");
  partition_cmd->add_option("--degree", degree, "form degree");
  partition_cmd->add_flag("--extensional", extensional, "also render and evaluate every form");
  common(partition_cmd);
  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance checks");
  selftest_cmd->add_option("--only", only, "criterion numbers to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*eval_cmd) return cmd_eval(cfg, term_text);
    if (*dnf_cmd) return cmd_dnf(cfg, term_text);
    if (*free0_cmd) return cmd_free0(cfg, verify);
    if (*witness_cmd) return cmd_witness(cfg);
    if (*search_cmd) return cmd_search(cfg, term_text);
    if (*partition_cmd) return cmd_partition(cfg, degree, extensional);
    if (*selftest_cmd) return cmd_selftest(only);
  } catch (const BudgetExceeded& ex) {
    std::cerr << "budget exceeded: " << ex.what() << "\n";
    return 2;
  } catch (const PropertyViolation& ex) {
    std::cerr << "property violation: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
