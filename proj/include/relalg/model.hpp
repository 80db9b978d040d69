#pragma once

// Finite H-relativized relation set algebras. A model is a base set
// {0..base-1}, a unit W of ordered pairs over the base and one edge set per
// free variable. Composition and converse are cut down to W.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "relalg/term.hpp"

namespace relalg {

struct Edge {
  std::uint32_t r = 0;
  std::uint32_t s = 0;
  bool is_loop() const { return r == s; }
  Edge reversed() const { return {s, r}; }
  auto operator<=>(const Edge&) const = default;
};

std::string to_string(const Edge& e);

// Dense Boolean matrix over {0..n-1}.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::uint32_t n) : n_(n), bits_(static_cast<std::size_t>(n) * n, 0) {}

  std::uint32_t base() const { return n_; }
  bool contains(std::uint32_t r, std::uint32_t s) const { return r < n_ && s < n_ && bits_[index(r, s)] != 0; }
  bool contains(const Edge& e) const { return contains(e.r, e.s); }
  void insert(std::uint32_t r, std::uint32_t s) { bits_[index(r, s)] = 1; }
  void insert(const Edge& e) { insert(e.r, e.s); }
  void erase(const Edge& e) { bits_[index(e.r, e.s)] = 0; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  // Pairs in lexicographic order.
  std::vector<Edge> edges() const;

  bool subset_of(const Relation& other) const;
  Relation operator|(const Relation& other) const;
  Relation operator&(const Relation& other) const;
  // Set difference.
  Relation operator-(const Relation& other) const;
  bool operator==(const Relation& other) const = default;

  static Relation full(std::uint32_t n);
  static Relation identity(std::uint32_t n);

 private:
  std::size_t index(std::uint32_t r, std::uint32_t s) const { return static_cast<std::size_t>(r) * n_ + s; }
  std::uint32_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

using EdgeSet = Relation;

// Number of generators m and the closure properties H of the unit.
struct Signature {
  std::uint32_t m = 0;
  bool reflexive = false;
  bool symmetric = false;

  // Accepts "", "R", "S", "RS" (also "SR").
  static Signature from_h(std::uint32_t m, std::string_view h);
  std::string h_string() const;
  bool atomic_case() const { return m == 0 && reflexive && symmetric; }
  bool operator==(const Signature&) const = default;
};

struct Model {
  std::uint32_t base = 0;
  Relation unit;
  std::vector<Relation> valuation;

  std::uint32_t arity() const { return static_cast<std::uint32_t>(valuation.size()); }
  bool operator==(const Model&) const = default;

  // Base n with W = U x U and m empty valuations.
  static Model full(std::uint32_t n, std::uint32_t m = 0);
};

struct PointedModel {
  Model model;
  Edge edge;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_model(const Model& model, const Signature& sig);

// Relativized semantics. Throws InputError if a variable has no valuation.
EdgeSet eval(const Term& t, const Model& model);

// Enumeration and search limits.
struct SearchOptions {
  std::uint32_t max_base_cap = 6;         // bases above this are refused
  std::uint64_t max_units = 1u << 20;     // units enumerated per base
  std::uint32_t valuation_samples = 16;   // random valuations per unit (base > 2, m > 0)
  std::uint64_t max_valuations = 1u << 12;  // exhaustive valuations per unit (base <= 2)
  std::uint64_t rng_seed = 1;
};

// Number of H-units over a base of size n, saturated at UINT64_MAX.
std::uint64_t count_units(std::uint32_t n, const Signature& sig);

// Single-consumer stream over every H-unit of a given base, in a fixed order,
// each paired with valuations when m > 0 (exhaustive for base <= 2, otherwise
// the all-empty, all-unit and seeded random valuations).
class ModelEnumerator {
 public:
  ModelEnumerator(std::uint32_t base, const Signature& sig, const SearchOptions& opts = {});
  std::optional<Model> next();

 private:
  bool load_unit();
  void load_valuations();

  std::uint32_t base_;
  Signature sig_;
  SearchOptions opts_;
  std::vector<Edge> free_pairs_;  // pairs (r,s) with r<=s when symmetric
  Relation forced_;
  std::uint64_t unit_count_;
  std::uint64_t next_unit_ = 0;
  Relation current_unit_;
  std::vector<std::vector<Relation>> valuations_;
  std::size_t next_valuation_ = 0;
  std::mt19937_64 rng_;
};

// Uniformly random H-unit of the given base, with independent random
// valuations (each pair of the unit kept with probability 1/2).
Model random_model(std::uint32_t base, const Signature& sig, std::mt19937_64& rng);

// Smallest base first, then enumeration order, then lexicographic edge.
std::optional<PointedModel> find_model(const Term& t, const Signature& sig, std::uint32_t max_base,
                                       const SearchOptions& opts = {});

struct ValidityResult {
  bool ok = true;  // no counterexample within the bound; not a proof
  std::optional<PointedModel> counterexample;
  std::uint64_t models_checked = 0;
};

ValidityResult check_validity(const Term& lhs, const Term& rhs, const Signature& sig,
                              std::uint32_t max_base, const SearchOptions& opts = {});

// {"base": n, "unit": [[r,s],...], "valuation": [[[r,s],...], ...]}
nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);
nlohmann::json edges_to_json(const Relation& rel);

}  // namespace relalg
