#pragma once

// Normal forms of degree n over m generators.
//
// A degree-0 form fixes, for every symbol of D_m = {1', x0, ..., x(m-1)},
// whether an edge lies below it or below its complement (its "color"). A
// degree-(n+1) form additionally fixes, for every pair (a,b) of degree-n
// forms, whether the edge lies below a;b, and for every degree-n form a,
// whether it lies below the converse of a. Only the positive entries are
// stored; every closure entry that is not listed is negative.
//
// Forms are hash-consed in a process-wide table: two forms are equal exactly
// when their handles are equal.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "relalg/model.hpp"
#include "relalg/term.hpp"

namespace relalg {

// Bit 0 is the identity flag, bit i+1 the flag of x_i.
using Color = std::uint32_t;
constexpr Color kWhite = 1u;
constexpr Color var_bit(std::uint32_t i) { return Color{1} << (i + 1); }
// All 2^(m+1) colors are 0 .. color_count(m)-1.
constexpr std::uint64_t color_count(std::uint32_t m) { return std::uint64_t{1} << (m + 1); }
std::vector<std::string> color_symbols(Color color);

struct FormNode;

class Form {
 public:
  using Pair = std::pair<Form, Form>;

  Form() = default;

  // Interns the form. Entries are deduplicated and sorted canonically.
  // Throws InputError if an entry has the wrong degree.
  static Form make(std::uint32_t degree, Color color, std::vector<Pair> sub = {}, std::vector<Form> conv = {});
  static Form color_form(Color color) { return make(0, color); }

  bool valid() const { return node_ != nullptr; }
  std::uint32_t degree() const;
  Color color() const;
  bool is_white() const { return (color() & kWhite) != 0; }
  const std::vector<Pair>& sub() const;
  const std::vector<Form>& conv() const;
  std::uint64_t hash() const;
  // 16 hex digits of hash().
  std::string hash_hex() const;

  bool operator==(const Form& other) const { return node_ == other.node_; }
  // Canonical structural order: degree, color, composition entries, converse entries.
  std::strong_ordering operator<=>(const Form& other) const;

  struct Hasher {
    std::size_t operator()(const Form& f) const { return static_cast<std::size_t>(f.hash()); }
  };

 private:
  friend class FormTable;
  friend Form project(const Form& f);
  explicit Form(const FormNode* node) : node_(node) {}
  const FormNode* node_ = nullptr;
};

// Number of interned forms so far (diagnostics).
std::size_t interned_form_count();

// Partial extraction maps. Degree-0 forms are outside every domain.
std::optional<Form> conv_f(const Form& f);   // the unique converse entry
std::optional<Form> right_R(const Form& f);  // the unique white second coordinate
std::optional<Form> left_L(const Form& f);   // the unique white first coordinate

// The degree-(n-1) form implied by a degree-n form. Throws InputError at degree 0.
Form project(const Form& f);
// Projects down to the requested degree (<= f.degree()).
Form project_to(const Form& f, std::uint32_t degree);
// Two forms meet nontrivially iff the finer one projects onto the coarser one.
bool compatible(const Form& a, const Form& b);

// Forms realised by the edges of a fixed model, memoised per edge and degree.
// The model must outlive the labeler. m is the model's valuation length.
class EdgeLabeler {
 public:
  explicit EdgeLabeler(const Model& model);
  // Throws InputError if the edge is not in the unit.
  Form form(const Edge& e, std::uint32_t degree);
  const Model& model() const { return model_; }

 private:
  Form compute(const Edge& e, std::uint32_t degree);
  const Model& model_;
  std::vector<std::unordered_map<std::uint64_t, Form>> memo_;
  std::vector<std::vector<std::uint32_t>> out_;  // unit successors per point
};

Form form_of_edge(const PointedModel& pm, std::uint32_t degree);

// The neighbours of an edge: every unit edge sharing an endpoint with it.
EdgeSet neighbors(const Model& model, const Edge& e);

// Top-down check of the literal meaning of a form at an edge: color, every
// listed entry realised, every realised entry listed.
bool satisfies(const Model& model, const Edge& e, const Form& f);

// ---------------------------------------------------------------- extensional tier

constexpr std::uint64_t kDefaultFormBudget = std::uint64_t{1} << 20;

// |F_degree| for m generators, saturated at UINT64_MAX.
std::uint64_t universe_size(std::uint32_t m, std::uint32_t degree);

struct FormUniverse {
  std::uint32_t m = 0;
  std::uint32_t degree = 0;
  std::vector<Form> forms;  // canonical order
};

// Every syntactic form of the given degree. Cached per (m, degree).
// Throws BudgetExceeded with the predicted size.
std::shared_ptr<const FormUniverse> enum_forms(std::uint32_t m, std::uint32_t degree,
                                               std::uint64_t budget = kDefaultFormBudget);

// All degree-(n+1) forms projecting onto f.
std::vector<Form> refine(const Form& f, std::uint32_t m, std::uint64_t budget = kDefaultFormBudget);

// The form as a term: color literals, the positive listed entries and the
// negation of every unlisted closure entry.
Term to_term(const Form& f, std::uint32_t m, std::uint64_t budget = kDefaultFormBudget);

struct PartitionReport {
  bool semantic_ok = true;
  std::uint64_t edges_checked = 0;
  bool extensional_run = false;
  bool extensional_ok = true;
  std::uint64_t forms_rendered = 0;
  std::vector<std::string> violations;
  bool ok() const { return semantic_ok && extensional_ok; }
};

// Semantic tier: every edge realises exactly one degree-n form. Extensional
// tier (when `extensional`): the rendered forms of F_n partition the unit.
PartitionReport check_partition(const Model& model, std::uint32_t degree, bool extensional,
                                std::uint64_t budget = kDefaultFormBudget);

// ---------------------------------------------------------------- serialization

// {"degree": k, "color": [...], "sub": [[f,f],...], "conv": [f,...]}, children inline.
nlohmann::json form_to_json(const Form& f);
Form form_from_json(const nlohmann::json& j);

// Content-addressed table: each form stored once under its hash, children
// referenced by hash.
class FormTableWriter {
 public:
  std::string add(const Form& f);
  const nlohmann::json& table() const { return table_; }

 private:
  nlohmann::json table_ = nlohmann::json::object();
  std::unordered_map<std::string, Form> seen_;
};

class FormTableReader {
 public:
  explicit FormTableReader(const nlohmann::json& table) : table_(table) {}
  Form get(const std::string& hash);

 private:
  const nlohmann::json& table_;
  std::unordered_map<std::string, Form> done_;
};

}  // namespace relalg
