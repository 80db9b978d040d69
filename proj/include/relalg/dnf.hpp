#pragma once

// Rewriting a term into a disjunction of normal forms of one degree.
//
// The set of forms is kept as a characteristic predicate over F_k rather
// than an explicit list, since F_k is astronomically large beyond degree 1.
// `materialize` lists the members when the universe fits the budget.

#include <cstdint>
#include <memory>
#include <vector>

#include "relalg/normal_form.hpp"
#include "relalg/term.hpp"

namespace relalg {

class FormSet {
 public:
  static FormSet empty(std::uint32_t degree);
  static FormSet all(std::uint32_t degree);
  // Degree-0 forms whose color has every bit of `mask`.
  static FormSet color_has(Color mask);
  static FormSet explicit_set(std::uint32_t degree, std::vector<Form> forms);

  // Same members seen one degree up: every refinement of every member.
  FormSet lifted() const;
  FormSet lifted_to(std::uint32_t degree) const;
  FormSet operator|(const FormSet& other) const;
  FormSet operator&(const FormSet& other) const;
  FormSet complement() const;
  // Degree+1 forms listing some (a,b) with a in *this and b in other.
  FormSet composed_with(const FormSet& other) const;
  // Degree+1 forms listing some converse entry in *this.
  FormSet conversed() const;

  std::uint32_t degree() const { return degree_; }
  bool contains(const Form& f) const;
  std::vector<Form> materialize(std::uint32_t m, std::uint64_t budget = kDefaultFormBudget) const;

  struct Node;

 private:
  FormSet(std::uint32_t degree, std::shared_ptr<const Node> node) : degree_(degree), node_(std::move(node)) {}
  std::uint32_t degree_ = 0;
  std::shared_ptr<const Node> node_;
};

struct DnfResult {
  std::uint32_t degree = 0;
  FormSet forms;
};

// Throws InputError if the term uses a variable >= m.
DnfResult dnf(const Term& t, std::uint32_t m);

}  // namespace relalg
