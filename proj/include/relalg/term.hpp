#pragma once

// Terms over the relation-algebra signature: Boolean operations, composition,
// converse and the identity constant.
//
// Concrete syntax (ASCII):
//
//   term  := sum
//   sum   := prod ('+' prod)*
//   prod  := comp ('.' comp)*
//   comp  := unary (';' unary)*
//   unary := '-' unary | atom '~'*
//   atom  := '0' | '1' | "1'" | "0'" | 'x' digits | '(' term ')'
//
// `0'` is shorthand for -1' (diversity). Binary operators associate to the
// left. Whitespace is ignored.

#include <compare>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace relalg {

enum class Op : std::uint8_t {
  Zero,
  One,
  Identity,
  Var,
  Complement,
  Sum,
  Product,
  Compose,
  Converse,
};

class Term {
 public:
  static Term zero();
  static Term one();
  static Term identity();
  static Term diversity();  // -1'
  static Term var(std::uint32_t index);

  friend Term operator-(const Term& t);                    // complement
  friend Term operator+(const Term& a, const Term& b);     // join
  friend Term operator*(const Term& a, const Term& b);     // meet
  friend Term compose(const Term& a, const Term& b);
  friend Term converse(const Term& t);

  Op op() const { return node_->op; }
  std::uint32_t var_index() const { return node_->var; }
  // Only child of a unary node, left child of a binary one.
  const Term& lhs() const { return node_->kids[0]; }
  const Term& rhs() const { return node_->kids[1]; }
  const Term& child() const { return node_->kids[0]; }
  bool is_leaf() const { return node_->kids.empty(); }

  // Height of the tree; leaves have depth 1.
  std::uint32_t depth() const { return node_->depth; }
  std::size_t size() const;
  // One more than the largest variable index used, 0 for closed terms.
  std::uint32_t arity() const;

  bool operator==(const Term& other) const;
  // Canonical total order: structural depth, then node kind, then variable
  // index, then children lexicographically.
  std::strong_ordering operator<=>(const Term& other) const;

 private:
  struct Node {
    Op op;
    std::uint32_t var = 0;
    std::uint32_t depth = 1;
    std::vector<Term> kids;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Op op, std::vector<Term> kids, std::uint32_t var = 0);

  std::shared_ptr<const Node> node_;
};

Term parse(std::string_view text);
std::string render(const Term& t);

// Left-nested meet of the given terms in canonical order, duplicates dropped.
// The empty product is 1.
Term big_product(std::vector<Term> terms);
Term big_sum(std::vector<Term> terms);

// Named terms: t, e1, e2, m2, m3, diversity. Throws InputError otherwise.
Term builtin(std::string_view name);
std::vector<std::string> builtin_names();

// Accepts either a builtin name or concrete syntax.
Term parse_or_builtin(std::string_view text);

// Random term over x0..x(m-1) with nesting depth at most `depth`.
Term random_term(std::uint32_t m, std::uint32_t depth, std::mt19937_64& rng);

}  // namespace relalg
