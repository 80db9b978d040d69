#include "relalg/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "relalg/error.hpp"

namespace relalg {

Term Term::make(Op op, std::vector<Term> kids, std::uint32_t var) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->var = var;
  std::uint32_t d = 0;
  for (const auto& k : kids) d = std::max(d, k.depth());
  node->depth = d + 1;
  node->kids = std::move(kids);
  return Term(std::move(node));
}

Term Term::zero() { return make(Op::Zero, {}); }
Term Term::one() { return make(Op::One, {}); }
Term Term::identity() { return make(Op::Identity, {}); }
Term Term::diversity() { return -identity(); }
Term Term::var(std::uint32_t index) { return make(Op::Var, {}, index); }

Term operator-(const Term& t) { return Term::make(Op::Complement, {t}); }
Term operator+(const Term& a, const Term& b) { return Term::make(Op::Sum, {a, b}); }
Term operator*(const Term& a, const Term& b) { return Term::make(Op::Product, {a, b}); }
Term compose(const Term& a, const Term& b) { return Term::make(Op::Compose, {a, b}); }
Term converse(const Term& t) { return Term::make(Op::Converse, {t}); }

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& k : node_->kids) n += k.size();
  return n;
}

std::uint32_t Term::arity() const {
  if (op() == Op::Var) return var_index() + 1;
  std::uint32_t a = 0;
  for (const auto& k : node_->kids) a = std::max(a, k.arity());
  return a;
}

bool Term::operator==(const Term& other) const { return (*this <=> other) == 0; }

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (auto c = depth() <=> other.depth(); c != 0) return c;
  if (auto c = op() <=> other.op(); c != 0) return c;
  if (auto c = var_index() <=> other.var_index(); c != 0) return c;
  const auto& a = node_->kids;
  const auto& b = other.node_->kids;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.size() <=> b.size();
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse_all() {
    Term t = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Term sum() {
    Term t = prod();
    while (eat('+')) t = t + prod();
    return t;
  }

  Term prod() {
    Term t = comp();
    while (eat('.')) t = t * comp();
    return t;
  }

  Term comp() {
    Term t = unary();
    while (eat(';')) t = compose(t, unary());
    return t;
  }

  Term unary() {
    if (eat('-')) return -unary();
    Term t = atom();
    while (eat('~')) t = converse(t);
    return t;
  }

  Term atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      const bool primed = pos_ < text_.size() && text_[pos_] == '\'';
      if (primed) ++pos_;
      if (c == '0') return primed ? Term::diversity() : Term::zero();
      return primed ? Term::identity() : Term::one();
    }
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      std::uint64_t index = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = index * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        if (index > UINT32_MAX) fail("variable index too large");
        ++pos_;
      }
      if (pos_ == start) fail("expected digits after 'x'");
      return Term::var(static_cast<std::uint32_t>(index));
    }
    if (c == '(') {
      ++pos_;
      Term t = sum();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Binding levels used by the printer: 0 sum, 1 product, 2 composition and tighter.
int level(const Term& t) {
  switch (t.op()) {
    case Op::Sum: return 0;
    case Op::Product: return 1;
    default: return 2;
  }
}

bool is_diversity(const Term& t) {
  return t.op() == Op::Complement && t.child().op() == Op::Identity;
}

void render_into(const Term& t, std::string& out);

void render_at(const Term& t, int min_level, std::string& out) {
  if (level(t) < min_level) {
    out += '(';
    render_into(t, out);
    out += ')';
  } else {
    render_into(t, out);
  }
}

// Operand of '~': anything that is not an atom, a converse or a composition
// (which prints its own parentheses) must be wrapped.
void render_postfix_operand(const Term& t, std::string& out) {
  const bool bare = t.is_leaf() || is_diversity(t) || t.op() == Op::Converse || t.op() == Op::Compose;
  if (!bare) out += '(';
  render_into(t, out);
  if (!bare) out += ')';
}

void render_into(const Term& t, std::string& out) {
  switch (t.op()) {
    case Op::Zero: out += '0'; return;
    case Op::One: out += '1'; return;
    case Op::Identity: out += "1'"; return;
    case Op::Var: out += 'x' + std::to_string(t.var_index()); return;
    case Op::Complement:
      if (is_diversity(t)) {
        out += "0'";
        return;
      }
      out += '-';
      render_at(t.child(), 2, out);
      return;
    case Op::Converse:
      render_postfix_operand(t.child(), out);
      out += '~';
      return;
    case Op::Compose:
      out += '(';
      render_at(t.lhs(), 2, out);
      out += ';';
      render_at(t.rhs(), 2, out);
      out += ')';
      return;
    case Op::Product:
      render_at(t.lhs(), 1, out);
      out += " . ";
      render_at(t.rhs(), 2, out);
      return;
    case Op::Sum:
      render_at(t.lhs(), 0, out);
      out += " + ";
      render_at(t.rhs(), 1, out);
      return;
  }
}

Term fold(std::vector<Term> terms, Term empty, Term (*join)(const Term&, const Term&)) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (terms.empty()) return empty;
  Term acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = join(acc, terms[i]);
  return acc;
}

}  // namespace

Term parse(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

Term big_product(std::vector<Term> terms) {
  return fold(std::move(terms), Term::one(), [](const Term& a, const Term& b) { return a * b; });
}

Term big_sum(std::vector<Term> terms) {
  return fold(std::move(terms), Term::zero(), [](const Term& a, const Term& b) { return a + b; });
}

namespace {

Term div_conv() { return Term::diversity() * converse(Term::diversity()); }
Term div_div() { return compose(Term::diversity(), Term::diversity()); }

}  // namespace

Term builtin(std::string_view name) {
  if (name == "t") return div_conv() * compose(div_conv(), div_conv());
  if (name == "e1") return Term::identity() * -div_div();
  if (name == "e2") return Term::identity() * div_div();
  if (name == "m2") return Term::diversity() * -div_div();
  if (name == "m3") return Term::diversity() * div_div();
  if (name == "diversity") return Term::diversity();
  throw InputError("unknown builtin term '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"t", "e1", "e2", "m2", "m3", "diversity"}; }

Term parse_or_builtin(std::string_view text) {
  for (const auto& name : builtin_names()) {
    if (text == name) return builtin(name);
  }
  return parse(text);
}

Term random_term(std::uint32_t m, std::uint32_t depth, std::mt19937_64& rng) {
  auto pick = [&](std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng); };
  if (depth == 0 || pick(4) == 0) {
    const std::uint32_t leaves = 3 + m;
    const auto k = pick(leaves);
    if (k == 0) return Term::zero();
    if (k == 1) return Term::one();
    if (k == 2) return Term::identity();
    return Term::var(k - 3);
  }
  switch (pick(5)) {
    case 0: return -random_term(m, depth - 1, rng);
    case 1: return converse(random_term(m, depth - 1, rng));
    case 2: return random_term(m, depth - 1, rng) + random_term(m, depth - 1, rng);
    case 3: return random_term(m, depth - 1, rng) * random_term(m, depth - 1, rng);
    default: return compose(random_term(m, depth - 1, rng), random_term(m, depth - 1, rng));
  }
}

}  // namespace relalg
