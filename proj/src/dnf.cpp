#include "relalg/dnf.hpp"

#include <algorithm>

#include "relalg/error.hpp"

namespace relalg {

struct FormSet::Node {
  enum class Kind { Empty, All, ColorHas, Explicit, Lift, Union, Meet, Complement, Compose, Converse };
  Kind kind;
  Color mask = 0;
  std::vector<Form> members;  // sorted, Explicit only
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using Kind = FormSet::Node::Kind;

std::shared_ptr<const FormSet::Node> node(Kind kind, std::shared_ptr<const FormSet::Node> a = nullptr,
                                          std::shared_ptr<const FormSet::Node> b = nullptr) {
  auto n = std::make_shared<FormSet::Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool member(const FormSet::Node& n, const Form& f) {
  switch (n.kind) {
    case Kind::Empty: return false;
    case Kind::All: return true;
    case Kind::ColorHas: return (f.color() & n.mask) == n.mask;
    case Kind::Explicit: return std::binary_search(n.members.begin(), n.members.end(), f);
    case Kind::Lift: return member(*n.a, project(f));
    case Kind::Union: return member(*n.a, f) || member(*n.b, f);
    case Kind::Meet: return member(*n.a, f) && member(*n.b, f);
    case Kind::Complement: return !member(*n.a, f);
    case Kind::Compose:
      return std::any_of(f.sub().begin(), f.sub().end(),
                         [&](const Form::Pair& p) { return member(*n.a, p.first) && member(*n.b, p.second); });
    case Kind::Converse:
      return std::any_of(f.conv().begin(), f.conv().end(), [&](const Form& g) { return member(*n.a, g); });
  }
  return false;
}

void require_same_degree(const FormSet& x, const FormSet& y) {
  if (x.degree() != y.degree()) throw InputError("form sets of different degree");
}

}  // namespace

FormSet FormSet::empty(std::uint32_t degree) { return FormSet(degree, node(Kind::Empty)); }
FormSet FormSet::all(std::uint32_t degree) { return FormSet(degree, node(Kind::All)); }

FormSet FormSet::color_has(Color mask) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ColorHas;
  n->mask = mask;
  return FormSet(0, std::move(n));
}

FormSet FormSet::explicit_set(std::uint32_t degree, std::vector<Form> forms) {
  for (const auto& f : forms)
    if (f.degree() != degree) throw InputError("explicit form set mixes degrees");
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Explicit;
  n->members = std::move(forms);
  return FormSet(degree, std::move(n));
}

FormSet FormSet::lifted() const {
  if (node_->kind == Kind::Empty || node_->kind == Kind::All) return FormSet(degree_ + 1, node_);
  return FormSet(degree_ + 1, node(Kind::Lift, node_));
}

FormSet FormSet::lifted_to(std::uint32_t degree) const {
  if (degree < degree_) throw InputError("cannot lift a form set to a lower degree");
  FormSet s = *this;
  while (s.degree() < degree) s = s.lifted();
  return s;
}

FormSet FormSet::operator|(const FormSet& other) const {
  require_same_degree(*this, other);
  if (node_->kind == Kind::Empty) return other;
  if (other.node_->kind == Kind::Empty) return *this;
  return FormSet(degree_, node(Kind::Union, node_, other.node_));
}

FormSet FormSet::operator&(const FormSet& other) const {
  require_same_degree(*this, other);
  if (node_->kind == Kind::Empty || other.node_->kind == Kind::Empty) return empty(degree_);
  // Distinct forms of one degree never meet, so two explicit sets intersect as sets.
  if (node_->kind == Kind::Explicit && other.node_->kind == Kind::Explicit) {
    std::vector<Form> both;
    std::set_intersection(node_->members.begin(), node_->members.end(), other.node_->members.begin(),
                          other.node_->members.end(), std::back_inserter(both));
    return explicit_set(degree_, std::move(both));
  }
  return FormSet(degree_, node(Kind::Meet, node_, other.node_));
}

FormSet FormSet::complement() const {
  if (node_->kind == Kind::Empty) return all(degree_);
  if (node_->kind == Kind::All) return empty(degree_);
  if (node_->kind == Kind::Complement) return FormSet(degree_, node_->a);
  return FormSet(degree_, node(Kind::Complement, node_));
}

FormSet FormSet::composed_with(const FormSet& other) const {
  require_same_degree(*this, other);
  if (node_->kind == Kind::Empty || other.node_->kind == Kind::Empty) return empty(degree_ + 1);
  return FormSet(degree_ + 1, node(Kind::Compose, node_, other.node_));
}

FormSet FormSet::conversed() const {
  if (node_->kind == Kind::Empty) return empty(degree_ + 1);
  return FormSet(degree_ + 1, node(Kind::Converse, node_));
}

bool FormSet::contains(const Form& f) const { return f.degree() == degree_ && member(*node_, f); }

std::vector<Form> FormSet::materialize(std::uint32_t m, std::uint64_t budget) const {
  if (node_->kind == Kind::Empty) return {};
  if (node_->kind == Kind::Explicit) return node_->members;
  const auto universe = enum_forms(m, degree_, budget);
  std::vector<Form> out;
  for (const auto& f : universe->forms)
    if (member(*node_, f)) out.push_back(f);
  return out;
}

namespace {

FormSet dnf_set(const Term& t) {
  switch (t.op()) {
    case Op::Zero: return FormSet::empty(0);
    case Op::One: return FormSet::all(0);
    case Op::Identity: return FormSet::color_has(kWhite);
    case Op::Var: return FormSet::color_has(var_bit(t.var_index()));
    case Op::Complement: return dnf_set(t.child()).complement();
    case Op::Converse: return dnf_set(t.child()).conversed();
    case Op::Sum:
    case Op::Product:
    case Op::Compose: {
      FormSet a = dnf_set(t.lhs());
      FormSet b = dnf_set(t.rhs());
      const auto n = std::max(a.degree(), b.degree());
      a = a.lifted_to(n);
      b = b.lifted_to(n);
      if (t.op() == Op::Sum) return a | b;
      if (t.op() == Op::Product) return a & b;
      return a.composed_with(b);
    }
  }
  throw InputError("unknown term node");
}

}  // namespace

DnfResult dnf(const Term& t, std::uint32_t m) {
  if (t.arity() > m)
    throw InputError("term uses x" + std::to_string(t.arity() - 1) + " but the signature has m=" + std::to_string(m));
  FormSet s = dnf_set(t);
  return DnfResult{s.degree(), s};
}

}  // namespace relalg
