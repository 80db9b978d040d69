#include "relalg/model.hpp"

#include <algorithm>
#include <limits>

#include "relalg/error.hpp"

namespace relalg {

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.r) + "," + std::to_string(e.s) + ")";
}

// ---------------------------------------------------------------- Relation

std::size_t Relation::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<Edge> Relation::edges() const {
  std::vector<Edge> out;
  for (std::uint32_t r = 0; r < n_; ++r)
    for (std::uint32_t s = 0; s < n_; ++s)
      if (contains(r, s)) out.push_back({r, s});
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

Relation Relation::operator|(const Relation& other) const {
  Relation out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= other.bits_[i];
  return out;
}

Relation Relation::operator&(const Relation& other) const {
  Relation out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= other.bits_[i];
  return out;
}

Relation Relation::operator-(const Relation& other) const {
  Relation out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= static_cast<std::uint8_t>(!other.bits_[i]);
  return out;
}

Relation Relation::full(std::uint32_t n) {
  Relation out(n);
  std::fill(out.bits_.begin(), out.bits_.end(), std::uint8_t{1});
  return out;
}

Relation Relation::identity(std::uint32_t n) {
  Relation out(n);
  for (std::uint32_t i = 0; i < n; ++i) out.insert(i, i);
  return out;
}

// ---------------------------------------------------------------- Signature

Signature Signature::from_h(std::uint32_t m, std::string_view h) {
  Signature sig;
  sig.m = m;
  for (char c : h) {
    if (c == 'R' && !sig.reflexive) {
      sig.reflexive = true;
    } else if (c == 'S' && !sig.symmetric) {
      sig.symmetric = true;
    } else {
      throw InputError("H must be one of \"\", R, S, RS; got '" + std::string(h) + "'");
    }
  }
  return sig;
}

std::string Signature::h_string() const {
  std::string s;
  if (reflexive) s += 'R';
  if (symmetric) s += 'S';
  return s;
}

Model Model::full(std::uint32_t n, std::uint32_t m) {
  Model model;
  model.base = n;
  model.unit = Relation::full(n);
  model.valuation.assign(m, Relation(n));
  return model;
}

// ---------------------------------------------------------------- validation

ValidationReport validate_model(const Model& model, const Signature& sig) {
  ValidationReport report;
  const auto n = model.base;
  if (model.unit.base() != n) {
    report.violations.push_back("unit is not a relation over the base");
    return report;
  }
  if (model.arity() < sig.m) {
    report.violations.push_back("valuation has " + std::to_string(model.arity()) + " entries, signature needs " +
                                std::to_string(sig.m));
  }
  for (std::uint32_t i = 0; i < model.arity(); ++i) {
    const auto& v = model.valuation[i];
    if (v.base() != n || !v.subset_of(model.unit)) {
      report.violations.push_back("valuation of x" + std::to_string(i) + " is not contained in the unit");
    }
  }
  if (sig.reflexive) {
    for (std::uint32_t u = 0; u < n; ++u)
      if (!model.unit.contains(u, u)) report.violations.push_back("reflexivity: loop " + to_string({u, u}) + " missing");
  }
  if (sig.symmetric) {
    for (const auto& e : model.unit.edges())
      if (!model.unit.contains(e.reversed()))
        report.violations.push_back("symmetry: " + to_string(e.reversed()) + " missing");
  }
  return report;
}

// ---------------------------------------------------------------- evaluation

EdgeSet eval(const Term& t, const Model& model) {
  const auto n = model.base;
  const auto& unit = model.unit;
  switch (t.op()) {
    case Op::Zero: return Relation(n);
    case Op::One: return unit;
    case Op::Identity: return unit & Relation::identity(n);
    case Op::Var:
      if (t.var_index() >= model.arity())
        throw InputError("variable x" + std::to_string(t.var_index()) + " has no valuation (model has " +
                         std::to_string(model.arity()) + ")");
      return model.valuation[t.var_index()] & unit;
    case Op::Complement: return unit - eval(t.child(), model);
    case Op::Sum: return eval(t.lhs(), model) | eval(t.rhs(), model);
    case Op::Product: return eval(t.lhs(), model) & eval(t.rhs(), model);
    case Op::Converse: {
      const auto inner = eval(t.child(), model);
      Relation out(n);
      for (const auto& e : unit.edges())
        if (inner.contains(e.reversed())) out.insert(e);
      return out;
    }
    case Op::Compose: {
      const auto a = eval(t.lhs(), model);
      const auto b = eval(t.rhs(), model);
      Relation out(n);
      for (const auto& e : unit.edges()) {
        for (std::uint32_t w = 0; w < n; ++w) {
          if (a.contains(e.r, w) && b.contains(w, e.s)) {
            out.insert(e);
            break;
          }
        }
      }
      return out;
    }
  }
  return Relation(n);
}

// ---------------------------------------------------------------- enumeration

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t pow2(std::uint64_t bits) { return bits >= 64 ? kSaturated : (std::uint64_t{1} << bits); }

std::vector<Edge> free_pairs(std::uint32_t n, const Signature& sig) {
  std::vector<Edge> out;
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t s = 0; s < n; ++s) {
      if (r == s && sig.reflexive) continue;
      if (sig.symmetric && r > s) continue;
      out.push_back({r, s});
    }
  }
  return out;
}

Relation random_subset(const Relation& of, std::mt19937_64& rng) {
  Relation out(of.base());
  for (const auto& e : of.edges())
    if (rng() & 1u) out.insert(e);
  return out;
}

}  // namespace

std::uint64_t count_units(std::uint32_t n, const Signature& sig) { return pow2(free_pairs(n, sig).size()); }

ModelEnumerator::ModelEnumerator(std::uint32_t base, const Signature& sig, const SearchOptions& opts)
    : base_(base), sig_(sig), opts_(opts), rng_(opts.rng_seed ^ (std::uint64_t{base} << 32)) {
  if (base == 0) throw InputError("base must be positive");
  if (base > opts.max_base_cap)
    throw BudgetExceeded("base " + std::to_string(base) + " above the configured cap", base, opts.max_base_cap);
  free_pairs_ = free_pairs(base, sig);
  forced_ = sig.reflexive ? Relation::identity(base) : Relation(base);
  unit_count_ = pow2(free_pairs_.size());
  if (unit_count_ > opts.max_units)
    throw BudgetExceeded("unit enumeration at base " + std::to_string(base), unit_count_, opts.max_units);
}

bool ModelEnumerator::load_unit() {
  if (next_unit_ >= unit_count_) return false;
  current_unit_ = forced_;
  for (std::size_t i = 0; i < free_pairs_.size(); ++i) {
    if ((next_unit_ >> i) & 1u) {
      current_unit_.insert(free_pairs_[i]);
      if (sig_.symmetric) current_unit_.insert(free_pairs_[i].reversed());
    }
  }
  ++next_unit_;
  load_valuations();
  return true;
}

void ModelEnumerator::load_valuations() {
  valuations_.clear();
  next_valuation_ = 0;
  const auto m = sig_.m;
  if (m == 0) {
    valuations_.emplace_back();
    return;
  }
  const auto edges = current_unit_.edges();
  const std::uint64_t exhaustive = pow2(static_cast<std::uint64_t>(m) * edges.size());
  if (base_ <= 2 && exhaustive <= opts_.max_valuations) {
    for (std::uint64_t mask = 0; mask < exhaustive; ++mask) {
      std::vector<Relation> val(m, Relation(base_));
      std::uint64_t bit = 0;
      for (std::uint32_t i = 0; i < m; ++i)
        for (const auto& e : edges)
          if ((mask >> bit++) & 1u) val[i].insert(e);
      valuations_.push_back(std::move(val));
    }
    return;
  }
  valuations_.emplace_back(m, Relation(base_));
  valuations_.emplace_back(m, current_unit_);
  for (std::uint32_t k = 0; k < opts_.valuation_samples; ++k) {
    std::vector<Relation> val;
    for (std::uint32_t i = 0; i < m; ++i) val.push_back(random_subset(current_unit_, rng_));
    valuations_.push_back(std::move(val));
  }
}

std::optional<Model> ModelEnumerator::next() {
  while (next_valuation_ >= valuations_.size()) {
    if (!load_unit()) return std::nullopt;
  }
  Model model;
  model.base = base_;
  model.unit = current_unit_;
  model.valuation = valuations_[next_valuation_++];
  return model;
}

Model random_model(std::uint32_t base, const Signature& sig, std::mt19937_64& rng) {
  Model model;
  model.base = base;
  model.unit = sig.reflexive ? Relation::identity(base) : Relation(base);
  for (const auto& e : free_pairs(base, sig)) {
    if (rng() & 1u) {
      model.unit.insert(e);
      if (sig.symmetric) model.unit.insert(e.reversed());
    }
  }
  for (std::uint32_t i = 0; i < sig.m; ++i) model.valuation.push_back(random_subset(model.unit, rng));
  return model;
}

std::optional<PointedModel> find_model(const Term& t, const Signature& sig, std::uint32_t max_base,
                                       const SearchOptions& opts) {
  for (std::uint32_t base = 1; base <= max_base; ++base) {
    ModelEnumerator models(base, sig, opts);
    while (auto model = models.next()) {
      const auto sat = eval(t, *model);
      const auto edges = sat.edges();
      if (!edges.empty()) return PointedModel{std::move(*model), edges.front()};
    }
  }
  return std::nullopt;
}

ValidityResult check_validity(const Term& lhs, const Term& rhs, const Signature& sig, std::uint32_t max_base,
                              const SearchOptions& opts) {
  ValidityResult result;
  for (std::uint32_t base = 1; base <= max_base; ++base) {
    ModelEnumerator models(base, sig, opts);
    while (auto model = models.next()) {
      ++result.models_checked;
      const auto a = eval(lhs, *model);
      const auto b = eval(rhs, *model);
      const auto diff = (a - b) | (b - a);
      const auto edges = diff.edges();
      if (!edges.empty()) {
        result.ok = false;
        result.counterexample = PointedModel{std::move(*model), edges.front()};
        return result;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------- JSON

nlohmann::json edges_to_json(const Relation& rel) {
  auto out = nlohmann::json::array();
  for (const auto& e : rel.edges()) out.push_back({e.r, e.s});
  return out;
}

namespace {

Relation edges_from_json(const nlohmann::json& j, std::uint32_t n, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of pairs");
  Relation rel(n);
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() || !pair[1].is_number_unsigned())
      throw InputError(what + ": malformed pair " + pair.dump());
    const auto r = pair[0].get<std::uint64_t>();
    const auto s = pair[1].get<std::uint64_t>();
    if (r >= n || s >= n) throw InputError(what + ": pair " + pair.dump() + " outside base " + std::to_string(n));
    rel.insert(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(s));
  }
  return rel;
}

}  // namespace

nlohmann::json model_to_json(const Model& model) {
  nlohmann::json j;
  j["base"] = model.base;
  j["unit"] = edges_to_json(model.unit);
  auto val = nlohmann::json::array();
  for (const auto& v : model.valuation) val.push_back(edges_to_json(v));
  j["valuation"] = val;
  return j;
}

Model model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("base") || !j["base"].is_number_unsigned())
    throw InputError("model: missing non-negative integer \"base\"");
  Model model;
  model.base = j["base"].get<std::uint32_t>();
  if (model.base == 0) throw InputError("model: base must be positive");
  model.unit = edges_from_json(j.value("unit", nlohmann::json::array()), model.base, "unit");
  if (j.contains("valuation")) {
    if (!j["valuation"].is_array()) throw InputError("model: \"valuation\" must be an array");
    std::size_t i = 0;
    for (const auto& v : j["valuation"]) {
      auto rel = edges_from_json(v, model.base, "valuation[" + std::to_string(i) + "]");
      if (!rel.subset_of(model.unit))
        throw InputError("valuation[" + std::to_string(i) + "] is not contained in the unit");
      model.valuation.push_back(std::move(rel));
      ++i;
    }
  }
  return model;
}

}  // namespace relalg
