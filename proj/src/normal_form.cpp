#include "relalg/normal_form.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <mutex>

#include "relalg/error.hpp"

namespace relalg {

struct FormNode {
  std::uint32_t degree = 0;
  Color color = 0;
  std::vector<Form::Pair> sub;
  std::vector<Form> conv;
  std::uint64_t hash = 0;
  mutable std::atomic<const FormNode*> projection{nullptr};
};

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finaliser over the running value
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::uintptr_t>& key) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto v : key) h = mix(h, v);
    return static_cast<std::size_t>(h);
  }
};

std::strong_ordering compare_nodes(const FormNode* a, const FormNode* b);

}  // namespace

class FormTable {
 public:
  static FormTable& instance() {
    static FormTable table;
    return table;
  }

  Form intern(std::uint32_t degree, Color color, std::vector<Form::Pair> sub, std::vector<Form> conv) {
    std::vector<std::uintptr_t> key;
    key.reserve(4 + 2 * sub.size() + conv.size());
    key.push_back(degree);
    key.push_back(color);
    key.push_back(sub.size());
    for (const auto& [a, b] : sub) {
      key.push_back(reinterpret_cast<std::uintptr_t>(a.node_));
      key.push_back(reinterpret_cast<std::uintptr_t>(b.node_));
    }
    for (const auto& c : conv) key.push_back(reinterpret_cast<std::uintptr_t>(c.node_));

    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return Form(it->second);
    auto& node = nodes_.emplace_back();
    node.degree = degree;
    node.color = color;
    std::uint64_t h = mix(0x6a09e667f3bcc909ULL, degree);
    h = mix(h, color);
    h = mix(h, sub.size());
    for (const auto& [a, b] : sub) h = mix(mix(h, a.hash()), b.hash());
    h = mix(h, conv.size());
    for (const auto& c : conv) h = mix(h, c.hash());
    node.hash = h;
    node.sub = std::move(sub);
    node.conv = std::move(conv);
    index_.emplace(std::move(key), &node);
    return Form(&node);
  }

  std::size_t size() {
    std::lock_guard lock(mutex_);
    return nodes_.size();
  }

 private:
  std::mutex mutex_;
  std::deque<FormNode> nodes_;
  std::unordered_map<std::vector<std::uintptr_t>, const FormNode*, KeyHash> index_;
};

std::size_t interned_form_count() { return FormTable::instance().size(); }

std::vector<std::string> color_symbols(Color color) {
  std::vector<std::string> out;
  if (color & kWhite) out.emplace_back("1'");
  for (std::uint32_t i = 0; i < 31; ++i)
    if (color & var_bit(i)) out.push_back("x" + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------- Form

Form Form::make(std::uint32_t degree, Color color, std::vector<Pair> sub, std::vector<Form> conv) {
  if (degree == 0 && (!sub.empty() || !conv.empty()))
    throw InputError("degree-0 forms carry no composition or converse entries");
  for (const auto& [a, b] : sub) {
    if (!a.valid() || !b.valid() || a.degree() + 1 != degree || b.degree() + 1 != degree)
      throw InputError("composition entry of wrong degree in a degree-" + std::to_string(degree) + " form");
  }
  for (const auto& c : conv) {
    if (!c.valid() || c.degree() + 1 != degree)
      throw InputError("converse entry of wrong degree in a degree-" + std::to_string(degree) + " form");
  }
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  std::sort(conv.begin(), conv.end());
  conv.erase(std::unique(conv.begin(), conv.end()), conv.end());
  return FormTable::instance().intern(degree, color, std::move(sub), std::move(conv));
}

std::uint32_t Form::degree() const { return node_->degree; }
Color Form::color() const { return node_->color; }
const std::vector<Form::Pair>& Form::sub() const { return node_->sub; }
const std::vector<Form>& Form::conv() const { return node_->conv; }
std::uint64_t Form::hash() const { return node_->hash; }

std::string Form::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

namespace {

std::strong_ordering compare_nodes(const FormNode* a, const FormNode* b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a->degree <=> b->degree; c != 0) return c;
  if (auto c = a->color <=> b->color; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a->sub.begin(), a->sub.end(), b->sub.begin(), b->sub.end());
      c != 0)
    return c;
  return std::lexicographical_compare_three_way(a->conv.begin(), a->conv.end(), b->conv.begin(), b->conv.end());
}

}  // namespace

std::strong_ordering Form::operator<=>(const Form& other) const { return compare_nodes(node_, other.node_); }

// ---------------------------------------------------------------- extraction maps

std::optional<Form> conv_f(const Form& f) {
  if (f.degree() == 0 || f.conv().size() != 1) return std::nullopt;
  return f.conv().front();
}

namespace {

std::optional<Form> unique_white(const Form& f, bool second) {
  if (f.degree() == 0) return std::nullopt;
  std::optional<Form> found;
  for (const auto& pair : f.sub()) {
    const Form& x = second ? pair.second : pair.first;
    if (!x.is_white()) continue;
    if (found && *found != x) return std::nullopt;
    found = x;
  }
  return found;
}

}  // namespace

std::optional<Form> right_R(const Form& f) { return unique_white(f, true); }
std::optional<Form> left_L(const Form& f) { return unique_white(f, false); }

Form project(const Form& f) {
  if (f.degree() == 0) throw InputError("cannot project a degree-0 form");
  if (const FormNode* cached = f.node_->projection.load(std::memory_order_acquire)) return Form(cached);
  Form g;
  if (f.degree() == 1) {
    g = Form::color_form(f.color());
  } else {
    std::vector<Form::Pair> sub;
    sub.reserve(f.sub().size());
    for (const auto& [a, b] : f.sub()) sub.emplace_back(project(a), project(b));
    std::vector<Form> conv;
    for (const auto& c : f.conv()) conv.push_back(project(c));
    g = Form::make(f.degree() - 1, f.color(), std::move(sub), std::move(conv));
  }
  f.node_->projection.store(g.node_, std::memory_order_release);
  return g;
}

Form project_to(const Form& f, std::uint32_t degree) {
  if (degree > f.degree()) throw InputError("cannot project to a higher degree");
  Form g = f;
  while (g.degree() > degree) g = project(g);
  return g;
}

bool compatible(const Form& a, const Form& b) {
  if (a.degree() >= b.degree()) return project_to(a, b.degree()) == b;
  return project_to(b, a.degree()) == a;
}

// ---------------------------------------------------------------- model labels

EdgeLabeler::EdgeLabeler(const Model& model) : model_(model), out_(model.base) {
  for (const auto& e : model.unit.edges()) out_[e.r].push_back(e.s);
}

Form EdgeLabeler::form(const Edge& e, std::uint32_t degree) {
  if (e.r >= model_.base || e.s >= model_.base || !model_.unit.contains(e))
    throw InputError("edge " + to_string(e) + " is not in the unit");
  if (memo_.size() <= degree) memo_.resize(degree + 1);
  const std::uint64_t key = static_cast<std::uint64_t>(e.r) * model_.base + e.s;
  if (auto it = memo_[degree].find(key); it != memo_[degree].end()) return it->second;
  Form f = compute(e, degree);
  memo_[degree].emplace(key, f);
  return f;
}

Form EdgeLabeler::compute(const Edge& e, std::uint32_t degree) {
  Color color = e.is_loop() ? kWhite : 0;
  for (std::uint32_t i = 0; i < model_.arity(); ++i)
    if (model_.valuation[i].contains(e)) color |= var_bit(i);
  if (degree == 0) return Form::color_form(color);
  std::vector<Form::Pair> sub;
  for (auto w : out_[e.r]) {
    if (model_.unit.contains(w, e.s)) sub.emplace_back(form({e.r, w}, degree - 1), form({w, e.s}, degree - 1));
  }
  std::vector<Form> conv;
  if (model_.unit.contains(e.reversed())) conv.push_back(form(e.reversed(), degree - 1));
  return Form::make(degree, color, std::move(sub), std::move(conv));
}

Form form_of_edge(const PointedModel& pm, std::uint32_t degree) {
  EdgeLabeler labeler(pm.model);
  return labeler.form(pm.edge, degree);
}

EdgeSet neighbors(const Model& model, const Edge& e) {
  if (!model.unit.contains(e)) throw InputError("edge " + to_string(e) + " is not in the unit");
  EdgeSet out(model.base);
  for (const auto& x : model.unit.edges()) {
    if (x.r == e.r || x.r == e.s || x.s == e.r || x.s == e.s) out.insert(x);
  }
  return out;
}

namespace {

class LiteralChecker {
 public:
  explicit LiteralChecker(const Model& model) : model_(model) {}

  bool check(const Edge& e, const Form& f) {
    if (!model_.unit.contains(e)) return false;
    const auto key = std::make_pair(static_cast<std::uint64_t>(e.r) * model_.base + e.s, f.hash());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool result = compute(e, f);
    memo_.emplace(key, result);
    return result;
  }

 private:
  bool compute(const Edge& e, const Form& f) {
    if (f.is_white() != e.is_loop()) return false;
    for (std::uint32_t i = 0; i < 31; ++i) {
      const bool listed = (f.color() & var_bit(i)) != 0;
      const bool holds = i < model_.arity() && model_.valuation[i].contains(e);
      if (listed != holds) return false;
    }
    if (f.degree() == 0) return true;
    // converse literals
    const Edge back = e.reversed();
    const bool has_back = model_.unit.contains(back);
    for (const auto& g : f.conv())
      if (!has_back || !check(back, g)) return false;
    if (has_back && f.conv().empty()) return false;
    // every listed decomposition is realised
    for (const auto& [a, b] : f.sub()) {
      bool found = false;
      for (std::uint32_t w = 0; w < model_.base && !found; ++w) found = check({e.r, w}, a) && check({w, e.s}, b);
      if (!found) return false;
    }
    // every realised decomposition is listed
    for (std::uint32_t w = 0; w < model_.base; ++w) {
      if (!model_.unit.contains(e.r, w) || !model_.unit.contains(w, e.s)) continue;
      bool covered = false;
      for (const auto& [a, b] : f.sub()) {
        if (check({e.r, w}, a) && check({w, e.s}, b)) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
    return true;
  }

  const Model& model_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, bool> memo_;
};

}  // namespace

bool satisfies(const Model& model, const Edge& e, const Form& f) {
  LiteralChecker checker(model);
  return checker.check(e, f);
}

// ---------------------------------------------------------------- extensional tier

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_pow2(std::uint64_t bits) { return bits >= 64 ? kSat : (std::uint64_t{1} << bits); }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSat / a) return kSat;
  return a * b;
}

}  // namespace

std::uint64_t universe_size(std::uint32_t m, std::uint32_t degree) {
  const std::uint64_t colors = color_count(m);
  std::uint64_t size = colors;
  for (std::uint32_t k = 0; k < degree; ++k) {
    if (size > (std::uint64_t{1} << 31)) return kSat;
    const std::uint64_t bits = size * size + size;
    size = sat_mul(colors, sat_pow2(bits));
    if (size == kSat) return kSat;
  }
  return size;
}

std::shared_ptr<const FormUniverse> enum_forms(std::uint32_t m, std::uint32_t degree, std::uint64_t budget) {
  const auto predicted = universe_size(m, degree);
  if (predicted > budget)
    throw BudgetExceeded("universe of degree-" + std::to_string(degree) + " forms for m=" + std::to_string(m),
                         predicted, budget);

  static std::mutex cache_mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FormUniverse>> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find({m, degree}); it != cache.end()) return it->second;
  }

  auto universe = std::make_shared<FormUniverse>();
  universe->m = m;
  universe->degree = degree;
  const std::uint64_t colors = color_count(m);
  if (degree == 0) {
    for (Color c = 0; c < colors; ++c) universe->forms.push_back(Form::color_form(c));
  } else {
    const auto prev = enum_forms(m, degree - 1, budget);
    const auto& lower = prev->forms;
    std::vector<Form::Pair> pairs;
    for (const auto& a : lower)
      for (const auto& b : lower) pairs.emplace_back(a, b);
    const std::uint64_t pair_masks = std::uint64_t{1} << pairs.size();
    const std::uint64_t conv_masks = std::uint64_t{1} << lower.size();
    universe->forms.reserve(predicted);
    for (Color c = 0; c < colors; ++c) {
      for (std::uint64_t pm = 0; pm < pair_masks; ++pm) {
        std::vector<Form::Pair> sub;
        for (std::size_t i = 0; i < pairs.size(); ++i)
          if ((pm >> i) & 1u) sub.push_back(pairs[i]);
        for (std::uint64_t cm = 0; cm < conv_masks; ++cm) {
          std::vector<Form> conv;
          for (std::size_t i = 0; i < lower.size(); ++i)
            if ((cm >> i) & 1u) conv.push_back(lower[i]);
          universe->forms.push_back(Form::make(degree, c, sub, std::move(conv)));
        }
      }
    }
  }
  std::sort(universe->forms.begin(), universe->forms.end());

  std::lock_guard lock(cache_mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(m, degree), std::move(universe));
  return it->second;
}

std::vector<Form> refine(const Form& f, std::uint32_t m, std::uint64_t budget) {
  const auto universe = enum_forms(m, f.degree() + 1, budget);
  std::vector<Form> out;
  for (const auto& g : universe->forms)
    if (project(g) == f) out.push_back(g);
  return out;
}

namespace {

class TermRenderer {
 public:
  TermRenderer(std::uint32_t m, std::uint64_t budget) : m_(m), budget_(budget) {}

  Term render(const Form& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    std::vector<Term> literals;
    literals.push_back(f.is_white() ? Term::identity() : Term::diversity());
    for (std::uint32_t i = 0; i < m_; ++i)
      literals.push_back((f.color() & var_bit(i)) ? Term::var(i) : -Term::var(i));
    if (f.degree() > 0) {
      const auto lower = enum_forms(m_, f.degree() - 1, budget_);
      for (const auto& a : lower->forms) {
        for (const auto& b : lower->forms) {
          const bool listed = std::binary_search(f.sub().begin(), f.sub().end(), Form::Pair{a, b});
          Term lit = compose(render(a), render(b));
          literals.push_back(listed ? lit : -lit);
        }
      }
      for (const auto& a : lower->forms) {
        const bool listed = std::binary_search(f.conv().begin(), f.conv().end(), a);
        Term lit = converse(render(a));
        literals.push_back(listed ? lit : -lit);
      }
    }
    Term t = big_product(std::move(literals));
    memo_.emplace(f, t);
    return t;
  }

 private:
  std::uint32_t m_;
  std::uint64_t budget_;
  std::unordered_map<Form, Term, Form::Hasher> memo_;
};

}  // namespace

Term to_term(const Form& f, std::uint32_t m, std::uint64_t budget) {
  if (f.color() >= color_count(m)) throw InputError("form uses variables beyond m=" + std::to_string(m));
  TermRenderer renderer(m, budget);
  return renderer.render(f);
}

PartitionReport check_partition(const Model& model, std::uint32_t degree, bool extensional, std::uint64_t budget) {
  PartitionReport report;
  EdgeLabeler labeler(model);
  LiteralChecker checker(model);
  for (const auto& e : model.unit.edges()) {
    ++report.edges_checked;
    const Form f = labeler.form(e, degree);
    if (f.degree() != degree || !checker.check(e, f)) {
      report.semantic_ok = false;
      report.violations.push_back("edge " + to_string(e) + " does not satisfy its computed form");
    }
    // a form differing only in color is never satisfied as well
    const Form other = Form::make(degree, f.color() ^ kWhite, f.sub(), f.conv());
    if (checker.check(e, other)) {
      report.semantic_ok = false;
      report.violations.push_back("edge " + to_string(e) + " satisfies two distinct forms");
    }
  }
  if (extensional) {
    report.extensional_run = true;
    const auto universe = enum_forms(model.arity(), degree, budget);
    EdgeSet covered(model.base);
    for (const auto& f : universe->forms) {
      ++report.forms_rendered;
      const auto ev = eval(to_term(f, model.arity(), budget), model);
      if (!(ev & covered).empty()) {
        report.extensional_ok = false;
        report.violations.push_back("rendered form " + f.hash_hex() + " overlaps another form");
      }
      covered = covered | ev;
      for (const auto& e : ev.edges()) {
        if (labeler.form(e, degree) != f) {
          report.extensional_ok = false;
          report.violations.push_back("rendered form " + f.hash_hex() + " holds at " + to_string(e) +
                                      " which realises a different form");
        }
      }
    }
    if (covered != model.unit) {
      report.extensional_ok = false;
      report.violations.push_back("rendered forms do not cover the unit");
    }
  }
  return report;
}

// ---------------------------------------------------------------- serialization

namespace {

Color color_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("form color must be an array of symbols");
  Color c = 0;
  for (const auto& sym : j) {
    if (!sym.is_string()) throw InputError("form color symbol must be a string");
    const auto s = sym.get<std::string>();
    if (s == "1'") {
      c |= kWhite;
    } else if (s.size() > 1 && s[0] == 'x' && s.find_first_not_of("0123456789", 1) == std::string::npos) {
      const auto i = std::stoul(s.substr(1));
      if (i >= 31) throw InputError("variable index too large in form color");
      c |= var_bit(static_cast<std::uint32_t>(i));
    } else {
      throw InputError("unknown color symbol '" + s + "'");
    }
  }
  return c;
}

template <class Resolve>
Form form_from_record(const nlohmann::json& j, Resolve&& resolve) {
  if (!j.is_object() || !j.contains("degree") || !j["degree"].is_number_unsigned())
    throw InputError("form record needs a non-negative \"degree\"");
  const auto degree = j["degree"].get<std::uint32_t>();
  const Color color = color_from_json(j.value("color", nlohmann::json::array()));
  std::vector<Form::Pair> sub;
  for (const auto& p : j.value("sub", nlohmann::json::array())) {
    if (!p.is_array() || p.size() != 2) throw InputError("form \"sub\" entries must be pairs");
    sub.emplace_back(resolve(p[0]), resolve(p[1]));
  }
  std::vector<Form> conv;
  for (const auto& c : j.value("conv", nlohmann::json::array())) conv.push_back(resolve(c));
  return Form::make(degree, color, std::move(sub), std::move(conv));
}

}  // namespace

nlohmann::json form_to_json(const Form& f) {
  nlohmann::json j;
  j["degree"] = f.degree();
  j["color"] = color_symbols(f.color());
  auto sub = nlohmann::json::array();
  for (const auto& [a, b] : f.sub()) sub.push_back({form_to_json(a), form_to_json(b)});
  j["sub"] = std::move(sub);
  auto conv = nlohmann::json::array();
  for (const auto& c : f.conv()) conv.push_back(form_to_json(c));
  j["conv"] = std::move(conv);
  return j;
}

Form form_from_json(const nlohmann::json& j) {
  return form_from_record(j, [](const nlohmann::json& child) { return form_from_json(child); });
}

std::string FormTableWriter::add(const Form& f) {
  const auto key = f.hash_hex();
  if (auto it = seen_.find(key); it != seen_.end()) {
    if (it->second != f) throw PropertyViolation("serialization", "form hash collision at " + key);
    return key;
  }
  nlohmann::json j;
  j["degree"] = f.degree();
  j["color"] = color_symbols(f.color());
  auto sub = nlohmann::json::array();
  for (const auto& [a, b] : f.sub()) sub.push_back({add(a), add(b)});
  j["sub"] = std::move(sub);
  auto conv = nlohmann::json::array();
  for (const auto& c : f.conv()) conv.push_back(add(c));
  j["conv"] = std::move(conv);
  table_[key] = std::move(j);
  seen_.emplace(key, f);
  return key;
}

Form FormTableReader::get(const std::string& hash) {
  if (auto it = done_.find(hash); it != done_.end()) return it->second;
  if (!table_.is_object() || !table_.contains(hash)) throw InputError("form table has no entry " + hash);
  Form f = form_from_record(table_[hash], [this](const nlohmann::json& ref) {
    if (!ref.is_string()) throw InputError("form table references must be hash strings");
    return get(ref.get<std::string>());
  });
  if (f.hash_hex() != hash) throw InputError("form table entry " + hash + " does not match its content hash");
  done_.emplace(hash, f);
  return f;
}

}  // namespace relalg
