#include "strel/formula.hpp"

#include "strel/interval.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace strel {

struct FormulaNode {
  Op op = Op::True;
  std::size_t dim = 0;
  Cmp cmp = Cmp::Greater;
  double c = 0.0;
  std::string name;
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  std::vector<Formula> children;
  std::string key;
};

namespace {

std::string window(double a, double b) { return "[" + format_real(a) + "," + format_real(b) + "]"; }

std::string build_key(const FormulaNode& n) {
  const auto& ch = n.children;
  switch (n.op) {
  case Op::True: return "true";
  case Op::False: return "false";
  case Op::Atom:
    return n.name + (n.cmp == Cmp::Greater ? " > " : " < ") + format_real(n.c);
  case Op::Not: return "!" + ch[0].key();
  case Op::Or: return "(" + ch[0].key() + " | " + ch[1].key() + ")";
  case Op::And: return "(" + ch[0].key() + " & " + ch[1].key() + ")";
  case Op::Implies: return "(" + ch[0].key() + " -> " + ch[1].key() + ")";
  case Op::Until: return "(" + ch[0].key() + " U" + window(n.a, n.b) + " " + ch[1].key() + ")";
  case Op::UnboundedUntil: return "(" + ch[0].key() + " U " + ch[1].key() + ")";
  case Op::Eventually: return "F" + window(n.a, n.b) + " " + ch[0].key();
  case Op::Globally: return "G" + window(n.a, n.b) + " " + ch[0].key();
  case Op::Reach:
    return "reach[<=" + format_real(n.d) + "](" + ch[0].key() + ", " + ch[1].key() + ")";
  case Op::Escape: return "escape[>=" + format_real(n.d) + "] " + ch[0].key();
  case Op::Somewhere: return "somewhere[<=" + format_real(n.d) + "] " + ch[0].key();
  case Op::Everywhere: return "everywhere[<=" + format_real(n.d) + "] " + ch[0].key();
  }
  return {};
}

void check_window(double a, double b) {
  if (!(a >= 0.0) || !(a <= b) || !std::isfinite(b)) {
    throw std::invalid_argument("temporal window [" + format_real(a) + "," + format_real(b) +
                                "] needs 0 <= a <= b < inf");
  }
}

void check_bound(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("spatial bound " + format_real(d) + " must be finite and > 0");
  }
}

void check_child(const Formula& f) {
  if (!f.valid()) {
    throw std::invalid_argument("empty formula operand");
  }
}

} // namespace

Formula Formula::make(FormulaNode n) {
  for (const auto& c : n.children) {
    check_child(c);
  }
  n.key = build_key(n);
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

namespace {

FormulaNode node(Op op, std::vector<Formula> children = {}) {
  FormulaNode n;
  n.op = op;
  n.children = std::move(children);
  return n;
}

FormulaNode windowed(Op op, double a, double b, std::vector<Formula> children) {
  check_window(a, b);
  FormulaNode n = node(op, std::move(children));
  n.a = a;
  n.b = b;
  return n;
}

FormulaNode spatial(Op op, double d, std::vector<Formula> children) {
  check_bound(d);
  FormulaNode n = node(op, std::move(children));
  n.d = d;
  return n;
}

} // namespace

Formula Formula::top() { return make(node(Op::True)); }
Formula Formula::bottom() { return make(node(Op::False)); }

Formula Formula::atom(std::size_t dim, Cmp cmp, double c, std::string name) {
  if (!std::isfinite(c)) {
    throw std::invalid_argument("atom constant must be finite");
  }
  FormulaNode n = node(Op::Atom);
  n.dim = dim;
  n.cmp = cmp;
  n.c = c;
  n.name = name.empty() ? "x" + std::to_string(dim) : std::move(name);
  return make(std::move(n));
}

Formula Formula::negation(Formula f) { return make(node(Op::Not, {std::move(f)})); }

Formula Formula::disjunction(Formula l, Formula r) {
  return make(node(Op::Or, {std::move(l), std::move(r)}));
}

Formula Formula::conjunction(Formula l, Formula r) {
  return make(node(Op::And, {std::move(l), std::move(r)}));
}

Formula Formula::implies(Formula l, Formula r) {
  return make(node(Op::Implies, {std::move(l), std::move(r)}));
}

Formula Formula::until(double a, double b, Formula l, Formula r) {
  return make(windowed(Op::Until, a, b, {std::move(l), std::move(r)}));
}

Formula Formula::unbounded_until(Formula l, Formula r) {
  return make(node(Op::UnboundedUntil, {std::move(l), std::move(r)}));
}

Formula Formula::eventually(double a, double b, Formula f) {
  return make(windowed(Op::Eventually, a, b, {std::move(f)}));
}

Formula Formula::globally(double a, double b, Formula f) {
  return make(windowed(Op::Globally, a, b, {std::move(f)}));
}

Formula Formula::reach(double d, Formula l, Formula r) {
  return make(spatial(Op::Reach, d, {std::move(l), std::move(r)}));
}

Formula Formula::escape(double d, Formula f) { return make(spatial(Op::Escape, d, {std::move(f)})); }

Formula Formula::somewhere(double d, Formula f) {
  return make(spatial(Op::Somewhere, d, {std::move(f)}));
}

Formula Formula::everywhere(double d, Formula f) {
  return make(spatial(Op::Everywhere, d, {std::move(f)}));
}

Op Formula::op() const { return node_->op; }
std::size_t Formula::arity() const { return node_->children.size(); }

const Formula& Formula::child(std::size_t i) const {
  if (i >= node_->children.size()) {
    throw std::out_of_range("formula child index out of range");
  }
  return node_->children[i];
}

std::size_t Formula::dim() const { return node_->dim; }
Cmp Formula::cmp() const { return node_->cmp; }
double Formula::constant() const { return node_->c; }
const std::string& Formula::name() const { return node_->name; }
double Formula::lower() const { return node_->a; }
double Formula::upper() const { return node_->b; }
double Formula::distance() const { return node_->d; }
const std::string& Formula::key() const { return node_->key; }

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) {
    return true;
  }
  if (!x.node_ || !y.node_) {
    return false;
  }
  return x.node_->key == y.node_->key;
}

std::string to_string(const Formula& f) { return f.valid() ? f.key() : std::string(); }

std::size_t depth(const Formula& f) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    best = std::max(best, depth(f.child(i)) + 1);
  }
  return best;
}

Formula normalize(const Formula& f, NormalizeOptions opts) {
  auto n = [&](const Formula& g) { return normalize(g, opts); };
  switch (f.op()) {
  case Op::True:
  case Op::False:
  case Op::Atom: return f;
  case Op::Not: return Formula::negation(n(f.child(0)));
  case Op::Or: return Formula::disjunction(n(f.left()), n(f.right()));
  case Op::And:
    return Formula::negation(Formula::disjunction(Formula::negation(n(f.left())),
                                                  Formula::negation(n(f.right()))));
  case Op::Implies: return Formula::disjunction(Formula::negation(n(f.left())), n(f.right()));
  case Op::Until: return Formula::until(f.lower(), f.upper(), n(f.left()), n(f.right()));
  case Op::UnboundedUntil: return Formula::unbounded_until(n(f.left()), n(f.right()));
  case Op::Eventually: return Formula::eventually(f.lower(), f.upper(), n(f.child(0)));
  case Op::Globally:
    if (opts.keep_globally) {
      return Formula::globally(f.lower(), f.upper(), n(f.child(0)));
    }
    return Formula::negation(
        Formula::eventually(f.lower(), f.upper(), Formula::negation(n(f.child(0)))));
  case Op::Reach: return Formula::reach(f.distance(), n(f.left()), n(f.right()));
  case Op::Escape: return Formula::escape(f.distance(), n(f.child(0)));
  case Op::Somewhere: return Formula::reach(f.distance(), Formula::top(), n(f.child(0)));
  case Op::Everywhere:
    return Formula::negation(
        Formula::reach(f.distance(), Formula::top(), Formula::negation(n(f.child(0)))));
  }
  return f;
}

bool is_normalized(const Formula& f, NormalizeOptions opts) {
  switch (f.op()) {
  case Op::And:
  case Op::Implies:
  case Op::Somewhere:
  case Op::Everywhere: return false;
  case Op::Globally:
    if (!opts.keep_globally) {
      return false;
    }
    break;
  default: break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (!is_normalized(f.child(i), opts)) {
      return false;
    }
  }
  return true;
}

SubformulaTable::SubformulaTable(const Formula& root) {
  check_child(root);
  visit(root, true);
  visit(root, false);
}

std::size_t SubformulaTable::visit(const Formula& f, bool leaves_pass) {
  if (auto it = index_.find(f.key()); it != index_.end()) {
    return it->second;
  }
  const bool leaf = f.arity() == 0;
  if (leaves_pass && !leaf) {
    for (std::size_t i = 0; i < f.arity(); ++i) {
      visit(f.child(i), true);
    }
    return 0;
  }
  std::vector<std::size_t> kids;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    kids.push_back(visit(f.child(i), false));
  }
  const std::size_t idx = nodes_.size();
  nodes_.push_back(f);
  children_.push_back(std::move(kids));
  index_.emplace(f.key(), idx);
  return idx;
}

std::optional<std::size_t> SubformulaTable::index_of(const Formula& f) const {
  if (auto it = index_.find(f.key()); it != index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

TimeSpan update_ripple(TimeSpan span, const Formula& f) {
  switch (f.op()) {
  case Op::Until:
  case Op::Eventually:
  case Op::Globally:
    return {std::max(0.0, span.begin - f.upper()), std::max(0.0, span.end - f.lower())};
  case Op::UnboundedUntil: return {0.0, span.end};
  default: return span;
  }
}

VariableTable VariableTable::parse(std::string_view spec) {
  VariableTable table;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string_view::npos) {
      comma = spec.size();
    }
    std::string_view item = spec.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const auto colon = item.find(':');
      if (colon == std::string_view::npos || colon == 0 || colon + 1 == item.size()) {
        throw std::invalid_argument("bad variable entry '" + std::string(item) +
                                    "', expected name:index");
      }
      const std::string idx(item.substr(colon + 1));
      if (idx.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("bad variable index '" + idx + "'");
      }
      table.add(std::string(item.substr(0, colon)), std::stoul(idx));
    }
    pos = comma + 1;
  }
  return table;
}

void VariableTable::add(std::string name, std::size_t dim) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
    throw std::invalid_argument("invalid variable name '" + name + "'");
  }
  for (char ch : name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') {
      throw std::invalid_argument("invalid variable name '" + name + "'");
    }
  }
  static constexpr std::array<std::string_view, 9> kKeywords = {
      "true", "false", "F", "G", "U", "reach", "escape", "somewhere", "everywhere"};
  if (std::find(kKeywords.begin(), kKeywords.end(), name) != kKeywords.end()) {
    throw std::invalid_argument("variable name '" + name + "' is a keyword");
  }
  if (!by_name_.emplace(std::move(name), dim).second) {
    throw std::invalid_argument("duplicate variable name");
  }
}

std::optional<std::size_t> VariableTable::find(std::string_view name) const {
  if (auto it = by_name_.find(name); it != by_name_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::string VariableTable::name_of(std::size_t dim) const {
  for (const auto& [n, d] : by_name_) {
    if (d == dim) {
      return n;
    }
  }
  return "x" + std::to_string(dim);
}

std::size_t VariableTable::num_dims() const {
  std::size_t n = 0;
  for (const auto& [_, d] : by_name_) {
    n = std::max(n, d + 1);
  }
  return n;
}

} // namespace strel
