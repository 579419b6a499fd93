#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strel {

enum class Op {
  True,
  False,
  Atom,
  Not,
  Or,
  And,
  Implies,
  Until,           // bounded, window [a, b]
  UnboundedUntil,
  Eventually,      // bounded
  Globally,        // bounded
  Reach,           // distance bound <= d
  Escape,          // distance bound >= d
  Somewhere,
  Everywhere,
};

enum class Cmp { Greater, Less };

struct FormulaNode;

/// Immutable, shareable STREL formula.
class Formula {
public:
  Formula() = default;

  static Formula top();
  static Formula bottom();
  static Formula atom(std::size_t dim, Cmp cmp, double c, std::string name = {});
  static Formula negation(Formula f);
  static Formula disjunction(Formula l, Formula r);
  static Formula conjunction(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula until(double a, double b, Formula l, Formula r);
  static Formula unbounded_until(Formula l, Formula r);
  static Formula eventually(double a, double b, Formula f);
  static Formula globally(double a, double b, Formula f);
  static Formula reach(double d, Formula l, Formula r);
  static Formula escape(double d, Formula f);
  static Formula somewhere(double d, Formula f);
  static Formula everywhere(double d, Formula f);

  bool valid() const { return node_ != nullptr; }
  Op op() const;
  std::size_t arity() const;
  const Formula& child(std::size_t i) const;
  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(arity() - 1); }

  // Atom payload.
  std::size_t dim() const;
  Cmp cmp() const;
  double constant() const;
  const std::string& name() const;

  // Temporal window [a, b] and spatial bound d.
  double lower() const;
  double upper() const;
  double distance() const;

  /// Canonical text; parses back to an equal formula given the same variables.
  const std::string& key() const;

  friend bool operator==(const Formula& x, const Formula& y);

private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  static Formula make(FormulaNode n);

  std::shared_ptr<const FormulaNode> node_;
};

std::string to_string(const Formula& f);

/// Largest distance from the root to a leaf, counting operators (an atom has depth 0).
std::size_t depth(const Formula& f);

struct NormalizeOptions {
  /// Keep bounded Globally as a core operator instead of rewriting it to !F!.
  bool keep_globally = false;
};

/// Rewrites derived operators into True/False/Atom/Not/Or/Until/
/// UnboundedUntil/Eventually/Reach/Escape (plus Globally if requested).
Formula normalize(const Formula& f, NormalizeOptions opts = {});

bool is_normalized(const Formula& f, NormalizeOptions opts = {});

/// Distinct subformulae of a formula: leaves first, then every other node
/// after its children; the root is last.
class SubformulaTable {
public:
  explicit SubformulaTable(const Formula& root);

  std::size_t size() const { return nodes_.size(); }
  const Formula& operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const std::size_t> children(std::size_t i) const { return children_[i]; }
  std::size_t root() const { return nodes_.size() - 1; }
  std::optional<std::size_t> index_of(const Formula& f) const;

private:
  std::size_t visit(const Formula& f, bool leaves_pass);

  std::vector<Formula> nodes_;
  std::vector<std::vector<std::size_t>> children_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct TimeSpan {
  double begin = 0.0;
  double end = 0.0;

  bool empty() const { return !(begin < end); }
  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

/// Span of f's output that an update of a direct child over `span` may change.
TimeSpan update_ripple(TimeSpan span, const Formula& f);

/// Maps atom identifiers to signal dimensions.
class VariableTable {
public:
  VariableTable() = default;

  /// "name:index,name:index,..."
  static VariableTable parse(std::string_view spec);

  void add(std::string name, std::size_t dim);
  std::optional<std::size_t> find(std::string_view name) const;
  std::string name_of(std::size_t dim) const;
  std::size_t num_dims() const;
  bool empty() const { return by_name_.empty(); }

private:
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

} // namespace strel
