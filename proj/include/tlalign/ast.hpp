#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tlalign {

enum class TermKind { Constant, Variable, Wildcard };

/// One argument of a relational atom. Constant and variable symbols are
/// nonempty strings over [A-Za-z0-9_-]; a wildcard carries no symbol.
struct Term {
  TermKind kind = TermKind::Constant;
  std::string symbol;

  static Term constant(std::string s) { return {TermKind::Constant, std::move(s)}; }
  static Term variable(std::string s) { return {TermKind::Variable, std::move(s)}; }
  static Term wildcard() { return {TermKind::Wildcard, {}}; }

  bool operator==(const Term&) const = default;
  bool operator<(const Term& o) const {
    if (kind != o.kind) return kind < o.kind;
    return symbol < o.symbol;
  }
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool operator==(const Atom&) const = default;
};

enum class NodeKind {
  Atom,
  Not,
  And,
  Or,
  Next,
  WeakNext,  // produced only by negation normal form
  Always,
  Finally,
  Until,
  Release,  // produced only by negation normal form
};

bool is_unary(NodeKind k);
bool is_binary(NodeKind k);
bool is_temporal(NodeKind k);

/// Immutable formula tree with value semantics. Copies share structure.
class Formula {
 public:
  Formula() = default;

  static Formula atom(Atom a);
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula next(Formula f);
  static Formula weak_next(Formula f);
  static Formula always(Formula f);
  static Formula eventually(Formula f);
  static Formula until(Formula l, Formula r);
  static Formula release(Formula l, Formula r);

  /// Copy of this formula carrying the given witness label.
  Formula with_label(std::string label) const;

  bool valid() const { return node_ != nullptr; }
  NodeKind kind() const;
  const Atom& atom_ref() const;
  /// Child of a unary node, left child of a binary one.
  const Formula& left() const;
  const Formula& right() const;
  const std::optional<std::string>& witness_label() const;

  /// Structural equality, including witness labels.
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  /// Identity of the underlying node; stable key for memo tables.
  const void* node_id() const { return node_.get(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Specification {
  std::vector<std::string> quantified_vars;
  Formula body;

  bool operator==(const Specification& o) const {
    return quantified_vars == o.quantified_vars && body == o.body;
  }
};

/// Variable symbols appearing in atom arguments, in first-occurrence order.
std::vector<std::string> free_variables(const Formula& f);

/// Witness labels appearing anywhere in the formula.
std::set<std::string> witness_labels(const Formula& f);

bool contains_temporal(const Formula& f);

/// Enforces the closed-specification invariants: every body variable is
/// quantified, quantified_vars has no duplicates, witness labels are unique.
void validate_specification(const Specification& spec);

/// Concrete-syntax rendering; parseable back to a structurally equal
/// specification as long as the formula is free of WeakNext/Release.
std::string pretty_print(const Formula& f);
std::string pretty_print(const Specification& spec);

}  // namespace tlalign
