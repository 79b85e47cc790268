#include "tlalign/ast.hpp"

#include <algorithm>
#include <sstream>

#include "tlalign/errors.hpp"

namespace tlalign {

struct Formula::Node {
  NodeKind kind;
  Atom atom;  // kind == Atom only
  Formula lhs, rhs;
  std::optional<std::string> witness_label;
};

bool is_unary(NodeKind k) {
  switch (k) {
    case NodeKind::Not:
    case NodeKind::Next:
    case NodeKind::WeakNext:
    case NodeKind::Always:
    case NodeKind::Finally:
      return true;
    default:
      return false;
  }
}

bool is_binary(NodeKind k) {
  switch (k) {
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Until:
    case NodeKind::Release:
      return true;
    default:
      return false;
  }
}

bool is_temporal(NodeKind k) {
  switch (k) {
    case NodeKind::Next:
    case NodeKind::WeakNext:
    case NodeKind::Always:
    case NodeKind::Finally:
    case NodeKind::Until:
    case NodeKind::Release:
      return true;
    default:
      return false;
  }
}

Formula Formula::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Atom;
  n->atom = std::move(a);
  return Formula(std::move(n));
}

#define TLALIGN_UNARY_FACTORY(name, kind_)                \
  Formula Formula::name(Formula f) {                      \
    auto n = std::make_shared<Node>();                    \
    n->kind = NodeKind::kind_;                            \
    n->lhs = std::move(f);                                \
    return Formula(std::move(n));                         \
  }

#define TLALIGN_BINARY_FACTORY(name, kind_)               \
  Formula Formula::name(Formula l, Formula r) {           \
    auto n = std::make_shared<Node>();                    \
    n->kind = NodeKind::kind_;                            \
    n->lhs = std::move(l);                                \
    n->rhs = std::move(r);                                \
    return Formula(std::move(n));                         \
  }

TLALIGN_UNARY_FACTORY(neg, Not)
TLALIGN_UNARY_FACTORY(next, Next)
TLALIGN_UNARY_FACTORY(weak_next, WeakNext)
TLALIGN_UNARY_FACTORY(always, Always)
TLALIGN_UNARY_FACTORY(eventually, Finally)
TLALIGN_BINARY_FACTORY(conj, And)
TLALIGN_BINARY_FACTORY(disj, Or)
TLALIGN_BINARY_FACTORY(until, Until)
TLALIGN_BINARY_FACTORY(release, Release)

#undef TLALIGN_UNARY_FACTORY
#undef TLALIGN_BINARY_FACTORY

Formula Formula::with_label(std::string label) const {
  auto n = std::make_shared<Node>(*node_);
  n->witness_label = std::move(label);
  return Formula(std::move(n));
}

NodeKind Formula::kind() const { return node_->kind; }
const Atom& Formula::atom_ref() const { return node_->atom; }
const Formula& Formula::left() const { return node_->lhs; }
const Formula& Formula::right() const { return node_->rhs; }
const std::optional<std::string>& Formula::witness_label() const {
  return node_->witness_label;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind) return false;
  if (node_->witness_label != o.node_->witness_label) return false;
  if (node_->kind == NodeKind::Atom) return node_->atom == o.node_->atom;
  if (!(node_->lhs == o.node_->lhs)) return false;
  if (is_binary(node_->kind)) return node_->rhs == o.node_->rhs;
  return true;
}

namespace {

template <typename Fn>
void visit_nodes(const Formula& f, Fn&& fn) {
  fn(f);
  if (f.kind() == NodeKind::Atom) return;
  visit_nodes(f.left(), fn);
  if (is_binary(f.kind())) visit_nodes(f.right(), fn);
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> out;
  visit_nodes(f, [&](const Formula& n) {
    if (n.kind() != NodeKind::Atom) return;
    for (const Term& t : n.atom_ref().args) {
      if (t.kind != TermKind::Variable) continue;
      if (std::find(out.begin(), out.end(), t.symbol) == out.end())
        out.push_back(t.symbol);
    }
  });
  return out;
}

std::set<std::string> witness_labels(const Formula& f) {
  std::set<std::string> out;
  visit_nodes(f, [&](const Formula& n) {
    if (n.witness_label()) out.insert(*n.witness_label());
  });
  return out;
}

bool contains_temporal(const Formula& f) {
  bool found = false;
  visit_nodes(f, [&](const Formula& n) { found = found || is_temporal(n.kind()); });
  return found;
}

void validate_specification(const Specification& spec) {
  std::set<std::string> vars(spec.quantified_vars.begin(),
                             spec.quantified_vars.end());
  if (vars.size() != spec.quantified_vars.size())
    fail(ErrorCode::MalformedInput, "duplicate quantified variable");
  for (const std::string& v : free_variables(spec.body)) {
    if (!vars.count(v))
      fail(ErrorCode::UnboundVariable,
           "variable '" + v + "' is not listed in the exists clause");
  }
  std::size_t label_count = 0;
  visit_nodes(spec.body, [&](const Formula& n) {
    if (n.witness_label()) ++label_count;
  });
  if (label_count != witness_labels(spec.body).size())
    fail(ErrorCode::MalformedInput, "duplicate witness label");
}

namespace {

// Precedence levels, loosest first: | < & < U < unary < primary.
enum Level { kDisj = 0, kConj = 1, kUntil = 2, kUnary = 3 };

void print_term(std::ostringstream& os, const Term& t) {
  os << (t.kind == TermKind::Wildcard ? "_" : t.symbol);
}

void print_atom(std::ostringstream& os, const Atom& a) {
  os << a.predicate << '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ',';
    print_term(os, a.args[i]);
  }
  os << ')';
}

void print(std::ostringstream& os, const Formula& f, int min_level) {
  // A labeled subformula is always parenthesized so the @label suffix has an
  // unambiguous attachment point.
  bool labeled = f.witness_label().has_value();
  int level;
  switch (f.kind()) {
    case NodeKind::Atom:
    case NodeKind::Not:
    case NodeKind::Next:
    case NodeKind::WeakNext:
    case NodeKind::Always:
    case NodeKind::Finally:
      level = kUnary;
      break;
    case NodeKind::Until:
    case NodeKind::Release:
      level = kUntil;
      break;
    case NodeKind::And:
      level = kConj;
      break;
    case NodeKind::Or:
      level = kDisj;
      break;
    default:
      level = kUnary;
  }
  bool parens = labeled || level < min_level;
  if (parens) os << '(';
  switch (f.kind()) {
    case NodeKind::Atom:
      print_atom(os, f.atom_ref());
      break;
    case NodeKind::Not:
      os << '!';
      print(os, f.left(), kUnary);
      break;
    case NodeKind::Next:
      os << "X ";
      print(os, f.left(), kUnary);
      break;
    case NodeKind::WeakNext:
      os << "WX ";  // not part of the input grammar
      print(os, f.left(), kUnary);
      break;
    case NodeKind::Always:
      os << "G ";
      print(os, f.left(), kUnary);
      break;
    case NodeKind::Finally:
      os << "F ";
      print(os, f.left(), kUnary);
      break;
    case NodeKind::Until:
      print(os, f.left(), kUntil + 1);
      os << " U ";
      print(os, f.right(), kUntil);  // right-associative
      break;
    case NodeKind::Release:
      print(os, f.left(), kUntil + 1);
      os << " R ";  // not part of the input grammar
      print(os, f.right(), kUntil);
      break;
    case NodeKind::And:
      print(os, f.left(), kConj);  // left-associative
      os << " & ";
      print(os, f.right(), kConj + 1);
      break;
    case NodeKind::Or:
      print(os, f.left(), kDisj);
      os << " | ";
      print(os, f.right(), kDisj + 1);
      break;
  }
  if (parens) os << ')';
  if (labeled) os << '@' << *f.witness_label();
}

}  // namespace

std::string pretty_print(const Formula& f) {
  std::ostringstream os;
  print(os, f, kDisj);
  return os.str();
}

std::string pretty_print(const Specification& spec) {
  std::ostringstream os;
  if (!spec.quantified_vars.empty()) {
    os << "exists ";
    for (std::size_t i = 0; i < spec.quantified_vars.size(); ++i) {
      if (i) os << ", ";
      os << spec.quantified_vars[i];
    }
    os << ". ";
  }
  os << pretty_print(spec.body);
  return os.str();
}

}  // namespace tlalign
