#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tlalign/ast.hpp"
#include "tlalign/fact_db.hpp"

namespace tlalign {

/// Parses the textual specification language:
///
///   spec    := ["exists" varlist "."] formula
///   varlist := IDENT ("," IDENT)*
///   formula := disj
///   disj    := conj ("|" conj)*
///   conj    := until ("&" until)*
///   until   := unary ["U" until]            -- right-associative
///   unary   := ("!" | "X" | "G" | "F")* primary
///   primary := atom | "(" formula ")" ["@" IDENT]
///   atom    := IDENT "(" term ("," term)* ")"
///   term    := IDENT | "_"
///
/// An identifier in term position is a variable iff it appears in the
/// exists list; otherwise it is a constant. X/G/F/U/exists are reserved.
/// Every predicate must be declared in the schema with matching arity.
Specification parse_spec(std::string_view text, const Schema& schema);

/// Rewrites to negation normal form: Not survives only directly above
/// atoms. Uses the finite-trace dualities, introducing WeakNext and
/// Release. Witness labels are preserved on surviving nodes.
Formula to_nnf(const Formula& f);

/// Specification with the body negated (before NNF). Quantified variables
/// are kept, so the result reads "some grounding falsifies the body".
Specification negate(const Specification& spec);

/// exists vars. F (pre@"pre" & F (post@"post")); pre and post must be
/// propositional.
Specification build_pre_post_spec(const Formula& pre, const Formula& post,
                                  std::vector<std::string> vars);

/// Right-associative until chain a1 U (a2 U ... an); atom i carries the
/// witness label "act_i" (1-based).
Specification build_action_chain_spec(const std::vector<Atom>& actions);

}  // namespace tlalign
