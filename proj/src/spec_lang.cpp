#include "tlalign/spec_lang.hpp"

#include <cctype>
#include <set>

#include "tlalign/errors.hpp"

namespace tlalign {

namespace {

enum class Tok {
  Ident,
  Wildcard,
  Exists,
  OpNext,     // X
  OpAlways,   // G
  OpFinally,  // F
  OpUntil,    // U
  Bang,
  Amp,
  Pipe,
  LParen,
  RParen,
  Comma,
  Dot,
  At,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Wildcard: return "'_'";
    case Tok::Exists: return "'exists'";
    case Tok::OpNext: return "'X'";
    case Tok::OpAlways: return "'G'";
    case Tok::OpFinally: return "'F'";
    case Tok::OpUntil: return "'U'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::At: return "'@'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '!': out.push_back({Tok::Bang, "!", start}); ++i; continue;
      case '&': out.push_back({Tok::Amp, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::Pipe, "|", start}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case ',': out.push_back({Tok::Comma, ",", start}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
      case '@': out.push_back({Tok::At, "@", start}); ++i; continue;
      default: break;
    }
    if (!ident_char(c))
      fail(ErrorCode::SyntaxError,
           "unexpected character '" + std::string(1, c) + "' at offset " +
               std::to_string(start),
           static_cast<std::ptrdiff_t>(start));
    while (i < text.size() && ident_char(text[i])) ++i;
    std::string word(text.substr(start, i - start));
    Tok kind = Tok::Ident;
    if (word == "_") kind = Tok::Wildcard;
    else if (word == "exists") kind = Tok::Exists;
    else if (word == "X") kind = Tok::OpNext;
    else if (word == "G") kind = Tok::OpAlways;
    else if (word == "F") kind = Tok::OpFinally;
    else if (word == "U") kind = Tok::OpUntil;
    out.push_back({kind, std::move(word), start});
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Schema& schema)
      : schema_(schema), tokens_(tokenize(text)) {}

  Specification parse() {
    Specification spec;
    if (peek().kind == Tok::Exists) {
      advance();
      spec.quantified_vars.push_back(expect(Tok::Ident).text);
      while (peek().kind == Tok::Comma) {
        advance();
        spec.quantified_vars.push_back(expect(Tok::Ident).text);
      }
      expect(Tok::Dot);
    }
    vars_.insert(spec.quantified_vars.begin(), spec.quantified_vars.end());
    if (vars_.size() != spec.quantified_vars.size())
      fail(ErrorCode::MalformedInput, "duplicate quantified variable",
           static_cast<std::ptrdiff_t>(tokens_.front().offset));
    spec.body = parse_disj();
    expect(Tok::End);
    validate_specification(spec);
    return spec;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  const Token& expect(Tok kind) {
    if (peek().kind != kind)
      fail(ErrorCode::SyntaxError,
           std::string("expected ") + tok_name(kind) + ", found " +
               tok_name(peek().kind) + " at offset " +
               std::to_string(peek().offset),
           static_cast<std::ptrdiff_t>(peek().offset));
    return advance();
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (peek().kind == Tok::Pipe) {
      advance();
      f = Formula::disj(std::move(f), parse_conj());
    }
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_until();
    while (peek().kind == Tok::Amp) {
      advance();
      f = Formula::conj(std::move(f), parse_until());
    }
    return f;
  }

  Formula parse_until() {
    Formula f = parse_unary();
    if (peek().kind == Tok::OpUntil) {
      advance();
      f = Formula::until(std::move(f), parse_until());
    }
    return f;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Bang: advance(); return Formula::neg(parse_unary());
      case Tok::OpNext: advance(); return Formula::next(parse_unary());
      case Tok::OpAlways: advance(); return Formula::always(parse_unary());
      case Tok::OpFinally: advance(); return Formula::eventually(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    if (peek().kind == Tok::LParen) {
      advance();
      Formula f = parse_disj();
      expect(Tok::RParen);
      if (peek().kind == Tok::At) {
        advance();
        f = f.with_label(expect(Tok::Ident).text);
      }
      return f;
    }
    if (peek().kind == Tok::Ident) return parse_atom();
    fail(ErrorCode::SyntaxError,
         std::string("expected identifier or '(', found ") +
             tok_name(peek().kind) + " at offset " +
             std::to_string(peek().offset),
         static_cast<std::ptrdiff_t>(peek().offset));
  }

  Formula parse_atom() {
    const Token& name = expect(Tok::Ident);
    const PredicateDecl* decl = schema_.find(name.text);
    if (!decl)
      fail(ErrorCode::UnknownPredicate,
           "unknown predicate '" + name.text + "' at offset " +
               std::to_string(name.offset),
           static_cast<std::ptrdiff_t>(name.offset));
    Atom a;
    a.predicate = name.text;
    expect(Tok::LParen);
    a.args.push_back(parse_term());
    while (peek().kind == Tok::Comma) {
      advance();
      a.args.push_back(parse_term());
    }
    expect(Tok::RParen);
    if (static_cast<int>(a.args.size()) != decl->arity)
      fail(ErrorCode::ArityMismatch,
           "predicate '" + name.text + "' expects " +
               std::to_string(decl->arity) + " arguments, got " +
               std::to_string(a.args.size()) + " at offset " +
               std::to_string(name.offset),
           static_cast<std::ptrdiff_t>(name.offset));
    return Formula::atom(std::move(a));
  }

  Term parse_term() {
    if (peek().kind == Tok::Wildcard) {
      advance();
      return Term::wildcard();
    }
    const Token& t = expect(Tok::Ident);
    if (vars_.count(t.text)) return Term::variable(t.text);
    return Term::constant(t.text);
  }

  const Schema& schema_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> vars_;
};

}  // namespace

Specification parse_spec(std::string_view text, const Schema& schema) {
  return Parser(text, schema).parse();
}

namespace {

Formula keep_label(Formula result, const std::optional<std::string>& label) {
  if (label && !result.witness_label()) return result.with_label(*label);
  return result;
}

Formula nnf_pos(const Formula& f);
Formula nnf_neg(const Formula& f, const std::optional<std::string>& not_label);

Formula nnf_pos(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Atom:
      return f;
    case NodeKind::Not:
      return nnf_neg(f.left(), f.witness_label());
    case NodeKind::And:
      return keep_label(Formula::conj(nnf_pos(f.left()), nnf_pos(f.right())),
                        f.witness_label());
    case NodeKind::Or:
      return keep_label(Formula::disj(nnf_pos(f.left()), nnf_pos(f.right())),
                        f.witness_label());
    case NodeKind::Next:
      return keep_label(Formula::next(nnf_pos(f.left())), f.witness_label());
    case NodeKind::WeakNext:
      return keep_label(Formula::weak_next(nnf_pos(f.left())),
                        f.witness_label());
    case NodeKind::Always:
      return keep_label(Formula::always(nnf_pos(f.left())), f.witness_label());
    case NodeKind::Finally:
      return keep_label(Formula::eventually(nnf_pos(f.left())),
                        f.witness_label());
    case NodeKind::Until:
      return keep_label(Formula::until(nnf_pos(f.left()), nnf_pos(f.right())),
                        f.witness_label());
    case NodeKind::Release:
      return keep_label(
          Formula::release(nnf_pos(f.left()), nnf_pos(f.right())),
          f.witness_label());
  }
  fail(ErrorCode::MalformedInput, "unreachable formula kind");
}

// Pushes one negation over f. The label of the eliminated Not node (if any)
// takes precedence over f's own label on the rewritten node.
Formula nnf_neg(const Formula& f, const std::optional<std::string>& not_label) {
  auto relabel = [&](Formula result) {
    result = keep_label(std::move(result), f.witness_label());
    if (not_label) {
      // outer label wins
      result = result.with_label(*not_label);
    }
    return result;
  };
  auto negated = [](const Formula& g) { return Formula::neg(g); };
  switch (f.kind()) {
    case NodeKind::Atom: {
      Formula result = Formula::neg(f);
      if (not_label) result = result.with_label(*not_label);
      return result;
    }
    case NodeKind::Not:
      // double negation
      return relabel(nnf_pos(f.left()));
    case NodeKind::And:
      return relabel(Formula::disj(nnf_pos(negated(f.left())),
                                   nnf_pos(negated(f.right()))));
    case NodeKind::Or:
      return relabel(Formula::conj(nnf_pos(negated(f.left())),
                                   nnf_pos(negated(f.right()))));
    case NodeKind::Next:
      return relabel(Formula::weak_next(nnf_pos(negated(f.left()))));
    case NodeKind::WeakNext:
      return relabel(Formula::next(nnf_pos(negated(f.left()))));
    case NodeKind::Always:
      return relabel(Formula::eventually(nnf_pos(negated(f.left()))));
    case NodeKind::Finally:
      return relabel(Formula::always(nnf_pos(negated(f.left()))));
    case NodeKind::Until:
      return relabel(Formula::release(nnf_pos(negated(f.left())),
                                      nnf_pos(negated(f.right()))));
    case NodeKind::Release:
      return relabel(Formula::until(nnf_pos(negated(f.left())),
                                    nnf_pos(negated(f.right()))));
  }
  fail(ErrorCode::MalformedInput, "unreachable formula kind");
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_pos(f); }

Specification negate(const Specification& spec) {
  return Specification{spec.quantified_vars, Formula::neg(spec.body)};
}

Specification build_pre_post_spec(const Formula& pre, const Formula& post,
                                  std::vector<std::string> vars) {
  if (contains_temporal(pre) || contains_temporal(post))
    fail(ErrorCode::TemporalOperatorInCondition,
         "pre/post conditions must be propositional");
  Formula body = Formula::eventually(Formula::conj(
      pre.with_label("pre"),
      Formula::eventually(post.with_label("post"))));
  Specification spec{std::move(vars), std::move(body)};
  validate_specification(spec);
  return spec;
}

Specification build_action_chain_spec(const std::vector<Atom>& actions) {
  if (actions.empty())
    fail(ErrorCode::EmptyActionList, "action chain requires >= 1 action");
  Formula chain;
  for (std::size_t i = actions.size(); i-- > 0;) {
    Formula a = Formula::atom(actions[i])
                    .with_label("act_" + std::to_string(i + 1));
    chain = chain.valid() ? Formula::until(std::move(a), std::move(chain))
                          : std::move(a);
  }
  Specification spec{{}, std::move(chain)};
  validate_specification(spec);
  return spec;
}

}  // namespace tlalign
