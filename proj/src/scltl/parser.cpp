#include "tlfleet/scltl/parser.hpp"

#include <cctype>
#include <optional>

namespace tlfleet::scltl {

ParseError::ParseError(Kind kind, std::size_t position, const std::string &what)
    : std::runtime_error(what + " at position " + std::to_string(position)), kind_(kind),
      position_(position) {}

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Next, Until, Eventually, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size())
      return {Tok::End, start, {}};
    const char c = text_[pos_];
    switch (c) {
    case '!':
      ++pos_;
      return {Tok::Not, start, "!"};
    case '&':
      ++pos_;
      return {Tok::And, start, "&"};
    case '|':
      ++pos_;
      return {Tok::Or, start, "|"};
    case '(':
      ++pos_;
      return {Tok::LParen, start, "("};
    case ')':
      ++pos_;
      return {Tok::RParen, start, ")"};
    default:
      break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string word(text_.substr(start, pos_ - start));
      if (word == "X")
        return {Tok::Next, start, word};
      if (word == "F")
        return {Tok::Eventually, start, word};
      if (word == "U")
        return {Tok::Until, start, word};
      if (word == "true")
        return {Tok::True, start, word};
      if (word == "false")
        return {Tok::False, start, word};
      return {Tok::Ident, start, std::move(word)};
    }
    throw ParseError(ParseError::Kind::Syntax, start,
                     std::string("unexpected character '") + c + "'");
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  Parser(std::string_view text, const PropositionSet *alphabet) : lexer_(text), alphabet_(alphabet) {
    advance();
  }

  Formula parse() {
    Formula f = parse_or();
    if (cur_.kind != Tok::End)
      throw ParseError(ParseError::Kind::Syntax, cur_.pos, "unexpected '" + cur_.text + "'");
    return f;
  }

private:
  void advance() { cur_ = lexer_.next(); }

  Formula parse_or() {
    Formula f = parse_and();
    while (cur_.kind == Tok::Or) {
      advance();
      f = Formula::disj(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (cur_.kind == Tok::And) {
      advance();
      f = Formula::conj(std::move(f), parse_until());
    }
    return f;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (cur_.kind != Tok::Until)
      return lhs;
    advance();
    return Formula::until(std::move(lhs), parse_until());
  }

  Formula parse_unary() {
    switch (cur_.kind) {
    case Tok::Not: {
      const std::size_t at = cur_.pos;
      advance();
      if (cur_.kind != Tok::Ident)
        throw ParseError(ParseError::Kind::NegationOnCompound, at,
                         "negation is only allowed directly on a proposition");
      return Formula::negated_atom(identifier());
    }
    case Tok::Next:
      advance();
      return Formula::next(parse_unary());
    case Tok::Eventually:
      advance();
      return Formula::eventually(parse_unary());
    default:
      return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (cur_.kind) {
    case Tok::Ident:
      return Formula::atom(identifier());
    case Tok::True:
      advance();
      return Formula::top();
    case Tok::False:
      advance();
      return Formula::bottom();
    case Tok::LParen: {
      advance();
      Formula f = parse_or();
      if (cur_.kind != Tok::RParen)
        throw ParseError(ParseError::Kind::Syntax, cur_.pos, "expected ')'");
      advance();
      return f;
    }
    case Tok::End:
      throw ParseError(ParseError::Kind::Syntax, cur_.pos, "unexpected end of formula");
    default:
      throw ParseError(ParseError::Kind::Syntax, cur_.pos, "unexpected '" + cur_.text + "'");
    }
  }

  std::string identifier() {
    if (alphabet_ && !alphabet_->contains(cur_.text))
      throw ParseError(ParseError::Kind::UnknownProposition, cur_.pos,
                       "unknown proposition '" + cur_.text + "'");
    std::string name = std::move(cur_.text);
    advance();
    return name;
  }

  Lexer lexer_;
  const PropositionSet *alphabet_;
  Token cur_{Tok::End, 0, {}};
};

} // namespace

Formula parse_formula(std::string_view text, const PropositionSet &alphabet) {
  return Parser(text, &alphabet).parse();
}

Formula parse_formula(std::string_view text) { return Parser(text, nullptr).parse(); }

} // namespace tlfleet::scltl
