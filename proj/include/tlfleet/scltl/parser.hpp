#pragma once

#include "tlfleet/scltl/formula.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace tlfleet::scltl {

/// Raised by parse_formula. position() is a 0-based character offset into the input.
class ParseError : public std::runtime_error {
public:
  enum class Kind { Syntax, UnknownProposition, NegationOnCompound };

  ParseError(Kind kind, std::size_t position, const std::string &what);

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

private:
  Kind kind_;
  std::size_t position_;
};

/// Parses the textual syntax:
///
///   !p      negated atom (only directly on an identifier)
///   X f     next            F f     eventually
///   f U g   until (right associative)
///   f & g   and             f | g   or
///   true, false, identifiers, parentheses
///
/// Precedence from tightest: `!`, `X`/`F`, `U`, `&`, `|`.
/// Every identifier must belong to `alphabet`.
Formula parse_formula(std::string_view text, const PropositionSet &alphabet);

/// Same as above but accepts any identifier.
Formula parse_formula(std::string_view text);

} // namespace tlfleet::scltl
