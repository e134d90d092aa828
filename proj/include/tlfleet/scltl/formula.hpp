#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace tlfleet::scltl {

/// A finite set of proposition names (the alphabet Pi, or one symbol of 2^Pi).
using PropositionSet = std::set<std::string>;

/// One word over 2^Pi: each position is the set of propositions true there.
using FiniteWord = std::vector<PropositionSet>;

enum class Op {
  True,
  False,
  Atom,
  NegAtom,
  And,
  Or,
  Next,
  Until,
  Eventually,
};

/// Immutable co-safe LTL formula. Negation only occurs on atoms.
///
/// Nodes are shared between copies, so passing formulas by value is cheap.
class Formula {
public:
  static Formula top();
  static Formula bottom();
  static Formula atom(std::string name);
  static Formula negated_atom(std::string name);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula next(Formula child);
  static Formula until(Formula lhs, Formula rhs);
  static Formula eventually(Formula child);

  Op op() const;

  /// Proposition name; only meaningful for Atom and NegAtom.
  const std::string &name() const;

  std::size_t arity() const;

  /// Operand of a unary node, or left operand of a binary node.
  const Formula &lhs() const;
  const Formula &rhs() const;

  /// Propositions occurring anywhere in the formula.
  PropositionSet propositions() const;

  /// Number of temporal and boolean operators (atoms and constants count zero).
  std::size_t operator_count() const;

  friend bool operator==(const Formula &a, const Formula &b);

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Fully parenthesised text that parse_formula accepts back.
std::string to_string(const Formula &f);

} // namespace tlfleet::scltl
