#pragma once

#include "tlfleet/scltl/formula.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlfleet::scltl {

class StateLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnknownStateError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Complete deterministic automaton over 2^alphabet with absorbing accepting states.
///
/// A letter is encoded as a Symbol bitmask: bit i is set iff alphabet()[i] holds.
/// Propositions outside the alphabet do not influence transitions.
class Dfa {
public:
  using State = std::uint32_t;
  using Symbol = std::uint32_t;

  static constexpr std::size_t max_alphabet = 16;

  const std::vector<std::string> &alphabet() const { return alphabet_; }
  std::size_t size() const { return accepting_.size(); }
  State initial() const { return 0; }

  bool accepting(State q) const;
  bool valid(State q) const { return q < size(); }

  State step(State q, Symbol sym) const;
  State step(State q, const PropositionSet &letter) const;

  /// Projects a set of propositions onto this automaton's alphabet.
  Symbol symbol(const PropositionSet &letter) const;
  Symbol symbol(const std::vector<std::string> &letter) const;

  bool accepts(const FiniteWord &w) const;

  /// Normalised residual formula the state stands for.
  const std::string &state_label(State q) const;

  /// Deterministic text listing of states and transitions, one per line.
  std::string dump() const;

private:
  friend Dfa translate_to_dfa(const Formula &, std::size_t);

  std::vector<std::string> alphabet_;
  std::vector<bool> accepting_;
  std::vector<std::string> labels_;
  std::vector<State> table_; // size() << alphabet_.size() entries
};

/// Builds the automaton by formula progression. States are normalised
/// residual formulas; the single accepting state is `true`.
Dfa translate_to_dfa(const Formula &phi, std::size_t state_cap = 10000);

/// Transition function lookup; accepting states map to themselves.
Dfa::State dfa_step(const Dfa &dfa, Dfa::State q, const PropositionSet &letter);

} // namespace tlfleet::scltl
