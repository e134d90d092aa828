#pragma once

#include "tlfleet/scltl/formula.hpp"

namespace tlfleet::scltl {

/// Strong finite-trace satisfaction of `phi` by `w`.
///
/// Atoms read the current letter and are false past the end of the word.
/// `X f` needs the current letter to exist. `f U g` and `F f` need a witness
/// position j with i <= j <= |w|; at j == |w| only formulas that reduce to
/// `true` hold, so for formulas without the constants the witness is always
/// a letter of w.
bool evaluate_finite(const Formula &phi, const FiniteWord &w);

} // namespace tlfleet::scltl
