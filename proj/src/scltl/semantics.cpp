#include "tlfleet/scltl/semantics.hpp"

namespace tlfleet::scltl {

namespace {

bool holds(const Formula &f, const FiniteWord &w, std::size_t i) {
  const bool in_word = i < w.size();
  switch (f.op()) {
  case Op::True:
    return true;
  case Op::False:
    return false;
  case Op::Atom:
    return in_word && w[i].contains(f.name());
  case Op::NegAtom:
    return in_word && !w[i].contains(f.name());
  case Op::And:
    return holds(f.lhs(), w, i) && holds(f.rhs(), w, i);
  case Op::Or:
    return holds(f.lhs(), w, i) || holds(f.rhs(), w, i);
  case Op::Next:
    return in_word && holds(f.lhs(), w, i + 1);
  case Op::Until:
    for (std::size_t j = i; j <= w.size(); ++j) {
      if (holds(f.rhs(), w, j))
        return true;
      if (j == w.size() || !holds(f.lhs(), w, j))
        return false;
    }
    return false;
  case Op::Eventually:
    for (std::size_t j = i; j <= w.size(); ++j)
      if (holds(f.lhs(), w, j))
        return true;
    return false;
  }
  return false;
}

} // namespace

bool evaluate_finite(const Formula &phi, const FiniteWord &w) { return holds(phi, w, 0); }

} // namespace tlfleet::scltl
