#include "tlfleet/scltl/patterns.hpp"

namespace tlfleet::scltl {

std::size_t destination_count(PatternKind kind) { return kind == PatternKind::Seq2 ? 2 : 3; }

std::string_view pattern_name(PatternKind kind) {
  switch (kind) {
  case PatternKind::Seq2:
    return "seq2";
  case PatternKind::AltThen:
    return "alt-then";
  case PatternKind::ThenAlt:
    return "then-alt";
  }
  return "?";
}

PatternKind pattern_from_name(std::string_view name) {
  for (PatternKind k : all_patterns)
    if (pattern_name(k) == name)
      return k;
  throw std::invalid_argument("unknown pattern '" + std::string(name) + "'");
}

Formula instantiate_pattern(PatternKind kind, const std::string &pick,
                            const std::vector<std::string> &destinations) {
  if (destinations.size() != destination_count(kind))
    throw ArityError(std::string(pattern_name(kind)) + " takes " +
                     std::to_string(destination_count(kind)) + " destinations, got " +
                     std::to_string(destinations.size()));
  const auto &d = destinations;
  Formula tail = Formula::bottom();
  switch (kind) {
  case PatternKind::Seq2:
    tail = Formula::conj(Formula::atom(d[0]), Formula::eventually(Formula::atom(d[1])));
    break;
  case PatternKind::AltThen:
    tail = Formula::conj(Formula::disj(Formula::atom(d[0]), Formula::atom(d[1])),
                         Formula::atom(d[2]));
    break;
  case PatternKind::ThenAlt:
    tail = Formula::conj(Formula::atom(d[0]),
                         Formula::disj(Formula::atom(d[1]), Formula::atom(d[2])));
    break;
  }
  return Formula::eventually(
      Formula::conj(Formula::atom(pick), Formula::eventually(std::move(tail))));
}

} // namespace tlfleet::scltl
