#pragma once

#include "tlfleet/scltl/formula.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tlfleet::scltl {

/// Request templates.
///   Seq2:     F(pick & F(d1 & F d2))
///   AltThen:  F(pick & F((d1 | d2) & d3))
///   ThenAlt:  F(pick & F(d1 & (d2 | d3)))
enum class PatternKind { Seq2, AltThen, ThenAlt };

inline constexpr PatternKind all_patterns[] = {PatternKind::Seq2, PatternKind::AltThen,
                                               PatternKind::ThenAlt};

class ArityError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

std::size_t destination_count(PatternKind kind);
std::string_view pattern_name(PatternKind kind);
PatternKind pattern_from_name(std::string_view name);

Formula instantiate_pattern(PatternKind kind, const std::string &pick,
                            const std::vector<std::string> &destinations);

} // namespace tlfleet::scltl
