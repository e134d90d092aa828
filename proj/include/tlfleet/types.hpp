#pragma once

#include <cstdint>
#include <stdexcept>

namespace tlfleet {

/// Whole seconds on the global simulation clock.
using Seconds = std::int64_t;

using NodeIndex = std::uint32_t;
using VehicleId = std::uint32_t;
using RequestId = std::uint32_t;

/// Violated internal consistency condition; never expected on valid input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace tlfleet

#define TLFLEET_ASSERT(cond, msg)                                                                  \
  do {                                                                                             \
    if (!(cond))                                                                                   \
      throw ::tlfleet::InternalError(std::string("internal assertion failed: ") + (msg) + " (" +   \
                                     #cond ")");                                                   \
  } while (false)
