#pragma once

#include <functional>

#include "halfturn/errors.hpp"

namespace halfturn {

// Working precision for certified numerics. Operations that cannot decide
// at `bits` double the precision until `cap` is reached.
struct PrecisionPolicy {
  long bits = 128;
  long cap = 8192;
};

// Runs `attempt(bits)` with bits = policy.bits, 2*bits, ... up to the cap,
// retrying only when the attempt throws PrecisionExhausted.
template <class F>
auto with_adaptive_precision(const PrecisionPolicy& policy, F&& attempt)
    -> decltype(attempt(long{})) {
  long bits = policy.bits;
  for (;;) {
    try {
      return attempt(bits);
    } catch (const PrecisionExhausted&) {
      if (bits >= policy.cap) throw;
      bits = bits * 2 > policy.cap ? policy.cap : bits * 2;
    }
  }
}

}  // namespace halfturn
