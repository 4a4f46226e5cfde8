#pragma once

#include <stdexcept>
#include <string>

namespace fockrel {

/// Thrown when a requested computation would push coefficient magnitudes
/// past 1e300. Magnitudes are screened in log scale before any multiply,
/// so callers never observe inf or NaN from the builders.
class TruncationOverflow : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace fockrel
