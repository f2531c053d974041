#pragma once

#include <stdexcept>

namespace qswitch {

// Instance exceeds the exhaustive-search tractability bound.
struct size_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conditioning on an impossible event, e.g. the Werner parameter of a
// successful link when the success probability is zero.
struct undefined_conditional_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No block size in the scanned range yields a defined objective value.
struct no_feasible_block_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Series cannot be min-max normalized (all masked or all equal).
struct degenerate_series_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration document rejected: syntax, unknown key, or invariant
// violation. The message names the offending key/field.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qswitch
