#pragma once

#include <stdexcept>

namespace yarn {

struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed or truncated file contents.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace yarn
