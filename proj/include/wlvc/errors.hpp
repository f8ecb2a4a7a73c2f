#pragma once

#include <stdexcept>
#include <string>

namespace wlvc {

// Error taxonomy mirrors the CLI exit codes: parse 2, io 3, internal 4, precondition 5.

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A check that should be impossible to fail given valid inputs did fail.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wlvc
