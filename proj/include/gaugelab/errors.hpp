#pragma once

#include <stdexcept>
#include <string>

namespace gaugelab {

/// An element was looked up outside the enumerated ball of a word-based table.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The operation is not defined for this group kind (e.g. ball enumeration of a
/// continuous group).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gaugelab
