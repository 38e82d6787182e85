#pragma once

#include <stdexcept>
#include <string>

namespace dtwall {

// A quantity that must be an integer (a pairing value, a z-exponent, a sign
// exponent) came out fractional. The CLI maps this to exit code 2.
struct integrity_error : std::runtime_error {
  explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dtwall
