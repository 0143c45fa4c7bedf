#pragma once

#include <stdexcept>
#include <string>

namespace sg {

// Base class for all library-specific failures.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Input admissible in principle but too large for the requested exact mode.
// The CLI maps this to exit code 2.
struct size_refusal : error {
  explicit size_refusal(const std::string& what) : error(what) {}
};

// A claimed refinement relation between kernels does not hold; the message
// carries a concrete witness (type indices and the mismatched values).
struct refinement_error : error {
  explicit refinement_error(const std::string& what) : error(what) {}
};

// A law does not support the requested operation, e.g. re-rooting leaves
// its support or a rule needs deeper balls than the support determines.
struct unsupported_law : error {
  explicit unsupported_law(const std::string& what) : error(what) {}
};

}  // namespace sg
