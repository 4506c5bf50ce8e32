#pragma once

#include <stdexcept>
#include <string>

namespace mblent {

// Requested size exceeds what a routine is willing to allocate.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative or dense numerics failed to reach the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Operation is well-formed but outside the supported range (e.g. pair distance).
class UnsupportedRange : public std::invalid_argument {
 public:
  explicit UnsupportedRange(const std::string& what) : std::invalid_argument(what) {}
};

// Input makes a normalised quantity undefined (vanishing denominator).
class DegenerateInput : public std::domain_error {
 public:
  explicit DegenerateInput(const std::string& what) : std::domain_error(what) {}
};

// Fit window is empty or contains values the fit model cannot take.
class InvalidWindow : public std::invalid_argument {
 public:
  explicit InvalidWindow(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace mblent
