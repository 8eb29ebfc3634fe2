#pragma once

#include <stdexcept>
#include <string>

namespace graphmm {

// Enumeration or similar budget exceeded (e.g. patch above the partition cap).
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-positive-definite scale matrix, optimizer
// non-convergence, indefinite Hessian. Carries diagnostics in what().
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input files.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphmm
