#ifndef BJET_ERRORS_HPP_
#define BJET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bjet {

// Error taxonomy shared by the library and the CLI exit-code contract:
//   config -> 2, range -> 3, conditioning -> 4, check/contract -> 5.
// Domain errors (point outside D, point off S) are caller bugs and map to
// config at the CLI boundary.

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class RangeError : public std::out_of_range {
 public:
  explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, int pivot_index)
      : std::runtime_error(what), pivot(pivot_index) {}
  int pivot;  // offending Cholesky pivot, -1 if not applicable
};

class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bjet

#endif  // BJET_ERRORS_HPP_
