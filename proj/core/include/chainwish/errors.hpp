#pragma once

#include <stdexcept>
#include <string>

namespace chainwish {

// Thrown when an argument is outside the cone or parameter domain of an
// operation. index() is the 1-based minor, clique or vertex that failed the
// check, or 0 when no single index is responsible.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what, int index = 0)
      : std::domain_error(what), index_(index) {}

  int index() const noexcept { return index_; }

 private:
  int index_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace chainwish
