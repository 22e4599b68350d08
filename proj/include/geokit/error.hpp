#pragma once

#include <stdexcept>
#include <string>

namespace geokit {

/// Precondition or domain violation (bad dimension, point off a surface, ...).
class DomainError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver gave up. `best_bound()` is the best value it reached.
class UnconvergedError : public std::runtime_error
{
public:
  UnconvergedError(const std::string & what, double best_bound)
      : std::runtime_error(what), best_bound_(best_bound)
  {}

  double best_bound() const noexcept { return best_bound_; }

private:
  double best_bound_;
};

}  // namespace geokit
