#pragma once

#include <stdexcept>
#include <string>

namespace fstefan
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the admissible domain of an operation (poles, ranges, index order).
class DomainError : public Error
{
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// An iterative evaluation (series, root finder, nonlinear step) did not converge.
class ConvergenceError : public Error
{
 public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

class BracketError : public Error
{
 public:
  explicit BracketError(const std::string& msg) : Error(msg) {}
};

/// Grid violates the explicit scheme's stability bound, or the front left the domain.
class StabilityError : public Error
{
 public:
  explicit StabilityError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error
{
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace fstefan
