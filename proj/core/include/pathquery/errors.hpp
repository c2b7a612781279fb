#pragma once

#include <stdexcept>
#include <string>

namespace pathquery {

/// Thrown by learners when the hidden graph (or a caller-supplied input)
/// violates the promise class the algorithm requires.
class PromiseViolation : public std::runtime_error {
  public:
    explicit PromiseViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by instance generators when no instance satisfies the request.
class GenerationInfeasible : public std::runtime_error {
  public:
    explicit GenerationInfeasible(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pathquery
