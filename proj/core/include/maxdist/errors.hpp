#pragma once

#include <stdexcept>
#include <string>

namespace maxdist {

/// Violated precondition or invariant of a computation (bad parameters,
/// negative field values, infeasible moment class, ...).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failure to read, parse, or write external data (files, configs).
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace maxdist
