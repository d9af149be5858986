#pragma once

#include <stdexcept>
#include <string>

namespace affine_lab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mathematically undefined request: log 0, division by zero, zero period.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A constructed value would break a type invariant (degenerate lattice, u = 0).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Caller combined arguments that do not belong together (surface mismatch,
// wrong sheet for a boundary map).
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace affine_lab
