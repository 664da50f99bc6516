#pragma once

#include <stdexcept>
#include <string>

namespace polymaass {

/// Base class for every numeric or domain failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on a pole of the function being evaluated.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the region where the chosen method is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A method could not reach its internal accuracy target.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Truncated series or lattice sum whose tail bound exceeds the tolerance.
class TailError : public Error {
 public:
  using Error::Error;
};

class ZeroArgument : public Error {
 public:
  using Error::Error;
};

/// Whittaker parameters where the connection formula degenerates (2*mu integer).
class DegenerateParameter : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace polymaass
