#pragma once

#include <stdexcept>
#include <string>

namespace pdm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A function was evaluated outside its admissible domain.
class DomainError : public Error {
public:
  using Error::Error;
};

class InvalidProfile : public Error {
public:
  using Error::Error;
};

class InvalidParam : public Error {
public:
  using Error::Error;
};

/// The four-term normalization 1/(4(a+1)) is undefined (a = -1).
class SingularNormalization : public Error {
public:
  using Error::Error;
};

/// A grid node landed on a non-finite value of the assembled operator.
class SingularPotential : public Error {
public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
public:
  using Error::Error;
};

/// Richardson refinement measured an order below 1.
class NotConverging : public Error {
public:
  using Error::Error;
};

/// An operator word carries more momentum tokens than the jets can resolve.
class TooDeep : public Error {
public:
  using Error::Error;
};

class SchemaError : public Error {
public:
  using Error::Error;
};

} // namespace pdm
