#pragma once

#include <stdexcept>
#include <string>

namespace srgeo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Adaptive step size fell below the resolvable limit; usually a singularity of the field.
class StepFailure : public Error
{
public:
  using Error::Error;
};

class NonConvergence : public Error
{
public:
  using Error::Error;
};

class DegenerateMatrix : public Error
{
public:
  using Error::Error;
};

class InvalidInput : public Error
{
public:
  using Error::Error;
};

/// The covector lies where a closed form is undefined (H = 0, |λ| = 0, ...).
class DegenerateCovector : public Error
{
public:
  using Error::Error;
};

class NotConjugate : public Error
{
public:
  using Error::Error;
};

class WitnessNotFound : public Error
{
public:
  using Error::Error;
};

class PreconditionViolation : public Error
{
public:
  using Error::Error;
};

}  // namespace srgeo
