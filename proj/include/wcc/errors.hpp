#pragma once

#include <stdexcept>
#include <string>

namespace wcc {

/// Base of every error raised by the library.
class error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid user or programmatic configuration (bad order, unknown case, bad flag value).
class config_error : public error
{
  public:
    using error::error;
};

/// An inadmissible physical state was encountered (rho <= 0, p <= 0, NaN).
class physics_error : public error
{
  public:
    using error::error;
};

/// A mathematical precondition does not hold (e.g. shock Mach number <= 1).
class domain_error : public error
{
  public:
    using error::error;
};

class index_error : public error
{
  public:
    using error::error;
};

/// Numerical failure: division by a vanishing pivot, eigensolver non-convergence, bad bracket.
class numeric_error : public error
{
  public:
    using error::error;
};

class division_by_zero : public numeric_error
{
  public:
    using numeric_error::numeric_error;
};

/// Requested operation is not available for this case (e.g. no exact solution).
class unsupported_error : public error
{
  public:
    using error::error;
};

class io_error : public error
{
  public:
    using error::error;
};

} // namespace wcc
