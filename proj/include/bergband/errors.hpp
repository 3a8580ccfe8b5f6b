// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_ERRORS_HPP
#define BERGBAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bergband
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Invalid orders, radii, sizes or mismatched inputs.
class ParameterError : public Error
{
public:
  using Error::Error;
};

// Base for failures that come out of the numerics rather than the inputs.
class NumericalError : public Error
{
public:
  using Error::Error;
};

class IllConditionedError : public NumericalError
{
public:
  IllConditionedError(const std::string &what, double condition)
    : NumericalError(what), condition_(condition)
  {
  }
  double condition() const { return condition_; }

private:
  double condition_;
};

class DegenerateBasisError : public NumericalError
{
public:
  DegenerateBasisError(const std::string &what, double eta)
    : NumericalError(what), eta_(eta)
  {
  }
  double eta() const { return eta_; }

private:
  double eta_;
};

}  // namespace bergband

#endif  // BERGBAND_ERRORS_HPP
