#ifndef FOGFED_ERRORS_HPP_
#define FOGFED_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fogfed {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Scenario or topology does not satisfy its invariants.
class ValidationError : public Error
{
public:
  using Error::Error;
};

// Config text could not be tokenized; carries the 1-based line number.
class ConfigSyntaxError : public ValidationError
{
public:
  ConfigSyntaxError(int line, const std::string& what)
    : ValidationError("line " + std::to_string(line) + ": " + what), line_(line)
  {
  }
  int line() const noexcept { return line_; }

private:
  int line_;
};

// Waiting-time predictor is undefined: servers * rate <= offered load.
class UnstableQueueError : public Error
{
public:
  using Error::Error;
};

class UnknownIdError : public Error
{
public:
  using Error::Error;
};

class NoFeasibleNodeError : public Error
{
public:
  using Error::Error;
};

// Internal consistency failure inside the event loop.
class EngineError : public Error
{
public:
  using Error::Error;
};

// File or directory could not be written; message names the path.
class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace fogfed

#endif  // FOGFED_ERRORS_HPP_
