#pragma once

#include <stdexcept>
#include <string>

namespace dcopkit {

// Base of every failure raised by the library. The CLI maps these to exit
// code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedObjective : public Error {
 public:
  using Error::Error;
};

class UnsupportedFramework : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class CorruptTranscript : public Error {
 public:
  using Error::Error;
};

class ContractError : public Error {
 public:
  using Error::Error;
};

// Name decoding failures. `position` is 1-based within the decoded name.
class NameError : public Error {
 public:
  NameError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NameParseError : public NameError {
 public:
  using NameError::NameError;
};

class NameAmbiguityError : public NameError {
 public:
  using NameError::NameError;
};

// File format failures; `path` is a JSON pointer to the offending element.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::string path)
      : Error(what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class SyntaxError : public FormatError {
 public:
  using FormatError::FormatError;
};

class SchemaError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ValidationError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace dcopkit
