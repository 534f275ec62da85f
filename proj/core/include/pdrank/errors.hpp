#pragma once

#include <stdexcept>
#include <string>

namespace pdrank {

/// Process exit codes. The CLI maps every library error onto one of these.
enum class ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kIntegrity = 3,
  kNumeric = 4,
  kIo = 5,
};

/// Root of the library's error hierarchy. Each error knows which exit code
/// it maps to and carries a short machine-readable kind tag.
class Error : public std::runtime_error {
 public:
  Error(ExitCode code, std::string kind, const std::string& message)
      : std::runtime_error(message), code_(code), kind_(std::move(kind)) {}

  ExitCode code() const noexcept { return code_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ExitCode code_;
  std::string kind_;
};

// Bad parameters: caps, scale factors, grids, dimensions.
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& message)
      : Error(ExitCode::kValidation, "parameter", message) {}

 protected:
  ParameterError(std::string kind, const std::string& message)
      : Error(ExitCode::kValidation, std::move(kind), message) {}
};

class DimensionError : public ParameterError {
 public:
  explicit DimensionError(const std::string& message)
      : ParameterError("dimension", message) {}
};

// Anything wrong with the input data itself.
class DataError : public Error {
 public:
  DataError(std::string kind, const std::string& message)
      : Error(ExitCode::kIntegrity, std::move(kind), message) {}
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : DataError("parse", "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class TieScoreError : public DataError {
 public:
  TieScoreError(std::size_t line, const std::string& message)
      : DataError("tie_score", "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IntegrityError : public DataError {
 public:
  explicit IntegrityError(const std::string& message)
      : DataError("integrity", message) {}
};

class DegenerateSeasonError : public DataError {
 public:
  explicit DegenerateSeasonError(const std::string& message)
      : DataError("degenerate_season", message) {}
};

class DegenerateInputError : public DataError {
 public:
  explicit DegenerateInputError(const std::string& message)
      : DataError("degenerate_input", message) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& message)
      : Error(ExitCode::kNumeric, "numeric", message) {}

 protected:
  NumericError(std::string kind, const std::string& message)
      : Error(ExitCode::kNumeric, std::move(kind), message) {}
};

class UndefinedCorrelationError : public NumericError {
 public:
  explicit UndefinedCorrelationError(const std::string& message)
      : NumericError("undefined_correlation", message) {}
};

class DivergenceError : public NumericError {
 public:
  explicit DivergenceError(const std::string& message)
      : NumericError("divergence", message) {}
};

class SingularSystemError : public NumericError {
 public:
  explicit SingularSystemError(const std::string& message)
      : NumericError("singular", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ExitCode::kIo, "io", message) {}
};

}  // namespace pdrank
