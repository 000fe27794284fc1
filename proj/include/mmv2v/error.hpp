#pragma once

#include <stdexcept>
#include <string>

namespace mmv2v {

// Exit codes used by the command line tool. Each error category maps to one.
enum class ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kNumerical = 3,
  kIo = 4,
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Invalid inputs to a library routine (negative distances, d_man > lt, ...).
struct DomainError : Error {
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kConfig; }
};

// Bad configuration: unknown key, malformed value or violated invariant.
struct ConfigError : Error {
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kConfig; }
};

// Quadrature did not reach its tolerance within the subdivision budget.
struct NumericalError : Error {
  NumericalError(const std::string& what, long evaluations)
      : Error(what + " (" + std::to_string(evaluations) + " evaluations)"),
        evaluations(evaluations) {}
  ExitCode exit_code() const noexcept override { return ExitCode::kNumerical; }
  long evaluations;
};

struct IoError : Error {
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kIo; }
};

}  // namespace mmv2v
