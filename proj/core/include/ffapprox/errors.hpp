#pragma once

#include <stdexcept>
#include <string>

namespace ffapprox {

// Exit codes double as error categories for the CLI.
enum class ErrorKind { kInput = 1, kPrecondition = 2, kBudget = 3, kPrecision = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::kInput, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::kPrecondition, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::kBudget, what) {}
};

class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what = "precision exhausted")
      : Error(ErrorKind::kPrecision, what) {}
};

// Re-raises e with its category kept and `stage: ` prepended.
[[noreturn]] inline void rethrow_in_stage(const Error& e, const std::string& stage) {
  const std::string msg = stage + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::kInput: throw InputError(msg);
    case ErrorKind::kPrecondition: throw PreconditionError(msg);
    case ErrorKind::kBudget: throw BudgetExceeded(msg);
    case ErrorKind::kPrecision: throw PrecisionExhausted(msg);
  }
  throw Error(e.kind(), msg);
}

}  // namespace ffapprox
