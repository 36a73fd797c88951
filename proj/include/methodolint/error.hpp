#pragma once

#include <stdexcept>
#include <string>

namespace methodolint {

// Base for every error the library throws. Callers that only need a message
// can catch std::runtime_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pattern bundle or registry could not be loaded.
class PatternError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Talking to a chat-completions endpoint failed after all retries.
class ClientError : public Error {
 public:
  ClientError(const std::string& what, int attempts, bool retryable = false)
      : Error(what), attempts_(attempts), retryable_(retryable) {}

  int attempts() const noexcept { return attempts_; }
  bool retryable() const noexcept { return retryable_; }

 private:
  int attempts_;
  bool retryable_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace methodolint
