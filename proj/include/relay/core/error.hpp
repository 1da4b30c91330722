// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace relay {

enum class ErrorKind {
  validation,  // a config or spec invariant does not hold
  parse,       // malformed input: config file, trace line, judge reply, CSV row
  transport,   // backend unreachable or rejected the request after retries
  contract,    // caller violated an operation precondition
  io,          // filesystem failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// A model returned empty text for a hop. Aborts the document's chain;
// the run continues with the remaining documents.
class EmptyOutputError : public Error {
 public:
  explicit EmptyOutputError(std::string message)
      : Error(ErrorKind::transport, std::move(message)) {}
};

}  // namespace relay
