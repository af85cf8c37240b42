// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace liedrag {

/// Broad failure classes. The C API and the CLI map these onto error codes.
enum class ErrorKind {
  kConfig,          // malformed or inconsistent configuration
  kDomain,          // input outside an operation's domain (rho <= 0, |A| below floor, ...)
  kGridMismatch,    // operands live on different grids
  kBlowup,          // non-finite values or a degenerate Lagrangian map during a run
  kIo,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class BlowupError : public Error {
 public:
  BlowupError(const std::string& what, double last_valid_time)
      : Error(ErrorKind::kBlowup, what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace liedrag
