#pragma once

#include <stdexcept>
#include <string>

namespace awtc {

enum class ErrorKind {
  domain,    // argument outside its mathematical domain
  config,    // inconsistent or missing experiment configuration
  resource,  // enumeration or memory cap exceeded
  format,    // malformed codebook or config file
  budget,    // adversary error exceeds its write budget
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};
struct ResourceError : Error {
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};
struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error(ErrorKind::format, what) {}
};
struct BudgetError : Error {
  explicit BudgetError(const std::string& what) : Error(ErrorKind::budget, what) {}
};
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace awtc
