#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prodset {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different group descriptors.
class DescriptorMismatch : public Error {
 public:
  using Error::Error;
};

/// A predicted or observed size would exceed a configured cap.
class ResourceCapExceeded : public Error {
 public:
  ResourceCapExceeded(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure stopped at its iteration cap.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace prodset
