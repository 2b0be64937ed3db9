#pragma once

#include <stdexcept>
#include <string>

namespace kemeny {

/// The input graph (or a derived graph) is not connected, or a quantity that
/// only exists for connected graphs was requested.
class ConnectivityError : public std::runtime_error {
 public:
  explicit ConnectivityError(const std::string& what) : std::runtime_error(what) {}
};

/// An eigensolver or factorization failed to converge.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke an operation's precondition (e.g. using a rejected
/// slightly-regular certificate).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// Malformed edge-list or CSV input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kemeny
