#pragma once

#include <string>

namespace kemeny {

/// Closed interval with the name of the result that produced it.
/// `conditional` marks intervals whose hypothesis (e.g. a verified
/// epsilon-approximation) was not established.
struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string source;
  bool conditional = false;

  bool contains(double x, double slack = 0.0) const {
    return lower - slack <= x && x <= upper + slack;
  }
  double width() const { return upper - lower; }
};

}  // namespace kemeny
