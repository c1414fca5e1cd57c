#pragma once

#include <span>

namespace gmt {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

// Ordinary least squares y ~ slope * x + intercept. r_squared is 1 when y is constant.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace gmt
