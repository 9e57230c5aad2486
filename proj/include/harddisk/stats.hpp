#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace hd {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval, z = 1.96 gives 95%.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

// Standard error of a Bernoulli frequency estimate (0 for n = 0).
double bernoulli_se(double p, std::size_t n);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(std::span<const double> xs);

// |a - b| <= k * sqrt(se_a^2 + se_b^2), with a small floor so two exact
// zeros compare equal.
bool within_sigma(double a, double se_a, double b, double se_b, double k = 3.0);

// Least-squares slope of y on x.
double ls_slope(std::span<const double> x, std::span<const double> y);

}  // namespace hd
