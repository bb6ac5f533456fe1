#pragma once

#include <functional>
#include <string>
#include <vector>

#include "swlab/rng.hpp"

namespace swlab {

// Increment law of the underlying walk: symmetric density with unit variance
// and finite exponential moments. kappa is the exponential-moment scale used
// by eigenfunction estimates; callers supplying a custom density must supply
// kappa themselves (it is not derivable from samples).
struct IncrementModel {
  std::string name;
  std::function<double(double)> density;
  std::function<double(RngStream&)> sampler;  // empty => sampling unsupported
  double kappa = 1.0;

  bool has_sampler() const { return static_cast<bool>(sampler); }
};

IncrementModel gaussian_model();

double gaussian_density(double x);

// Draws one increment. Throws std::invalid_argument for models without a
// sampler (custom density-only variants).
double sample_increment(const IncrementModel& model, RngStream& rng);

// Midpoint grid on the strip [0, a]: x_i = (i + 1/2) a / M, weight a / M.
struct Grid {
  double a = 0.0;
  int M = 0;
  std::vector<double> x;
  double w = 0.0;
};

// Throws std::invalid_argument unless a > 0 and M >= 1.
Grid make_grid(double a, int M);

}  // namespace swlab
