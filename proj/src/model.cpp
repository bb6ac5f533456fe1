#include "swlab/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swlab {

double gaussian_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

IncrementModel gaussian_model() {
  IncrementModel m;
  m.name = "gaussian";
  m.density = gaussian_density;
  m.sampler = [](RngStream& rng) { return rng.normal(); };
  m.kappa = 1.0;
  return m;
}

double sample_increment(const IncrementModel& model, RngStream& rng) {
  if (!model.has_sampler()) {
    throw std::invalid_argument("sample_increment: model '" + model.name +
                                "' has no sampler");
  }
  return model.sampler(rng);
}

Grid make_grid(double a, int M) {
  if (!(a > 0.0)) throw std::invalid_argument("make_grid: a must be > 0");
  if (M < 1) throw std::invalid_argument("make_grid: M must be >= 1");
  Grid g;
  g.a = a;
  g.M = M;
  g.w = a / M;
  g.x.resize(M);
  for (int i = 0; i < M; ++i) g.x[i] = (i + 0.5) * g.w;
  return g;
}

}  // namespace swlab
