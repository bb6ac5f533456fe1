#pragma once

#include <vector>

#include "swlab/kernels.hpp"
#include "swlab/model.hpp"
#include "swlab/partition.hpp"
#include "swlab/rng.hpp"
#include "swlab/spectral.hpp"

namespace swlab {

// A sampled contact configuration. times[0] = 0 and positions[0] = 0 always;
// constrained sets end at N, free sets may stop earlier. positions lie in
// [0, a] (all zero for the renewal reference process, whose "strip" is a
// point).
struct ContactSet {
  int N = 0;
  char alpha = 'f';
  std::vector<int> times;
  std::vector<double> positions;
};

// Exact gap-by-gap sampler for the reference renewal, via the sequential
// scan of p(t) proportional to e^{beta - beta_c} q(t) Z(m - t).
ContactSet sample_contacts_renewal(const RenewalTables& rt, char alpha,
                                   RngStream& rng);

// Exact Markov-renewal sampler for the strip model: scans (t, j) against the
// backward remaining-partition tables. `guard` must be the leading eigenpair
// used to certify the table's spectral construction; residual > 1e-8 throws.
// Any horizon n <= strip.N may be sampled from one table.
ContactSet sample_contacts_markov_renewal(const StripPartitionTable& strip,
                                          const KernelTable& table,
                                          const SpectralResult& guard, int n,
                                          char alpha, RngStream& rng);

// Gaussian-bridge rejection sampler for one excursion: a path x -> y in n
// steps whose interior stays strictly above a. Returns n+1 values including
// both endpoints. Throws after 200 n rejected bridges. If `attempts` is
// given it receives the number of bridges drawn (for acceptance-rate study).
std::vector<double> sample_excursion(const IncrementModel& model, double a,
                                     double x, double y, int n, RngStream& rng,
                                     long long* attempts = nullptr);

// Free final stretch: m unconstrained-endpoint steps from y staying strictly
// above a, by direct rejection with early abort. Returns m values (the new
// points). Throws after 200 (sqrt(m) + 1) rejected attempts.
std::vector<double> sample_free_stretch(const IncrementModel& model, double a,
                                        double y, int m, RngStream& rng);

// Full path through a contact set: excursions between consecutive contacts,
// plus the free stretch after the last one. values has N + 1 entries.
struct PathSample {
  int N = 0;
  char alpha = 'f';
  double a = 0.0;
  std::vector<double> values;
  std::vector<int> contact_times;

  // Diffusive rescaling X(t) = values[t N] / sqrt(N), linear between grid
  // points; exact at t = k / N.
  double X(double t) const;
};

PathSample assemble_path(const ContactSet& contacts, const IncrementModel& model,
                         double a, RngStream& rng);

}  // namespace swlab
