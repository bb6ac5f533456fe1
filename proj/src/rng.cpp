#include "swlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace swlab {
namespace {

// splitmix64 finalizer; full-period bijective mixer
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  base_ = mix64(seed ^ 0x6a09e667f3bcc908ULL) ^ mix64(stream * 0xd1342543de82ef95ULL + 1);
  gamma_ = mix64(mix64(stream ^ 0xbb67ae8584caa73bULL) + seed) | 1ULL;
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t v = mix64(base_ + counter_ * gamma_);
  ++counter_;
  return v;
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform01_open() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform01_open();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(th);
  has_cached_normal_ = true;
  return r * std::cos(th);
}

void RngStream::seek(std::uint64_t counter) {
  counter_ = counter;
  has_cached_normal_ = false;
}

}  // namespace swlab
