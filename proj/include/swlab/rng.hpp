#pragma once

#include <cstdint>

namespace swlab {

// Counter-based splittable generator. A draw is a pure function of
// (seed, stream, counter), so any draw can be reproduced or skipped to in
// O(1) and distinct stream ids give statistically independent sequences.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform01();       // [0, 1)
  double uniform01_open();  // (0, 1]
  double normal();          // standard normal, Box-Muller pair cached

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  // Jump to an absolute counter position. Drops the cached normal partner.
  void seek(std::uint64_t counter);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t base_;
  std::uint64_t gamma_;  // odd
  std::uint64_t counter_ = 0;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace swlab
