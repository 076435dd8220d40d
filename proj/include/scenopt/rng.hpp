// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

namespace scenopt {

// Counter-based pseudo-random stream built on SplitMix64.  A stream is fully
// determined by (master_seed, stream_id): the two are mixed into the initial
// state and the generator then walks a Weyl sequence, so replaying a stream id
// reproduces the same draws no matter how many other streams were consumed in
// between.  That property is what makes Monte Carlo trials reproducible under
// any scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53-bit resolution.
  double uniform01();
  double uniform(double lo, double hi);

  // Standard normal deviate (Box-Muller; the spare value is cached).
  double normal();

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

// Runs body(i) for i = 0..n-1, possibly on several threads.  Iterations must
// be independent and should write only to their own output slot.  Degrades to
// a plain loop when the host has a single core or n is small.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace scenopt
