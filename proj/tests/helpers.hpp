#pragma once

// Shared deterministic instance generators for the test suites.

#include <cstdint>

#include "discord/equilibrium.hpp"
#include "discord/errors.hpp"
#include "discord/network.hpp"
#include "discord/rng.hpp"
#include "discord/spectrum.hpp"

namespace discord::testing {

inline Profile random_profile(int n, Rng& rng) {
  Profile f(n);
  for (int i = 0; i < n; ++i) f(i) = rng.normal();
  return f;
}

inline Profile random_mean_zero_unit(int n, Rng& rng) {
  Profile f = random_profile(n, rng);
  f.array() -= f.mean();
  return f / f.norm();
}

// Random doubly stochastic networks with all eigenvalue gaps above 1e-6;
// the planner results assume distinct spectra.
inline Network generic_network(int n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Network net = make_random_weighted_complete(n, 0.5, 1.5, seed + attempt);
    if (check_distinct(decompose(net), 1e-6)) return net;
  }
}

// Mixed-topology valid instance: circle, weighted complete, or block pair.
// Sparse block samples can lack a doubly stochastic scaling (a pendant-like
// cross edge forces a zero weight), so those are resampled.
inline Network mixed_network(int n, int which, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    try {
      switch (which % 3) {
        case 0:
          return make_circle(n);
        case 1:
          return make_random_weighted_complete(n, 0.5, 1.5, seed + attempt);
        default:
          if (n < 4) return make_random_weighted_complete(n, 0.5, 1.5, seed + attempt);
          return make_homophilous_blocks({n / 2, n - n / 2}, 1.0, 0.5, seed + attempt);
      }
    } catch (const ConvergenceError&) {
      if (attempt > 100) throw;
    }
  }
}

}  // namespace discord::testing
