#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "discord/equilibrium.hpp"
#include "discord/network.hpp"

namespace discord {

// Brute-force and numeric-search verifiers for the closed-form optimizers.
// Everything here evaluates welfare through the direct route only (payoff
// summation on top of a linear solve); the spectral shortcuts being verified
// are never consulted.

struct SearchConfig {
  int restarts = 20;
  int max_iters = 20000;
  double step_init = 0.5;
  double tol = 1e-10;  // projected-gradient norm stopping threshold
  std::uint64_t seed = 1;
};

// Direct-route welfare of the equilibrium induced by ideal points f, with
// the linear system factored once per instance. Gradient is analytic.
class DirectWelfare {
 public:
  DirectWelfare(const Network& net, const GameParams& params);

  double value(const Eigen::Ref<const Profile>& f) const;
  Profile gradient(const Eigen::Ref<const Profile>& f) const;
  Profile equilibrium(const Eigen::Ref<const Profile>& f) const;

  const Network& net() const { return net_; }
  const GameParams& params() const { return params_; }

 private:
  Network net_;
  GameParams params_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

struct SphereSearchResult {
  Profile f_best;
  double value = 0.0;  // welfare attained at f_best
  int best_restart = -1;
};

/// Maximizes gamma * welfare over the mean-zero unit sphere of ideal points
/// by projected gradient ascent with random restarts. (The constant
/// direction is excluded: shifts along it never change welfare, so the
/// sphere problem is only meaningful across disagreement allocations.)
SphereSearchResult sphere_search(const Network& net, const GameParams& params,
                                 const SearchConfig& cfg);

struct ConstrainedSearchResult {
  Profile delta_best;
  double value = 0.0;  // welfare attained at f_hat + delta_best
  int best_restart = -1;
};

/// Maximizes gamma * welfare over perturbations with ||delta||^2 <= budget,
/// by projected gradient ascent with ball projection and random restarts.
ConstrainedSearchResult constrained_search(const Network& net,
                                           const GameParams& params,
                                           const Eigen::Ref<const Profile>& f_hat,
                                           double budget, const SearchConfig& cfg);

struct Prop2Cell {
  std::string statistic;  // "cov_neighbors" or "cov_random_pair"
  std::string kind;       // "max" or "min"
  int predicted_ell = 0;  // 1-based component claimed to attain the extreme
  double predicted_value = 0.0;
  double best_sample_value = 0.0;
  int violations = 0;
  Profile worst_f;  // first sample beating the prediction, if any
};

struct Prop2Report {
  std::vector<Prop2Cell> cells;
  int samples = 0;
  bool passed = false;
};

/// Draws random mean-zero unit ideal-point profiles and checks that no
/// sample's equilibrium covariance beats the claimed extremal components
/// (second/last eigenvector) beyond 1e-9 in any of the four table cells.
Prop2Report verify_prop2_table(const Network& net, const GameParams& params,
                               int samples, std::uint64_t seed);

}  // namespace discord
