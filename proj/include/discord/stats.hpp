#pragma once

#include <Eigen/Dense>

#include "discord/equilibrium.hpp"
#include "discord/network.hpp"
#include "discord/spectrum.hpp"

namespace discord {

// Covariances are only defined for centered profiles.
inline constexpr double kMeanZeroTol = 1e-9;

/// Per-component equilibrium welfare weight:
/// zeta(lambda) = -beta (1-beta) (1-lambda) [2 - beta (1+lambda)] / (1 - beta lambda)^2.
/// Nonpositive, increasing in lambda, zero at lambda = 1 (and identically
/// zero when beta = 0).
double zeta(double beta, double lambda);

/// Per-component weight of the neighbor covariance of equilibrium actions:
/// eta(lambda) = (1-beta)^2 lambda / ((1 - beta lambda)^2 n).
double eta(double beta, double lambda, int n);

/// Per-component weight of the random-pair covariance of equilibrium actions:
/// nu(lambda) = -(1-beta)^2 / ((1 - beta lambda)^2 n^2). Negative, decreasing.
double nu(double beta, double lambda, int n);

/// Equilibrium welfare from ideal points via the spectral form
/// sum_l zeta(lambda_l) fbar_l^2. Must agree with the direct evaluation.
double welfare_spectral(const Spectrum& spec, const GameParams& params,
                        const Eigen::Ref<const Profile>& f);

/// Covariance of the z-values of a uniformly drawn interacting pair:
/// (1/n) sum_{ij} g_ij z_i z_j. Requires mean-zero z.
double cov_neighbors(const Network& net, const Eigen::Ref<const Profile>& z);

/// Neighbor covariance of equilibrium actions a*(f), in spectral form
/// sum_l eta(lambda_l) fbar_l^2. Requires mean-zero f.
double cov_neighbors_spectral(const Spectrum& spec, const GameParams& params,
                              const Eigen::Ref<const Profile>& f);

/// Covariance of the z-values of a random ordered pair, -(1/n^2) sum_i z_i^2
/// for mean-zero z (1/n^2 pair-mass convention; the uniform i != j variant is
/// this value times n/(n-1)).
double cov_random_pair(const Eigen::Ref<const Profile>& z);

/// Random-pair covariance of equilibrium actions a*(f), in spectral form
/// sum_l nu(lambda_l) fbar_l^2. Requires mean-zero f.
double cov_random_pair_spectral(const Spectrum& spec, const GameParams& params,
                                const Eigen::Ref<const Profile>& f);

struct WelfareReport {
  double direct = 0.0;
  double spectral = 0.0;
  double relative_gap = 0.0;  // |direct - spectral| / (1 + |direct|)
};

/// Welfare evaluated through both routes (equilibrium solve + payoff sum,
/// and the spectral form). Throws InternalConsistencyError with both values
/// if they disagree beyond 1e-8 relative.
WelfareReport welfare_dual(const Network& net, const Spectrum& spec,
                           const GameParams& params,
                           const Eigen::Ref<const Profile>& f);

}  // namespace discord
