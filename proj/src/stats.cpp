#include "discord/stats.hpp"

#include <cmath>
#include <sstream>

#include "discord/errors.hpp"

namespace discord {

namespace {

void check_scalar_args(double beta, double lambda) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw InvalidInputError("spectral scalar: beta must lie in [0, 1)");
  // Allow the same slack the eigensolver guarantees.
  if (!(std::abs(lambda) <= 1.0 + 1e-6))
    throw InvalidInputError("spectral scalar: lambda must lie in [-1, 1]");
}

void check_mean_zero(const Eigen::Ref<const Profile>& z, const char* who) {
  if (std::abs(z.sum()) > kMeanZeroTol) {
    std::ostringstream os;
    os << who << ": profile must be mean-zero (|sum| = " << std::abs(z.sum())
       << " > " << kMeanZeroTol << ")";
    throw InvalidInputError(os.str());
  }
}

}  // namespace

double zeta(double beta, double lambda) {
  check_scalar_args(beta, lambda);
  const double d = 1.0 - beta * lambda;
  return -beta * (1.0 - beta) * (1.0 - lambda) * (2.0 - beta * (1.0 + lambda)) / (d * d);
}

double eta(double beta, double lambda, int n) {
  check_scalar_args(beta, lambda);
  if (n < 1) throw InvalidInputError("eta: n must be positive");
  const double d = 1.0 - beta * lambda;
  return (1.0 - beta) * (1.0 - beta) * lambda / (d * d * n);
}

double nu(double beta, double lambda, int n) {
  check_scalar_args(beta, lambda);
  if (n < 1) throw InvalidInputError("nu: n must be positive");
  const double d = 1.0 - beta * lambda;
  return -(1.0 - beta) * (1.0 - beta) / (d * d * static_cast<double>(n) * n);
}

double welfare_spectral(const Spectrum& spec, const GameParams& params,
                        const Eigen::Ref<const Profile>& f) {
  check_params(params);
  const Eigen::VectorXd fbar = to_pc_basis(spec, f);
  double v = 0.0;
  for (int l = 0; l < spec.n(); ++l)
    v += zeta(params.beta, spec.eigenvalues(l)) * fbar(l) * fbar(l);
  return v;
}

double cov_neighbors(const Network& net, const Eigen::Ref<const Profile>& z) {
  if (z.size() != net.n)
    throw InvalidInputError("cov_neighbors: profile length does not match network");
  check_mean_zero(z, "cov_neighbors");
  double s = 0.0;
  for (int i = 0; i < net.n; ++i)
    for (int j = 0; j < net.n; ++j) s += net.weights(i, j) * z(i) * z(j);
  return s / net.n;
}

double cov_neighbors_spectral(const Spectrum& spec, const GameParams& params,
                              const Eigen::Ref<const Profile>& f) {
  check_params(params);
  check_mean_zero(f, "cov_neighbors_spectral");
  const Eigen::VectorXd fbar = to_pc_basis(spec, f);
  double v = 0.0;
  for (int l = 0; l < spec.n(); ++l)
    v += eta(params.beta, spec.eigenvalues(l), spec.n()) * fbar(l) * fbar(l);
  return v;
}

double cov_random_pair(const Eigen::Ref<const Profile>& z) {
  if (z.size() < 1) throw InvalidInputError("cov_random_pair: empty profile");
  check_mean_zero(z, "cov_random_pair");
  const double n = static_cast<double>(z.size());
  return -z.squaredNorm() / (n * n);
}

double cov_random_pair_spectral(const Spectrum& spec, const GameParams& params,
                                const Eigen::Ref<const Profile>& f) {
  check_params(params);
  check_mean_zero(f, "cov_random_pair_spectral");
  const Eigen::VectorXd fbar = to_pc_basis(spec, f);
  double v = 0.0;
  for (int l = 0; l < spec.n(); ++l)
    v += nu(params.beta, spec.eigenvalues(l), spec.n()) * fbar(l) * fbar(l);
  return v;
}

WelfareReport welfare_dual(const Network& net, const Spectrum& spec,
                           const GameParams& params,
                           const Eigen::Ref<const Profile>& f) {
  WelfareReport rep;
  const Profile a_star = solve_equilibrium(net, params, f);
  rep.direct = welfare(net, params, a_star, f);
  rep.spectral = welfare_spectral(spec, params, f);
  rep.relative_gap = std::abs(rep.direct - rep.spectral) / (1.0 + std::abs(rep.direct));
  if (rep.relative_gap > 1e-8) {
    std::ostringstream os;
    os << "welfare_dual: direct and spectral welfare disagree: direct="
       << rep.direct << " spectral=" << rep.spectral << " relative_gap="
       << rep.relative_gap << " (n=" << net.n << ", beta=" << params.beta
       << ", |f|=" << f.norm() << ")";
    throw InternalConsistencyError(os.str());
  }
  return rep;
}

}  // namespace discord
