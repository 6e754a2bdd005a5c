#include "discord/equilibrium.hpp"

#include <cmath>
#include <sstream>

#include "discord/errors.hpp"

namespace discord {

void check_params(const GameParams& params) {
  if (!(params.beta >= 0.0 && params.beta < 1.0))
    throw InvalidInputError("GameParams: beta must lie in [0, 1)");
  if (params.gamma != 1 && params.gamma != -1)
    throw InvalidInputError("GameParams: gamma must be +1 or -1");
}

Profile solve_equilibrium(const Network& net, const GameParams& params,
                          const Eigen::Ref<const Profile>& f) {
  check_params(params);
  if (f.size() != net.n)
    throw InvalidInputError("solve_equilibrium: profile length does not match network");
  const double beta = params.beta;
  const int n = net.n;

  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - beta * net.weights;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  // Singularity cannot occur for beta < 1 (spectral radius of beta G < 1);
  // a tiny pivot means the inputs were not a valid game.
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < 1e-14)
    throw InternalConsistencyError("solve_equilibrium: near-singular system, pivot < 1e-14");

  Profile a = lu.solve((1.0 - beta) * f);
  const double residual =
      (system * a - (1.0 - beta) * f).lpNorm<Eigen::Infinity>();
  const double bound = 1e-10 * (1.0 + f.lpNorm<Eigen::Infinity>());
  if (residual > bound) {
    std::ostringstream os;
    os << "solve_equilibrium: residual " << residual << " exceeds " << bound;
    throw InternalConsistencyError(os.str());
  }
  return a;
}

Profile solve_equilibrium_neumann(const Network& net, const GameParams& params,
                                  const Eigen::Ref<const Profile>& f, double tol) {
  check_params(params);
  if (f.size() != net.n)
    throw InvalidInputError("solve_equilibrium_neumann: profile length does not match network");
  if (!(tol > 0.0)) throw InvalidInputError("solve_equilibrium_neumann: tol must be positive");
  const double beta = params.beta;

  // Powers of a stochastic matrix contract nothing in sup norm, so the tail
  // after T terms is bounded by beta^{T+1} ||f||_inf.
  const double f_inf = f.lpNorm<Eigen::Infinity>();
  Profile term = f;
  Profile acc = (1.0 - beta) * f;
  double coef = 1.0;  // beta^t for the current term
  while (coef * beta * f_inf >= tol) {
    term = net.weights * term;
    coef *= beta;
    acc += (1.0 - beta) * coef * term;
  }
  return acc;
}

Profile equilibrium_pc(const Spectrum& spec, const GameParams& params,
                       const Eigen::Ref<const Profile>& fbar) {
  check_params(params);
  if (fbar.size() != spec.n())
    throw InvalidInputError("equilibrium_pc: profile length does not match spectrum");
  Profile abar(fbar.size());
  for (int l = 0; l < fbar.size(); ++l)
    abar(l) = attenuation(params.beta, spec.eigenvalues(l)) * fbar(l);
  return abar;
}

double agent_payoff(const Network& net, const GameParams& params,
                    const Eigen::Ref<const Profile>& a,
                    const Eigen::Ref<const Profile>& f, int i) {
  check_params(params);
  if (a.size() != net.n || f.size() != net.n)
    throw InvalidInputError("agent_payoff: profile length does not match network");
  if (i < 0 || i >= net.n) throw InvalidInputError("agent_payoff: node index out of range");
  const double beta = params.beta;
  double v = 0.0;
  for (int j = 0; j < net.n; ++j) {
    const double miscoord = a(i) - a(j);
    const double distort = a(i) - f(i);
    v += net.weights(i, j) *
         (-beta * miscoord * miscoord - (1.0 - beta) * distort * distort);
  }
  return v;
}

double welfare(const Network& net, const GameParams& params,
               const Eigen::Ref<const Profile>& a,
               const Eigen::Ref<const Profile>& f) {
  double v = 0.0;
  for (int i = 0; i < net.n; ++i) v += agent_payoff(net, params, a, f, i);
  return v;
}

}  // namespace discord
