#pragma once

#include <Eigen/Dense>

#include "discord/network.hpp"
#include "discord/spectrum.hpp"

namespace discord {

// A node-indexed real vector: ideal points f, actions a, or perturbations.
using Profile = Eigen::VectorXd;

struct GameParams {
  double beta = 0.0;  // miscoordination weight, in [0, 1)
  int gamma = -1;     // planner direction: +1 benevolent, -1 malevolent
};

/// Throws InvalidInputError unless beta in [0,1) and gamma in {-1,+1}.
void check_params(const GameParams& params);

/// Per-component equilibrium attenuation factor (1-beta)/(1-beta*lambda).
inline double attenuation(double beta, double lambda) {
  return (1.0 - beta) / (1.0 - beta * lambda);
}

/// Unique Nash equilibrium a* solving (I - beta G) a = (1 - beta) f,
/// by LU factorization with partial pivoting.
Profile solve_equilibrium(const Network& net, const GameParams& params,
                          const Eigen::Ref<const Profile>& f);

/// Same equilibrium via the geometric-series expansion
/// sum_t (1-beta) beta^t G^t f, truncated once beta^{T+1} ||f||_inf < tol.
/// Kept as an independent cross-check on the direct solver.
Profile solve_equilibrium_neumann(const Network& net, const GameParams& params,
                                  const Eigen::Ref<const Profile>& f, double tol);

/// Equilibrium in the principal-component basis: each coordinate of fbar is
/// scaled by attenuation(beta, lambda_l).
Profile equilibrium_pc(const Spectrum& spec, const GameParams& params,
                       const Eigen::Ref<const Profile>& fbar);

/// Expected payoff of node i: sum_j g_ij (-beta (a_i-a_j)^2 - (1-beta)(a_i-f_i)^2).
double agent_payoff(const Network& net, const GameParams& params,
                    const Eigen::Ref<const Profile>& a,
                    const Eigen::Ref<const Profile>& f, int i);

/// Utilitarian welfare: sum of agent_payoff over all nodes. Always <= 0.
double welfare(const Network& net, const GameParams& params,
               const Eigen::Ref<const Profile>& a,
               const Eigen::Ref<const Profile>& f);

}  // namespace discord
