#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "discord/equilibrium.hpp"
#include "discord/spectrum.hpp"

namespace discord {

// Components whose status-quo loading is below this (relative to ||f_hat||)
// are treated as unloaded: they receive no intervention and are excluded
// from similarity ratios.
inline constexpr double kLoadingTol = 1e-12;

// Eigenvalue gap below which optimizers stop being unique.
inline constexpr double kDistinctTol = 1e-8;

struct SimpleOptimum {
  Profile f_star;
  double value = 0.0;      // welfare attained
  bool degenerate = false; // tied optimum (repeated extreme eigenvalue or beta = 0)
};

/// Extremal unit-norm ideal-point profile. The malevolent planner (gamma=-1)
/// loads everything on the last principal component, the benevolent planner
/// (gamma=+1) on the second; the attained welfare is zeta at that eigenvalue.
SimpleOptimum simple_optimal_f(const Spectrum& spec, const GameParams& params);

struct InterventionResult {
  Profile delta_star;            // optimal perturbation of ideal points
  Profile f_star;                // f_hat + delta_star
  Profile a_star;                // equilibrium at f_star
  Eigen::VectorXd x;             // per-component loading ratios; x(0) == 0
  double mu = 0.0;               // budget multiplier
  double welfare_before = 0.0;
  double welfare_after = 0.0;
  Eigen::VectorXd similarities;  // rho(delta_star, u^l) per component
  double budget_used = 0.0;      // ||delta_star||^2
  std::vector<int> zero_loading_components;  // 1-based l >= 2 left untouched
  bool degenerate_spectrum = false;   // repeated eigenvalues: per-eigenvector
                                      // similarities are basis-dependent
  bool degenerate_objective = false;  // welfare insensitive to any feasible
                                      // perturbation; delta_star is zero
  bool bliss = false;                 // gamma=+1 and the budget covered all
                                      // removable disagreement
};

/// Welfare-optimal perturbation of the status quo f_hat under the budget
/// ||delta||^2 <= C. Solved in the principal-component basis: each loaded
/// component l >= 2 gets delta_l = x_l fhat_l with
/// x_l = gamma zeta(lambda_l) / (mu - gamma zeta(lambda_l)), and mu > 0 is
/// the unique root of the budget equation, found by bisection.
///
/// For gamma=+1 with C large enough to cancel all disagreement, throws
/// BlissPointError carrying the exact canceling delta, unless allow_bliss is
/// set, in which case that delta is returned with welfare_after = 0.
InterventionResult optimal_intervention(const Spectrum& spec,
                                        const GameParams& params,
                                        const Eigen::Ref<const Profile>& f_hat,
                                        double budget, bool allow_bliss = false);

/// rho(y, z) = <y, z> / (||y|| ||z||), clamped to [-1, 1].
double cosine_similarity(const Eigen::Ref<const Profile>& y,
                         const Eigen::Ref<const Profile>& z);

struct SimilarityRow {
  int ell = 0;  // 1-based component index
  double lambda = 0.0;
  double rho_delta = 0.0;        // rho(delta_star, u^ell)
  double rho_fhat = 0.0;         // rho(f_hat, u^ell)
  std::optional<double> m;       // rho_delta / rho_fhat where defined
};

/// Per-component similarity table. m is absent for components where the
/// status quo has no loading.
std::vector<SimilarityRow> similarity_profile(const InterventionResult& result,
                                              const Spectrum& spec,
                                              const Eigen::Ref<const Profile>& f_hat);

struct RatioRow {
  int ell = 0;
  int ell_prime = 0;
  double m_ratio = 0.0;     // m(lambda_ell) / m(lambda_ell') at this budget
  double zeta_ratio = 0.0;  // zeta(lambda_ell) / zeta(lambda_ell'), the
                            // small-budget limit of m_ratio
};

/// Multiplier ratios at budget C against their vanishing-budget limits, for
/// every ordered pair of components l, l' >= 2 that are loaded and have
/// nonzero zeta. Empty when beta = 0.
std::vector<RatioRow> small_budget_ratios(const Spectrum& spec,
                                          const GameParams& params,
                                          const Eigen::Ref<const Profile>& f_hat,
                                          double budget);

}  // namespace discord
