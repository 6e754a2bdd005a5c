#include "discord/planner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "discord/errors.hpp"
#include "discord/stats.hpp"

namespace discord {

SimpleOptimum simple_optimal_f(const Spectrum& spec, const GameParams& params) {
  check_params(params);
  const int n = spec.n();
  if (n < 2) throw InvalidInputError("simple_optimal_f: need at least two components");
  const auto& lam = spec.eigenvalues;

  SimpleOptimum out;
  if (params.gamma == -1) {
    out.f_star = spec.eigenvectors.col(n - 1);
    out.value = zeta(params.beta, lam(n - 1));
    out.degenerate = params.beta == 0.0 || lam(n - 2) - lam(n - 1) <= kDistinctTol;
  } else {
    out.f_star = spec.eigenvectors.col(1);
    out.value = zeta(params.beta, lam(1));
    out.degenerate = params.beta == 0.0 ||
                     (n >= 3 && lam(1) - lam(2) <= kDistinctTol);
  }
  return out;
}

InterventionResult optimal_intervention(const Spectrum& spec,
                                        const GameParams& params,
                                        const Eigen::Ref<const Profile>& f_hat,
                                        double budget, bool allow_bliss) {
  check_params(params);
  const int n = spec.n();
  if (f_hat.size() != n)
    throw InvalidInputError("optimal_intervention: profile length does not match spectrum");
  if (!(budget > 0.0)) throw InvalidInputError("optimal_intervention: budget must be positive");
  const int gamma = params.gamma;

  const Eigen::VectorXd fbar = to_pc_basis(spec, f_hat);
  const double f_scale = f_hat.norm();
  Eigen::VectorXd z(n);
  for (int l = 0; l < n; ++l) z(l) = zeta(params.beta, spec.eigenvalues(l));

  // The constant component never matters for welfare; among the rest, only
  // components actually loaded in the status quo receive intervention, and
  // only those with nonzero zeta can move the objective.
  std::vector<int> active;
  std::vector<int> zero_loading;
  double active_mass = 0.0;
  for (int l = 1; l < n; ++l) {
    if (std::abs(fbar(l)) > kLoadingTol * f_scale) {
      if (z(l) != 0.0) {
        active.push_back(l);
        active_mass += fbar(l) * fbar(l);
      }
    } else {
      zero_loading.push_back(l + 1);
    }
  }

  InterventionResult res;
  res.x = Eigen::VectorXd::Zero(n);
  res.zero_loading_components = zero_loading;
  res.degenerate_spectrum = !check_distinct(spec, kDistinctTol);

  const auto finalize = [&](const Eigen::VectorXd& dbar, double mu) {
    res.mu = mu;
    res.delta_star = from_pc_basis(spec, dbar);
    res.f_star = f_hat + res.delta_star;
    const Eigen::VectorXd fstar_bar = fbar + dbar;
    res.a_star = from_pc_basis(spec, equilibrium_pc(spec, params, fstar_bar));
    res.welfare_before = 0.0;
    res.welfare_after = 0.0;
    for (int l = 0; l < n; ++l) {
      res.welfare_before += z(l) * fbar(l) * fbar(l);
      res.welfare_after += z(l) * fstar_bar(l) * fstar_bar(l);
    }
    res.budget_used = res.delta_star.squaredNorm();
    const double dnorm = res.delta_star.norm();
    res.similarities =
        dnorm > 0.0 ? Eigen::VectorXd(dbar / dnorm) : Eigen::VectorXd::Zero(n);
  };

  if (active.empty()) {
    // Either no disagreement is loaded or zeta vanishes everywhere it is
    // (beta = 0, or only unit eigenvalues): welfare cannot be moved.
    res.degenerate_objective = true;
    finalize(Eigen::VectorXd::Zero(n), 0.0);
    return res;
  }

  if (gamma == 1 && budget >= active_mass * (1.0 - 1e-12)) {
    // Bliss point: the budget covers every welfare-relevant component.
    // Cancel all of f_hat's disagreement if affordable, otherwise exactly
    // the welfare-relevant part.
    double full_mass = 0.0;
    for (int l = 1; l < n; ++l) full_mass += fbar(l) * fbar(l);
    Eigen::VectorXd dbar = Eigen::VectorXd::Zero(n);
    if (budget >= full_mass) {
      for (int l = 1; l < n; ++l) dbar(l) = -fbar(l);
    } else {
      for (int l : active) dbar(l) = -fbar(l);
    }
    if (!allow_bliss) {
      std::ostringstream os;
      os << "optimal_intervention: budget " << budget
         << " covers all removable disagreement (" << active_mass
         << "); zero miscoordination is feasible. Pass allow_bliss to accept "
            "the canceling intervention.";
      throw BlissPointError(os.str(), from_pc_basis(spec, dbar));
    }
    res.bliss = true;
    for (int l = 1; l < n; ++l)
      if (dbar(l) != 0.0) res.x(l) = -1.0;
    finalize(dbar, 0.0);
    return res;
  }

  // x_l(mu) = gamma zeta_l / (mu - gamma zeta_l). On mu > max gamma zeta_l
  // every denominator is positive and the spent budget
  // sum fbar_l^2 x_l(mu)^2 decreases strictly from +inf (gamma=-1) or from
  // the active mass (gamma=+1, above the bliss check) to 0, so the budget
  // equation has a unique root.
  double mu_lo = 0.0;
  for (int l : active) mu_lo = std::max(mu_lo, gamma * z(l));
  mu_lo += 1e-15;

  const auto budget_at = [&](double mu) {
    double b = 0.0;
    for (int l : active) {
      const double xl = gamma * z(l) / (mu - gamma * z(l));
      b += fbar(l) * fbar(l) * xl * xl;
    }
    return b;
  };

  double hi = std::max(1.0, mu_lo + 1.0);
  while (budget_at(hi) >= budget) hi = mu_lo + 2.0 * (hi - mu_lo);
  double lo = mu_lo;
  double mu = 0.5 * (lo + hi);
  const double budget_tol = 1e-12 * (1.0 + budget);
  for (int iter = 0; iter < 500; ++iter) {
    mu = 0.5 * (lo + hi);
    const double b = budget_at(mu);
    if (std::abs(b - budget) <= budget_tol) break;
    if (b > budget) {
      lo = mu;
    } else {
      hi = mu;
    }
  }
  if (std::abs(budget_at(mu) - budget) > 1e-9 * (1.0 + budget)) {
    std::ostringstream os;
    os << "optimal_intervention: bisection failed to bind the budget (spent "
       << budget_at(mu) << " of " << budget << ")";
    throw InternalConsistencyError(os.str());
  }

  Eigen::VectorXd dbar = Eigen::VectorXd::Zero(n);
  for (int l : active) {
    res.x(l) = gamma * z(l) / (mu - gamma * z(l));
    dbar(l) = res.x(l) * fbar(l);
  }
  finalize(dbar, mu);
  return res;
}

double cosine_similarity(const Eigen::Ref<const Profile>& y,
                         const Eigen::Ref<const Profile>& z) {
  if (y.size() != z.size())
    throw InvalidInputError("cosine_similarity: length mismatch");
  const double ny = y.norm();
  const double nz = z.norm();
  if (ny == 0.0 || nz == 0.0)
    throw InvalidInputError("cosine_similarity: undefined for the zero vector");
  return std::clamp(y.dot(z) / (ny * nz), -1.0, 1.0);
}

std::vector<SimilarityRow> similarity_profile(const InterventionResult& result,
                                              const Spectrum& spec,
                                              const Eigen::Ref<const Profile>& f_hat) {
  const int n = spec.n();
  if (result.delta_star.size() != n || f_hat.size() != n)
    throw InvalidInputError("similarity_profile: length mismatch");
  const double dnorm = result.delta_star.norm();
  if (dnorm == 0.0)
    throw InvalidInputError("similarity_profile: intervention is zero");
  const double fnorm = f_hat.norm();
  if (fnorm == 0.0)
    throw InvalidInputError("similarity_profile: status quo is zero, similarities undefined");

  const Eigen::VectorXd dbar = to_pc_basis(spec, result.delta_star);
  const Eigen::VectorXd fbar = to_pc_basis(spec, f_hat);

  std::vector<SimilarityRow> rows(n);
  for (int l = 0; l < n; ++l) {
    auto& row = rows[l];
    row.ell = l + 1;
    row.lambda = spec.eigenvalues(l);
    row.rho_delta = dbar(l) / dnorm;
    row.rho_fhat = fbar(l) / fnorm;
    if (std::abs(fbar(l)) > kLoadingTol * fnorm)
      row.m = row.rho_delta / row.rho_fhat;
  }
  return rows;
}

std::vector<RatioRow> small_budget_ratios(const Spectrum& spec,
                                          const GameParams& params,
                                          const Eigen::Ref<const Profile>& f_hat,
                                          double budget) {
  const InterventionResult res = optimal_intervention(spec, params, f_hat, budget);
  std::vector<RatioRow> rows;
  if (res.degenerate_objective) return rows;  // beta = 0: all pairs excluded

  const int n = spec.n();
  std::vector<int> eligible;
  for (int l = 1; l < n; ++l)
    if (res.x(l) != 0.0) eligible.push_back(l);

  for (int a : eligible) {
    const double za = zeta(params.beta, spec.eigenvalues(a));
    for (int b : eligible) {
      const double zb = zeta(params.beta, spec.eigenvalues(b));
      rows.push_back({a + 1, b + 1, res.x(a) / res.x(b), za / zb});
    }
  }
  return rows;
}

}  // namespace discord
