// Acceptance suite: one self-contained check per shipped guarantee, each
// printed as a single PASS/FAIL line with its runtime. Exits nonzero if any
// check fails or overruns its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "discord/equilibrium.hpp"
#include "discord/network.hpp"
#include "discord/oracle.hpp"
#include "discord/planner.hpp"
#include "discord/rng.hpp"
#include "discord/spectrum.hpp"
#include "discord/stats.hpp"
#include "helpers.hpp"

using namespace discord;
using discord::testing::generic_network;
using discord::testing::mixed_network;
using discord::testing::random_mean_zero_unit;
using discord::testing::random_profile;

namespace {

struct Criterion {
  int id;
  std::string label;
  double time_budget_s;
  std::function<bool(std::ostringstream&)> body;
};

constexpr double kBetas[] = {0.0, 0.3, 0.7, 0.95};

// 1 & 2: spectral forms of welfare and both covariances match their direct
// evaluations on 200 random instances, 1e-9 relative.
bool identity_criterion(std::ostringstream& log, bool covariances) {
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 3 + (k % 10);
    const GameParams params{kBetas[k % 4], -1};
    const Network net = mixed_network(n, k, 10000 + 13 * k);
    const Spectrum spec = decompose(net);
    Rng rng(20000 + k);
    const Profile f = random_mean_zero_unit(n, rng) * (0.5 + rng.uniform());
    const Profile a = solve_equilibrium(net, params, f);

    if (!covariances) {
      const double direct = welfare(net, params, a, f);
      worst = std::max(worst, std::abs(direct - welfare_spectral(spec, params, f)) /
                                  (1.0 + std::abs(direct)));
    } else {
      const double cn = cov_neighbors(net, a);
      worst = std::max(worst, std::abs(cn - cov_neighbors_spectral(spec, params, f)) /
                                  (1.0 + std::abs(cn)));
      const double cr = cov_random_pair(a);
      worst = std::max(worst, std::abs(cr - cov_random_pair_spectral(spec, params, f)) /
                                  (1.0 + std::abs(cr)));
    }
  }
  log << "200 instances, worst relative gap " << worst;
  return worst <= 1e-9;
}

// 3: the sphere searches attain the closed-form extremal welfare and align
// with the predicted eigenvectors.
bool prop1_criterion(std::ostringstream& log) {
  double worst_gap = 0.0, worst_align = 1.0;
  for (int k = 0; k < 20; ++k) {
    const int n = 5 + (k % 6);  // n <= 10
    const Network net = generic_network(n, 30000 + 17 * k);
    const Spectrum spec = decompose(net);
    const double beta = 0.3 + 0.2 * (k % 3);
    for (int gamma : {-1, +1}) {
      const GameParams params{beta, gamma};
      const SimpleOptimum closed = simple_optimal_f(spec, params);
      SearchConfig cfg;
      cfg.restarts = 16;
      cfg.seed = 40000 + k;
      const SphereSearchResult found = sphere_search(net, params, cfg);
      worst_gap = std::max(worst_gap, std::abs(found.value - closed.value) /
                                          (1.0 + std::abs(closed.value)));
      worst_align = std::min(worst_align,
                             std::abs(cosine_similarity(found.f_best, closed.f_star)));
    }
  }
  log << "20 instances x both planners, worst relative welfare gap " << worst_gap
      << ", worst |cosine| " << worst_align;
  return worst_gap <= 1e-6 && worst_align >= 1.0 - 1e-5;
}

// 4: no random sample beats the claimed extremal components in any of the
// four covariance cells.
bool prop2_criterion(std::ostringstream& log) {
  const Network circle = make_circle(6);
  const Network blocks = make_homophilous_blocks({5, 5}, 0.9, 0.1, 51);
  int total_violations = 0;
  int runs = 0;
  for (const Network* net : {&circle, &blocks}) {
    for (double beta : {0.3, 0.7}) {
      const Prop2Report report =
          verify_prop2_table(*net, {beta, -1}, 100000, 50000 + runs);
      for (const auto& cell : report.cells) total_violations += cell.violations;
      ++runs;
    }
  }
  log << "4 runs x 100000 samples, " << total_violations << " cell violations";
  return total_violations == 0;
}

// 5: KKT interventions bind the budget, have the right sign structure and
// monotone loadings, and match the independent constrained search.
bool theorem1_criterion(std::ostringstream& log) {
  constexpr double kBetasT1[] = {0.3, 0.6, 0.9};
  double worst_budget = 0.0, worst_sign = 0.0, worst_mono = 0.0, worst_search = 0.0;
  int searched = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 4 + (k % 9);
    const GameParams params{kBetasT1[k % 3], k % 2 == 0 ? -1 : +1};
    const Network net = generic_network(n, 60000 + 23 * k);
    const Spectrum spec = decompose(net);
    Rng rng(70000 + k);
    const Profile f_hat = random_profile(n, rng);
    const double disagreement = to_pc_basis(spec, f_hat).tail(n - 1).squaredNorm();
    const double budget = params.gamma == 1 ? 0.4 * disagreement
                                            : (0.2 + 0.1 * (k % 6)) * disagreement;

    const InterventionResult res = optimal_intervention(spec, params, f_hat, budget);
    worst_budget = std::max(worst_budget, std::abs(res.budget_used - budget));
    double prev = 0.0;
    for (int l = 1; l < n; ++l) {
      if (res.x(l) == 0.0) continue;
      worst_sign = std::max(worst_sign, params.gamma * res.x(l));
      worst_mono = std::max(worst_mono, prev - std::abs(res.x(l)));
      prev = std::abs(res.x(l));
    }

    if (n <= 8) {
      SearchConfig cfg;
      cfg.restarts = 10;
      cfg.seed = 80000 + k;
      const ConstrainedSearchResult search =
          constrained_search(net, params, f_hat, budget, cfg);
      worst_search = std::max(worst_search,
                              std::abs(res.welfare_after - search.value) /
                                  (1.0 + std::abs(search.value)));
      ++searched;
    }
  }
  log << "100 instances (" << searched << " searched), worst budget gap "
      << worst_budget << ", sign violation " << worst_sign << ", monotonicity violation "
      << worst_mono << ", search gap " << worst_search;
  return worst_budget <= 1e-9 && worst_sign <= 1e-12 && worst_mono <= 1e-12 &&
         worst_search <= 1e-6;
}

// 6: multiplier ratios converge monotonically to the zeta ratios as the
// budget vanishes, within 1e-2 at C = 1e-8.
bool prop3_criterion(std::ostringstream& log) {
  double worst_final = 0.0, worst_trend = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int n = 5 + (k % 6);
    const GameParams params{0.3 + 0.12 * (k % 5), k % 2 == 0 ? -1 : +1};
    const Network net = generic_network(n, 90000 + 29 * k);
    const Spectrum spec = decompose(net);
    Rng rng(95000 + k);
    const Profile f_hat = random_profile(n, rng);

    std::vector<std::vector<RatioRow>> tables;
    for (double budget : {1e-4, 1e-6, 1e-8})
      tables.push_back(small_budget_ratios(spec, params, f_hat, budget));
    for (std::size_t r = 0; r < tables[0].size(); ++r) {
      double prev_gap = std::numeric_limits<double>::infinity();
      for (const auto& table : tables) {
        const double gap = std::abs(table[r].m_ratio - table[r].zeta_ratio) /
                           std::abs(table[r].zeta_ratio);
        worst_trend = std::max(worst_trend, gap - prev_gap);
        prev_gap = gap;
      }
      worst_final = std::max(worst_final, prev_gap);
    }
  }
  log << "20 instances, worst relative gap at C=1e-8 " << worst_final
      << ", worst non-monotone step " << worst_trend;
  return worst_final <= 1e-2 && worst_trend <= 1e-10;
}

// 7: the two equilibrium solvers agree, actions average ideal points, and
// the mean passes through.
bool equilibrium_criterion(std::ostringstream& log) {
  double worst_pair = 0.0, worst_bounds = 0.0, worst_mean = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 3 + (k % 10);
    const GameParams params{kBetas[k % 4], -1};
    const Network net = mixed_network(n, k + 2, 110000 + 31 * k);
    Rng rng(120000 + k);
    const Profile f = random_profile(n, rng);
    const Profile a = solve_equilibrium(net, params, f);
    const Profile b = solve_equilibrium_neumann(net, params, f, 1e-12);
    worst_pair = std::max(worst_pair, (a - b).lpNorm<Eigen::Infinity>());
    worst_bounds = std::max(worst_bounds, std::max(f.minCoeff() - a.minCoeff(),
                                                   a.maxCoeff() - f.maxCoeff()));
    worst_mean = std::max(worst_mean, std::abs(a.mean() - f.mean()));
  }
  log << "200 instances, worst solver gap " << worst_pair << ", bound overshoot "
      << worst_bounds << ", mean drift " << worst_mean;
  return worst_pair <= 2e-12 && worst_bounds <= 1e-10 && worst_mean <= 1e-10;
}

// 8: on strongly homophilous networks the malevolent optimum has low
// similarity to the spectral cut: |rho(delta*, u^2)| <= |m(lambda_2)| and
// m(lambda_2) is small next to the largest multiplier.
bool homophily_criterion(std::ostringstream& log) {
  const GameParams params{0.9, -1};
  const double budget = 4.0;
  int qualifying = 0;
  double worst_bound = -1.0, worst_ratio = 0.0, min_lambda2 = 1.0;
  for (std::uint64_t seed = 0; qualifying < 10 && seed < 400; ++seed) {
    const Network net = make_homophilous_blocks({15, 15}, 0.7, 0.005, 130000 + seed);
    const Spectrum spec = decompose(net);
    if (spec.eigenvalues(1) < 0.9 || spec.eigenvalues(1) - spec.eigenvalues(2) < 1e-8)
      continue;
    ++qualifying;
    min_lambda2 = std::min(min_lambda2, spec.eigenvalues(1));

    Rng rng(140000 + seed);
    const Profile f_hat = random_mean_zero_unit(net.n, rng);
    const InterventionResult res = optimal_intervention(spec, params, f_hat, budget);
    const auto rows = similarity_profile(res, spec, f_hat);

    if (!rows[1].m) return false;  // generic f_hat always loads u^2
    const double m2 = std::abs(*rows[1].m);
    worst_bound = std::max(worst_bound, std::abs(res.similarities(1)) - m2);
    double m_max = 0.0;
    for (const auto& row : rows)
      if (row.ell >= 2 && row.m) m_max = std::max(m_max, std::abs(*row.m));
    worst_ratio = std::max(worst_ratio, m2 / m_max);
  }
  log << qualifying << " instances with lambda_2 >= 0.9 (min " << min_lambda2
      << "), worst bound slack " << worst_bound << ", worst m2/m_max " << worst_ratio;
  return qualifying == 10 && worst_bound <= 1e-12 && worst_ratio <= 0.2;
}

// 9: eigendecomposition residuals stay below 1e-8 up to n = 200.
bool eigensolver_criterion(std::ostringstream& log) {
  std::vector<Network> fixtures;
  for (int n : {3, 4, 5, 6, 20, 50, 100, 200}) fixtures.push_back(make_circle(n));
  fixtures.push_back(make_homophilous_blocks({50, 50}, 0.2, 0.02, 1));
  fixtures.push_back(make_homophilous_blocks({100, 100}, 0.1, 0.01, 2));
  for (int n : {30, 120, 200})
    fixtures.push_back(make_random_weighted_complete(n, 0.5, 1.5, n));

  double worst_recon = 0.0, worst_ortho = 0.0;
  for (const Network& net : fixtures) {
    const Spectrum spec = decompose(net);
    const int n = net.n;
    worst_recon = std::max(worst_recon,
                           (spec.eigenvectors * spec.eigenvalues.asDiagonal() *
                                spec.eigenvectors.transpose() -
                            net.weights)
                               .cwiseAbs()
                               .maxCoeff());
    worst_ortho = std::max(worst_ortho,
                           (spec.eigenvectors.transpose() * spec.eigenvectors -
                            Eigen::MatrixXd::Identity(n, n))
                               .cwiseAbs()
                               .maxCoeff());
  }
  log << fixtures.size() << " fixtures up to n=200, worst reconstruction "
      << worst_recon << ", worst orthonormality " << worst_ortho;
  return worst_recon <= 1e-8 && worst_ortho <= 1e-8;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "welfare identity, spectral vs direct", 5.0,
       [](std::ostringstream& log) { return identity_criterion(log, false); }},
      {2, "covariance identities, spectral vs direct", 5.0,
       [](std::ostringstream& log) { return identity_criterion(log, true); }},
      {3, "sphere searches attain the closed-form optima", 60.0, prop1_criterion},
      {4, "extremal components beat 100k random samples", 60.0, prop2_criterion},
      {5, "interventions: budget, signs, monotonicity, search agreement", 120.0,
       theorem1_criterion},
      {6, "multiplier ratios converge to zeta ratios", 30.0, prop3_criterion},
      {7, "equilibrium solver cross-checks", 5.0, equilibrium_criterion},
      {8, "homophily bounds the cut-component similarity", 30.0, homophily_criterion},
      {9, "eigensolver residuals up to n=200", 30.0, eigensolver_criterion},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::ostringstream log;
    bool ok = false;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criterion.body(log);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed < criterion.time_budget_s;
    const bool passed = ok && in_budget;
    if (!passed) ++failures;
    std::printf("[%s] criterion %d: %s (%.2fs of %.0fs) %s%s\n",
                passed ? "PASS" : "FAIL", criterion.id, criterion.label.c_str(),
                elapsed, criterion.time_budget_s, log.str().c_str(),
                error.empty() ? "" : ("; error: " + error).c_str());
  }
  if (failures > 0) std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
