#include "suites.hpp"

#include <cmath>
#include <vector>

#include "discord/equilibrium.hpp"
#include "discord/errors.hpp"
#include "discord/network.hpp"
#include "discord/oracle.hpp"
#include "discord/planner.hpp"
#include "discord/rng.hpp"
#include "discord/spectrum.hpp"
#include "discord/stats.hpp"

namespace discord::suites {

namespace {

double rel_gap(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a)); }

// Deterministic mixed test instances: circles, random complete graphs and
// small block networks. Resamples past graphs that admit no doubly
// stochastic scaling.
Network instance_net(int n, int which, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    try {
      switch (which % 3) {
        case 0:
          return make_circle(n);
        case 1:
          return make_random_weighted_complete(n, 0.5, 1.5, seed + attempt);
        default: {
          if (n < 4) return make_random_weighted_complete(n, 0.5, 1.5, seed + attempt);
          std::vector<int> sizes = {n / 2, n - n / 2};
          return make_homophilous_blocks(sizes, 1.0, 0.5, seed + attempt);
        }
      }
    } catch (const ConvergenceError&) {
      if (attempt > 100) throw;
    }
  }
}

Network generic_net(int n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Network net = make_random_weighted_complete(n, 0.5, 1.5, seed + attempt);
    if (check_distinct(decompose(net), 1e-6)) return net;
    if (attempt > 100)
      throw ConvergenceError("generic_net: no distinct-spectrum sample", 0.0);
  }
}

Profile random_profile(int n, Rng& rng) {
  Profile f(n);
  for (int i = 0; i < n; ++i) f(i) = rng.normal();
  return f;
}

Profile mean_zero(Profile f) {
  f.array() -= f.mean();
  return f;
}

json make_check(const std::string& name, bool passed, json details) {
  return json{{"name", name}, {"passed", passed}, {"details", std::move(details)}};
}

constexpr double kBetas[] = {0.0, 0.3, 0.7, 0.95};

}  // namespace

json run_identities(const Options& opt) {
  double worst_welfare = 0.0, worst_cn = 0.0, worst_cr = 0.0;
  int count = 0;
  for (int k = 0; k < opt.instances; ++k) {
    const int n = 3 + (k % 10);
    const GameParams params{kBetas[k % 4], -1};
    const Network net = instance_net(n, k, opt.seed * 7919 + k);
    const Spectrum spec = decompose(net);
    Rng rng(opt.seed * 31 + k);
    const Profile f = mean_zero(random_profile(n, rng));

    const Profile a = solve_equilibrium(net, params, f);
    worst_welfare = std::max(
        worst_welfare, rel_gap(welfare(net, params, a, f),
                               welfare_spectral(spec, params, f)));
    worst_cn = std::max(worst_cn, rel_gap(cov_neighbors(net, a),
                                          cov_neighbors_spectral(spec, params, f)));
    worst_cr = std::max(worst_cr, rel_gap(cov_random_pair(a),
                                          cov_random_pair_spectral(spec, params, f)));
    ++count;
  }
  const bool ok = worst_welfare <= 1e-9 && worst_cn <= 1e-9 && worst_cr <= 1e-9;
  json checks = json::array();
  checks.push_back(make_check("welfare spectral form matches direct welfare",
                              worst_welfare <= 1e-9,
                              {{"instances", count}, {"worst_relative_gap", worst_welfare}}));
  checks.push_back(make_check("neighbor covariance spectral form matches direct",
                              worst_cn <= 1e-9,
                              {{"instances", count}, {"worst_relative_gap", worst_cn}}));
  checks.push_back(make_check("random-pair covariance spectral form matches direct",
                              worst_cr <= 1e-9,
                              {{"instances", count}, {"worst_relative_gap", worst_cr}}));
  return json{{"name", "identities"}, {"passed", ok}, {"checks", checks}};
}

json run_equilibrium(const Options& opt) {
  double worst_neumann = 0.0, worst_bounds = 0.0, worst_mean = 0.0;
  for (int k = 0; k < opt.instances; ++k) {
    const int n = 3 + (k % 10);
    const GameParams params{kBetas[k % 4], -1};
    const Network net = instance_net(n, k + 1, opt.seed * 104729 + k);
    Rng rng(opt.seed * 37 + k);
    const Profile f = random_profile(n, rng);

    const Profile a = solve_equilibrium(net, params, f);
    const Profile a_series = solve_equilibrium_neumann(net, params, f, 1e-12);
    worst_neumann = std::max(worst_neumann,
                             (a - a_series).lpNorm<Eigen::Infinity>());
    worst_bounds = std::max(
        worst_bounds, std::max(f.minCoeff() - a.minCoeff(), a.maxCoeff() - f.maxCoeff()));
    worst_mean = std::max(worst_mean, std::abs(a.mean() - f.mean()));
  }
  json checks = json::array();
  checks.push_back(make_check("direct and series solvers agree",
                              worst_neumann <= 2e-12,
                              {{"worst_gap", worst_neumann}, {"tolerance", 2e-12}}));
  checks.push_back(make_check("equilibrium actions stay inside [min f, max f]",
                              worst_bounds <= 1e-10, {{"worst_overshoot", worst_bounds}}));
  checks.push_back(make_check("mean action equals mean ideal point",
                              worst_mean <= 1e-10, {{"worst_gap", worst_mean}}));
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.at("passed").get<bool>();
  return json{{"name", "equilibrium"}, {"passed", ok}, {"checks", checks}};
}

json run_gradients(const Options& opt) {
  double worst = 0.0;
  const double h = 1e-6;
  for (int k = 0; k < 10; ++k) {
    const int n = 4 + (k % 6);
    const GameParams params{kBetas[k % 4], -1};
    const Network net = instance_net(n, k, opt.seed * 613 + k);
    const DirectWelfare direct(net, params);
    Rng rng(opt.seed * 41 + k);
    for (int p = 0; p < 10; ++p) {
      const Profile f = random_profile(n, rng);
      const Profile g = direct.gradient(f);
      for (int i = 0; i < n; ++i) {
        Profile fp = f, fm = f;
        fp(i) += h;
        fm(i) -= h;
        const double fd = (direct.value(fp) - direct.value(fm)) / (2.0 * h);
        worst = std::max(worst, std::abs(g(i) - fd) / (1.0 + std::abs(fd)));
      }
    }
  }
  const bool ok = worst <= 1e-5;
  return json{{"name", "gradients"},
              {"passed", ok},
              {"checks", json::array({make_check(
                  "analytic welfare gradient matches central differences", ok,
                  {{"worst_relative_gap", worst}, {"tolerance", 1e-5}})})}};
}

json run_prop1(const Options& opt) {
  json checks = json::array();
  bool all_ok = true;
  SearchConfig cfg;
  cfg.restarts = 12;
  cfg.seed = opt.seed;
  for (int k = 0; k < 6; ++k) {
    const int n = 5 + k;
    const Network net = generic_net(n, opt.seed * 211 + k);
    const Spectrum spec = decompose(net);
    for (int gamma : {-1, +1}) {
      const GameParams params{0.3 + 0.2 * (k % 3), gamma};
      const SimpleOptimum closed = simple_optimal_f(spec, params);
      const SphereSearchResult found = sphere_search(net, params, cfg);
      const double gap = std::abs(found.value - closed.value) /
                         (1.0 + std::abs(closed.value));
      const double align =
          std::abs(cosine_similarity(found.f_best, closed.f_star));
      const bool ok = gap <= 1e-6 && align >= 1.0 - 1e-5;
      all_ok = all_ok && ok;
      checks.push_back(make_check(
          (gamma == -1 ? "sphere search recovers the last component optimum"
                       : "sphere search recovers the second component optimum"),
          ok,
          {{"n", n},
           {"beta", params.beta},
           {"value_search", found.value},
           {"value_closed_form", closed.value},
           {"relative_gap", gap},
           {"alignment", align}}));
    }
  }
  return json{{"name", "prop1"}, {"passed", all_ok}, {"checks", checks}};
}

json run_prop2(const Options& opt) {
  json checks = json::array();
  bool all_ok = true;
  const Network circle = make_circle(6);
  const Network two_block = make_homophilous_blocks({5, 5}, 0.8, 0.1, opt.seed);
  int idx = 0;
  for (const Network* net : {&circle, &two_block}) {
    for (double beta : {0.3, 0.7}) {
      const GameParams params{beta, -1};
      const Prop2Report report =
          verify_prop2_table(*net, params, opt.prop2_samples, opt.seed + idx);
      all_ok = all_ok && report.passed;
      json cells = json::array();
      for (const auto& cell : report.cells) {
        cells.push_back({{"statistic", cell.statistic},
                         {"kind", cell.kind},
                         {"predicted_ell", cell.predicted_ell},
                         {"predicted_value", cell.predicted_value},
                         {"best_sample_value", cell.best_sample_value},
                         {"violations", cell.violations}});
      }
      checks.push_back(make_check(
          std::string("extremal components hold against sampling (") +
              (net == &circle ? "circle n=6" : "two-block") + ")",
          report.passed,
          {{"beta", beta}, {"samples", report.samples}, {"cells", cells}}));
      ++idx;
    }
  }
  return json{{"name", "prop2"}, {"passed", all_ok}, {"checks", checks}};
}

json run_theorem1(const Options& opt) {
  double worst_budget = 0.0, worst_sign = 0.0, worst_mono = 0.0, worst_search = 0.0;
  int searched = 0;
  constexpr double kBetasT1[] = {0.3, 0.6, 0.9};
  for (int k = 0; k < opt.search_instances; ++k) {
    const int n = 4 + (k % 9);
    const GameParams params{kBetasT1[k % 3], (k % 2 == 0) ? -1 : +1};
    const Network net = generic_net(n, opt.seed * 677 + k);
    const Spectrum spec = decompose(net);
    Rng rng(opt.seed * 43 + k);
    const Profile f_hat = random_profile(n, rng);

    const Eigen::VectorXd fbar = to_pc_basis(spec, f_hat);
    const double non_constant_mass = fbar.tail(n - 1).squaredNorm();
    const double budget = params.gamma == 1 ? 0.4 * non_constant_mass
                                            : 0.7 * f_hat.squaredNorm();
    const InterventionResult res =
        optimal_intervention(spec, params, f_hat, budget);

    worst_budget = std::max(worst_budget, std::abs(res.budget_used - budget));
    // gamma=-1 needs x >= 0, gamma=+1 needs x <= 0, so gamma*x measures the
    // violation either way. |x| must not DROP as the index rises (lambda
    // falls), hence prev - |x|.
    double prev = 0.0;
    for (int l = 1; l < n; ++l) {
      if (res.x(l) == 0.0) continue;
      worst_sign = std::max(worst_sign, params.gamma * res.x(l));
      worst_mono = std::max(worst_mono, prev - std::abs(res.x(l)));
      prev = std::abs(res.x(l));
    }
    if (n <= 8) {
      SearchConfig cfg;
      cfg.restarts = 8;
      cfg.seed = opt.seed + k;
      const ConstrainedSearchResult search =
          constrained_search(net, params, f_hat, budget, cfg);
      worst_search = std::max(worst_search,
                              std::abs(res.welfare_after - search.value) /
                                  (1.0 + std::abs(search.value)));
      ++searched;
    }
  }
  json checks = json::array();
  checks.push_back(make_check("budget binds", worst_budget <= 1e-9,
                              {{"worst_gap", worst_budget}}));
  checks.push_back(make_check("loading signs follow the planner direction",
                              worst_sign <= 1e-12, {{"worst_violation", worst_sign}}));
  checks.push_back(make_check("|x| nonincreasing in lambda", worst_mono <= 1e-12,
                              {{"worst_violation", worst_mono}}));
  checks.push_back(make_check("welfare matches the constrained numeric search",
                              worst_search <= 1e-6,
                              {{"instances", searched}, {"worst_relative_gap", worst_search}}));
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.at("passed").get<bool>();
  return json{{"name", "theorem1"}, {"passed", ok}, {"checks", checks}};
}

json run_prop3(const Options& opt) {
  double worst_final = 0.0, worst_trend = 0.0;
  for (int k = 0; k < 5; ++k) {
    const int n = 5 + k;
    const GameParams params{0.4 + 0.1 * k, (k % 2 == 0) ? -1 : +1};
    const Network net = generic_net(n, opt.seed * 389 + k);
    const Spectrum spec = decompose(net);
    Rng rng(opt.seed * 47 + k);
    const Profile f_hat = random_profile(n, rng);

    std::vector<std::vector<RatioRow>> tables;
    for (double budget : {1e-4, 1e-6, 1e-8})
      tables.push_back(small_budget_ratios(spec, params, f_hat, budget));
    for (std::size_t r = 0; r < tables[0].size(); ++r) {
      double prev_gap = std::numeric_limits<double>::infinity();
      for (const auto& table : tables) {
        const auto& row = table[r];
        const double gap = std::abs(row.m_ratio - row.zeta_ratio) /
                           std::abs(row.zeta_ratio);
        worst_trend = std::max(worst_trend, gap - prev_gap);
        prev_gap = gap;
      }
      worst_final = std::max(worst_final, prev_gap);
    }
  }
  json checks = json::array();
  checks.push_back(make_check("multiplier ratios approach the zeta ratios",
                              worst_final <= 1e-2,
                              {{"worst_relative_gap_at_1e-8", worst_final}}));
  checks.push_back(make_check("convergence is monotone in the budget",
                              worst_trend <= 1e-10, {{"worst_increase", worst_trend}}));
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.at("passed").get<bool>();
  return json{{"name", "prop3"}, {"passed", ok}, {"checks", checks}};
}

json run_suite(const std::string& name, const Options& opt) {
  if (name == "identities") return run_identities(opt);
  if (name == "equilibrium") return run_equilibrium(opt);
  if (name == "gradients") return run_gradients(opt);
  if (name == "prop1") return run_prop1(opt);
  if (name == "prop2") return run_prop2(opt);
  if (name == "theorem1") return run_theorem1(opt);
  if (name == "prop3") return run_prop3(opt);
  if (name != "all") throw InvalidInputError("unknown verification suite: " + name);

  json suites = json::array();
  bool passed = true;
  for (const char* each :
       {"identities", "equilibrium", "gradients", "prop1", "prop2", "theorem1", "prop3"}) {
    json report = run_suite(each, opt);
    passed = passed && report.at("passed").get<bool>();
    suites.push_back(std::move(report));
  }
  return json{{"name", "all"}, {"passed", passed}, {"suites", suites}};
}

}  // namespace discord::suites
