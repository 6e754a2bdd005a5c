// discord: analyze coordination games on networks from the command line.
//
// Subcommands: generate, solve, spectrum, stats, intervene, verify.
// Exit codes: 0 success, 2 usage or input error, 3 internal consistency
// failure, 4 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "discord/equilibrium.hpp"
#include "discord/errors.hpp"
#include "discord/io.hpp"
#include "discord/network.hpp"
#include "discord/oracle.hpp"
#include "discord/planner.hpp"
#include "discord/spectrum.hpp"
#include "discord/stats.hpp"
#include "suites.hpp"

namespace {

using discord::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;
constexpr int kExitVerification = 4;

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("DISCORD_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw discord::InvalidInputError("DISCORD_SEED is not an unsigned integer");
    return v;
  }
  return flag_seed;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    discord::write_text_file(out_path, content);
  }
}

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> sizes;
  std::stringstream ss(csv);
  std::string field;
  while (std::getline(ss, field, ',')) {
    char* end = nullptr;
    const long v = std::strtol(field.c_str(), &end, 10);
    if (end == field.c_str() || *end != '\0')
      throw discord::InvalidInputError("--sizes: expected a comma-separated list of integers");
    sizes.push_back(static_cast<int>(v));
  }
  if (sizes.empty()) throw discord::InvalidInputError("--sizes: empty list");
  return sizes;
}

void print_validation_summary(const discord::Network& net) {
  const auto violations = discord::validate(net);
  double worst_row = 0.0;
  for (int i = 0; i < net.n; ++i)
    worst_row = std::max(worst_row, std::abs(net.weights.row(i).sum() - 1.0));
  int edges = 0;
  for (int i = 0; i < net.n; ++i)
    for (int j = i + 1; j < net.n; ++j)
      if (net.weights(i, j) != 0.0) ++edges;
  std::cerr << "network: n=" << net.n << " edges=" << edges
            << " max_row_sum_residual=" << worst_row << " validation="
            << (violations.empty() ? "ok" : "FAILED") << "\n";
  for (const auto& v : violations) std::cerr << "  " << v.describe() << "\n";
}

json profile_to_json(const Eigen::Ref<const discord::Profile>& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

// generate ------------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  int n = 0;
  std::string sizes = "20,20";
  double p_in = 0.5;
  double p_out = 0.05;
  std::uint64_t seed = 1;
  std::string edges_path;
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  discord::Network net;
  discord::RunManifest manifest;
  manifest.command = "generate " + args.kind;
  manifest.timestamp = discord::current_timestamp();
  if (args.kind == "circle") {
    net = discord::make_circle(args.n);
    manifest.inputs = {{"n", std::to_string(args.n)}};
  } else if (args.kind == "blocks") {
    const std::uint64_t seed = effective_seed(args.seed);
    net = discord::make_homophilous_blocks(parse_sizes(args.sizes), args.p_in,
                                           args.p_out, seed);
    manifest.seed = seed;
    manifest.inputs = {{"sizes", args.sizes},
                       {"p_in", discord::format_double(args.p_in)},
                       {"p_out", discord::format_double(args.p_out)}};
  } else {  // edges
    const auto edges = discord::read_edges_csv_file(args.edges_path);
    net = discord::from_weighted_edges(args.n, edges);
    manifest.inputs = {{"n", std::to_string(args.n)}, {"edges", args.edges_path}};
  }

  json out = discord::network_to_json(net);
  out["manifest"] = discord::manifest_to_json(manifest);
  emit(discord::dump_json(out), args.out);
  print_validation_summary(net);
  return kExitOk;
}

// solve ---------------------------------------------------------------------

struct SolveArgs {
  std::string network;
  std::string f_path;
  double beta = 0.0;
  std::string out;
};

int cmd_solve(const SolveArgs& args) {
  const discord::Network net = discord::load_network_file(args.network);
  const discord::Profile f = discord::read_profile_csv_file(args.f_path);
  if (f.size() != net.n)
    throw discord::InvalidInputError("solve: profile length does not match network size");
  const discord::GameParams params{args.beta, -1};

  const discord::Profile a_star = discord::solve_equilibrium(net, params, f);
  discord::Profile payoffs(net.n);
  for (int i = 0; i < net.n; ++i)
    payoffs(i) = discord::agent_payoff(net, params, a_star, f, i);

  const discord::Spectrum spec = discord::decompose(net);
  const discord::WelfareReport welfare =
      discord::welfare_dual(net, spec, params, f);
  std::cerr << "welfare_direct=" << discord::format_double(welfare.direct)
            << " welfare_spectral=" << discord::format_double(welfare.spectral)
            << " relative_gap=" << discord::format_double(welfare.relative_gap)
            << "\n";

  discord::RunManifest manifest;
  manifest.command = "solve";
  manifest.inputs = {{"network", args.network},
                     {"f", args.f_path},
                     {"beta", discord::format_double(args.beta)}};
  manifest.timestamp = discord::current_timestamp();
  std::ostringstream os;
  discord::write_solve_csv(os, f, a_star, payoffs, manifest);
  emit(os.str(), args.out);
  return kExitOk;
}

// spectrum ------------------------------------------------------------------

struct SpectrumArgs {
  std::string network;
  std::string out;
  std::string csv;
};

int cmd_spectrum(const SpectrumArgs& args) {
  const discord::Network net = discord::load_network_file(args.network);
  const discord::Spectrum spec = discord::decompose(net);

  discord::RunManifest manifest;
  manifest.command = "spectrum";
  manifest.inputs = {{"network", args.network}};
  manifest.timestamp = discord::current_timestamp();

  json out = discord::spectrum_to_json(spec);
  out["distinct_at_1e-8"] = discord::check_distinct(spec, 1e-8);
  out["manifest"] = discord::manifest_to_json(manifest);
  emit(discord::dump_json(out), args.out);

  if (!args.csv.empty()) {
    std::ostringstream os;
    discord::write_spectrum_csv(os, spec, manifest);
    discord::write_text_file(args.csv, os.str());
  }
  return kExitOk;
}

// stats ---------------------------------------------------------------------

struct StatsArgs {
  std::string network;
  std::string f_path;
  double beta = 0.0;
  std::string out;
};

int cmd_stats(const StatsArgs& args) {
  const discord::Network net = discord::load_network_file(args.network);
  const discord::Profile f = discord::read_profile_csv_file(args.f_path);
  if (f.size() != net.n)
    throw discord::InvalidInputError("stats: profile length does not match network size");
  const discord::GameParams params{args.beta, -1};
  const discord::Spectrum spec = discord::decompose(net);

  const Eigen::VectorXd fbar = discord::to_pc_basis(spec, f);
  json components = json::array();
  for (int l = 0; l < spec.n(); ++l) {
    const double lam = spec.eigenvalues(l);
    components.push_back({{"ell", l + 1},
                          {"lambda", lam},
                          {"zeta", discord::zeta(args.beta, lam)},
                          {"eta", discord::eta(args.beta, lam, net.n)},
                          {"nu", discord::nu(args.beta, lam, net.n)},
                          {"f_loading", fbar(l)}});
  }

  const discord::WelfareReport welfare =
      discord::welfare_dual(net, spec, params, f);
  json report{{"n", net.n},
              {"beta", args.beta},
              {"components", components},
              {"welfare",
               {{"direct", welfare.direct},
                {"spectral", welfare.spectral},
                {"relative_gap", welfare.relative_gap}}}};

  const discord::Profile a_star = discord::solve_equilibrium(net, params, f);
  if (std::abs(f.sum()) <= discord::kMeanZeroTol &&
      std::abs(a_star.sum()) <= discord::kMeanZeroTol) {
    const double cn = discord::cov_neighbors(net, a_star);
    const double cns = discord::cov_neighbors_spectral(spec, params, f);
    const double cr = discord::cov_random_pair(a_star);
    const double crs = discord::cov_random_pair_spectral(spec, params, f);
    report["cov_neighbors"] = {{"direct", cn},
                               {"spectral", cns},
                               {"relative_gap",
                                std::abs(cn - cns) / (1.0 + std::abs(cn))}};
    report["cov_random_pair"] = {{"direct", cr},
                                 {"spectral", crs},
                                 {"relative_gap",
                                  std::abs(cr - crs) / (1.0 + std::abs(cr))}};
  } else {
    report["cov_neighbors"] = {{"skipped", "profile is not mean-zero"}};
    report["cov_random_pair"] = {{"skipped", "profile is not mean-zero"}};
  }

  discord::RunManifest manifest;
  manifest.command = "stats";
  manifest.inputs = {{"network", args.network},
                     {"f", args.f_path},
                     {"beta", discord::format_double(args.beta)}};
  manifest.timestamp = discord::current_timestamp();
  report["manifest"] = discord::manifest_to_json(manifest);
  emit(discord::dump_json(report), args.out);
  return kExitOk;
}

// intervene -----------------------------------------------------------------

struct InterveneArgs {
  std::string network;
  std::string f_hat_path;
  double beta = 0.0;
  std::string gamma = "malevolent";
  double budget = 1.0;
  bool allow_bliss = false;
  std::string out;
};

int cmd_intervene(const InterveneArgs& args) {
  const discord::Network net = discord::load_network_file(args.network);
  const discord::Profile f_hat = discord::read_profile_csv_file(args.f_hat_path);
  if (f_hat.size() != net.n)
    throw discord::InvalidInputError("intervene: profile length does not match network size");
  int gamma = 0;
  if (args.gamma == "benevolent") {
    gamma = 1;
  } else if (args.gamma == "malevolent") {
    gamma = -1;
  } else {
    throw discord::InvalidInputError("--gamma must be 'benevolent' or 'malevolent'");
  }

  const discord::GameParams params{args.beta, gamma};
  const discord::Spectrum spec = discord::decompose(net);
  const discord::InterventionResult result =
      discord::optimal_intervention(spec, params, f_hat, args.budget, args.allow_bliss);

  json x = json::array();
  for (int l = 0; l < result.x.size(); ++l) x.push_back(result.x(l));
  json report{{"params",
               {{"beta", args.beta},
                {"gamma", args.gamma},
                {"budget", args.budget},
                {"allow_bliss", args.allow_bliss}}},
              {"result",
               {{"delta_star", profile_to_json(result.delta_star)},
                {"f_star", profile_to_json(result.f_star)},
                {"a_star", profile_to_json(result.a_star)},
                {"x", x},
                {"mu", result.mu},
                {"welfare_before", result.welfare_before},
                {"welfare_after", result.welfare_after},
                {"similarities", profile_to_json(result.similarities)},
                {"budget_used", result.budget_used},
                {"zero_loading_components", result.zero_loading_components},
                {"degenerate_spectrum", result.degenerate_spectrum},
                {"degenerate_objective", result.degenerate_objective},
                {"bliss", result.bliss}}}};

  if (result.delta_star.norm() > 0.0 && f_hat.norm() > 0.0) {
    json rows = json::array();
    for (const auto& row : discord::similarity_profile(result, spec, f_hat)) {
      json r{{"ell", row.ell},
             {"lambda", row.lambda},
             {"rho_delta", row.rho_delta},
             {"rho_fhat", row.rho_fhat}};
      r["m"] = row.m ? json(*row.m) : json(nullptr);
      rows.push_back(std::move(r));
    }
    report["similarity_profile"] = rows;
  } else {
    report["similarity_profile"] = nullptr;
  }

  // Welfare is consumed here, so evaluate it through both routes; a mismatch
  // beyond 1e-8 relative throws and exits with code 3.
  const discord::WelfareReport check =
      discord::welfare_dual(net, spec, params, result.f_star);
  report["welfare_check"] = {{"direct", check.direct},
                             {"spectral", check.spectral},
                             {"relative_gap", check.relative_gap}};

  discord::RunManifest manifest;
  manifest.command = "intervene";
  manifest.inputs = {{"network", args.network},
                     {"f_hat", args.f_hat_path},
                     {"beta", discord::format_double(args.beta)},
                     {"gamma", args.gamma},
                     {"budget", discord::format_double(args.budget)},
                     {"allow_bliss", args.allow_bliss ? "true" : "false"}};
  manifest.timestamp = discord::current_timestamp();
  report["manifest"] = discord::manifest_to_json(manifest);
  emit(discord::dump_json(report), args.out);
  return kExitOk;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
  int samples = 20000;
  std::string out;
};

int cmd_verify(const VerifyArgs& args) {
  discord::suites::Options opt;
  opt.seed = effective_seed(args.seed);
  opt.prop2_samples = args.samples;

  json report = discord::suites::run_suite(args.suite, opt);
  discord::RunManifest manifest;
  manifest.command = "verify";
  manifest.inputs = {{"suite", args.suite},
                     {"samples", std::to_string(args.samples)}};
  manifest.seed = opt.seed;
  manifest.timestamp = discord::current_timestamp();
  report["manifest"] = discord::manifest_to_json(manifest);

  const bool passed = report.at("passed").get<bool>();
  emit(discord::dump_json(report), args.out);
  std::cerr << "verify " << args.suite << ": " << (passed ? "PASS" : "FAIL") << "\n";
  return passed ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordination games on networks: equilibria, spectra, welfare "
               "statistics and optimal interventions"};
  app.set_version_flag("--version", discord::kToolVersion);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a network JSON file");
  generate->require_subcommand(1);
  auto* gen_circle = generate->add_subcommand("circle", "n-cycle, weight 1/2 per neighbor");
  gen_circle->add_option("--n", gen.n, "node count (>= 3)")->required();
  gen_circle->add_option("--out", gen.out, "output path (default stdout)");
  auto* gen_blocks = generate->add_subcommand("blocks", "random homophilous block network");
  gen_blocks->add_option("--sizes", gen.sizes, "comma-separated block sizes");
  gen_blocks->add_option("--p-in", gen.p_in, "within-block edge probability");
  gen_blocks->add_option("--p-out", gen.p_out, "cross-block edge probability");
  gen_blocks->add_option("--seed", gen.seed, "RNG seed (DISCORD_SEED overrides)");
  gen_blocks->add_option("--out", gen.out, "output path (default stdout)");
  auto* gen_edges = generate->add_subcommand("edges", "normalize a weighted edge list");
  gen_edges->add_option("--n", gen.n, "node count")->required();
  gen_edges->add_option("--edges", gen.edges_path, "CSV of i,j,w rows")->required();
  gen_edges->add_option("--out", gen.out, "output path (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Equilibrium actions and payoffs");
  solve_cmd->add_option("--network", solve.network, "network JSON")->required();
  solve_cmd->add_option("--f", solve.f_path, "ideal-point profile CSV")->required();
  solve_cmd->add_option("--beta", solve.beta, "miscoordination weight in [0,1)")->required();
  solve_cmd->add_option("--out", solve.out, "output CSV path (default stdout)");

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigendecomposition of a network");
  spectrum_cmd->add_option("--network", spectrum.network, "network JSON")->required();
  spectrum_cmd->add_option("--out", spectrum.out, "output JSON path (default stdout)");
  spectrum_cmd->add_option("--csv", spectrum.csv, "plot-ready CSV path");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Welfare and disagreement statistics");
  stats_cmd->add_option("--network", stats.network, "network JSON")->required();
  stats_cmd->add_option("--f", stats.f_path, "ideal-point profile CSV")->required();
  stats_cmd->add_option("--beta", stats.beta, "miscoordination weight in [0,1)")->required();
  stats_cmd->add_option("--out", stats.out, "output JSON path (default stdout)");

  InterveneArgs intervene;
  auto* intervene_cmd =
      app.add_subcommand("intervene", "Welfare-optimal ideal-point intervention");
  intervene_cmd->add_option("--network", intervene.network, "network JSON")->required();
  intervene_cmd->add_option("--f-hat", intervene.f_hat_path, "status-quo profile CSV")->required();
  intervene_cmd->add_option("--beta", intervene.beta, "miscoordination weight in [0,1)")->required();
  intervene_cmd->add_option("--gamma", intervene.gamma, "benevolent | malevolent")->required();
  intervene_cmd->add_option("--budget", intervene.budget, "intervention budget ||delta||^2")->required();
  intervene_cmd->add_flag("--allow-bliss", intervene.allow_bliss,
                          "accept the full cancellation when the budget covers it");
  intervene_cmd->add_option("--out", intervene.out, "output JSON path (default stdout)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the brute-force verification suites");
  verify_cmd->add_option("--suite", verify.suite,
                         "all | identities | equilibrium | gradients | prop1 | prop2 | theorem1 | prop3");
  verify_cmd->add_option("--seed", verify.seed, "RNG seed (DISCORD_SEED overrides)");
  verify_cmd->add_option("--samples", verify.samples, "prop2 sample count");
  verify_cmd->add_option("--out", verify.out, "report JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      if (gen_circle->parsed()) gen.kind = "circle";
      if (gen_blocks->parsed()) gen.kind = "blocks";
      if (gen_edges->parsed()) gen.kind = "edges";
      return cmd_generate(gen);
    }
    if (solve_cmd->parsed()) return cmd_solve(solve);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum);
    if (stats_cmd->parsed()) return cmd_stats(stats);
    if (intervene_cmd->parsed()) return cmd_intervene(intervene);
    if (verify_cmd->parsed()) return cmd_verify(verify);
  } catch (const discord::BlissPointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "bliss delta:";
    for (int i = 0; i < e.bliss_delta.size(); ++i)
      std::cerr << " " << discord::format_double(e.bliss_delta(i));
    std::cerr << "\n";
    return kExitUsage;
  } catch (const discord::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const discord::ConvergenceError& e) {
    // Normalization failures are a property of the input graph.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const discord::InternalConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
