#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace discord {

// Interaction network: g_ij is the probability that i and j meet. Valid
// instances are symmetric, row-stochastic (hence doubly stochastic),
// nonnegative, and have a zero diagonal.
struct Network {
  int n = 0;
  Eigen::MatrixXd weights;
};

struct WeightedEdge {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

// One violated network invariant, with the worst-offending entry.
struct Violation {
  std::string invariant;  // "shape", "finite", "symmetry", "row-stochastic", "diagonal", "nonnegative"
  int i = -1;
  int j = -1;
  double residual = 0.0;

  std::string describe() const;
};

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kRowSumTol = 1e-10;
inline constexpr int kSinkhornMaxIters = 10000;

/// The n-cycle with weight 1/2 on each of a node's two neighbors.
Network make_circle(int n);

/// Builds a symmetric nonnegative matrix from an undirected edge list, then
/// rescales it to doubly stochastic form by symmetric Sinkhorn iteration
/// (divide each entry by the geometric mean of its two row sums, repeat).
/// Each undirected edge may appear once; supplying both (i,j) and (j,i) is
/// an error rather than silently merged.
Network from_weighted_edges(int n, const std::vector<WeightedEdge>& edges);

/// Random homophilous graph: within-block edge probability p_in, cross-block
/// p_out, resampled until connected, then normalized via from_weighted_edges.
/// Deterministic given seed.
Network make_homophilous_blocks(const std::vector<int>& sizes, double p_in,
                                double p_out, std::uint64_t seed);

/// Complete graph with weights uniform on [w_lo, w_hi], normalized. Generic
/// weights give distinct spectra, which the planner verifiers rely on.
Network make_random_weighted_complete(int n, double w_lo, double w_hi,
                                      std::uint64_t seed);

/// Empty iff all Network invariants hold; diagnostic, never throws.
std::vector<Violation> validate(const Network& net);

}  // namespace discord
