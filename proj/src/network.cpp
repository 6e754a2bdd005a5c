#include "discord/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "discord/errors.hpp"
#include "discord/rng.hpp"

namespace discord {

std::string Violation::describe() const {
  std::ostringstream os;
  os << invariant << " violated";
  if (i >= 0) {
    os << " at (" << i;
    if (j >= 0) os << "," << j;
    os << ")";
  }
  os << ", residual " << residual;
  return os.str();
}

Network make_circle(int n) {
  if (n < 3) throw InvalidInputError("make_circle: need n >= 3");
  Network net;
  net.n = n;
  net.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    net.weights(i, (i + 1) % n) = 0.5;
    net.weights(i, (i + n - 1) % n) = 0.5;
  }
  return net;
}

namespace {

// One symmetric Sinkhorn step: a_ij <- a_ij / sqrt(d_i d_j). Written
// entrywise over the upper triangle and mirrored so symmetry is preserved
// bit-for-bit at every iteration.
void sinkhorn_step(Eigen::MatrixXd& a, const Eigen::VectorXd& d) {
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = a(i, j) / std::sqrt(d(i) * d(j));
      a(i, j) = v;
      a(j, i) = v;
    }
  }
}

bool is_connected(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (a(u, v) > 0.0 && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

}  // namespace

Network from_weighted_edges(int n, const std::vector<WeightedEdge>& edges) {
  if (n < 2) throw InvalidInputError("from_weighted_edges: need n >= 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw InvalidInputError("from_weighted_edges: node index out of range");
    if (e.i == e.j)
      throw InvalidInputError("from_weighted_edges: self-loops are not allowed");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw InvalidInputError("from_weighted_edges: edge weights must be positive and finite");
    const auto key = std::minmax(e.i, e.j);
    if (!seen.insert(key).second) {
      std::ostringstream os;
      os << "from_weighted_edges: duplicate undirected edge (" << key.first
         << "," << key.second << ")";
      throw InvalidInputError(os.str());
    }
    a(e.i, e.j) = e.w;
    a(e.j, e.i) = e.w;
  }

  Eigen::VectorXd d = a.rowwise().sum();
  for (int i = 0; i < n; ++i) {
    if (d(i) <= 0.0) {
      std::ostringstream os;
      os << "from_weighted_edges: node " << i
         << " has no incident edges; row-stochastic normalization impossible";
      throw InvalidInputError(os.str());
    }
  }

  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < kSinkhornMaxIters; ++iter) {
    d = a.rowwise().sum();
    residual = (d.array() - 1.0).abs().maxCoeff();
    if (residual <= kRowSumTol) {
      Network net;
      net.n = n;
      net.weights = std::move(a);
      return net;
    }
    sinkhorn_step(a, d);
  }
  std::ostringstream os;
  os << "from_weighted_edges: Sinkhorn scaling did not reach row-sum residual "
     << kRowSumTol << " within " << kSinkhornMaxIters
     << " iterations (residual " << residual
     << "); no symmetric doubly stochastic scaling of this graph exists or it "
        "is too ill-conditioned";
  throw ConvergenceError(os.str(), residual);
}

Network make_homophilous_blocks(const std::vector<int>& sizes, double p_in,
                                double p_out, std::uint64_t seed) {
  if (sizes.empty()) throw InvalidInputError("make_homophilous_blocks: empty size list");
  for (int s : sizes) {
    if (s < 2) throw InvalidInputError("make_homophilous_blocks: every block size must be >= 2");
  }
  // p_in == p_out is allowed so the plain Erdos-Renyi / complete-graph
  // degenerate cases stay constructible.
  if (!(p_in > 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0))
    throw InvalidInputError("make_homophilous_blocks: need p_in in (0,1], p_out in [0,1]");
  if (p_in < p_out)
    throw InvalidInputError("make_homophilous_blocks: need p_in >= p_out (homophily)");

  int n = 0;
  for (int s : sizes) n += s;
  std::vector<int> label(n);
  {
    int at = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b)
      for (int k = 0; k < sizes[b]; ++k) label[at++] = static_cast<int>(b);
  }

  Rng rng(seed);
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double p = (label[i] == label[j]) ? p_in : p_out;
        if (rng.bernoulli(p)) {
          a(i, j) = 1.0;
          a(j, i) = 1.0;
          edges.push_back({i, j, 1.0});
        }
      }
    }
    if (!is_connected(a)) continue;
    return from_weighted_edges(n, edges);  // normalization failure propagates
  }
  throw ConvergenceError(
      "make_homophilous_blocks: no connected sample after 100000 attempts", 0.0);
}

Network make_random_weighted_complete(int n, double w_lo, double w_hi,
                                      std::uint64_t seed) {
  if (n < 2) throw InvalidInputError("make_random_weighted_complete: need n >= 2");
  if (!(w_lo > 0.0) || !(w_hi >= w_lo))
    throw InvalidInputError("make_random_weighted_complete: need 0 < w_lo <= w_hi");
  Rng rng(seed);
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, rng.uniform(w_lo, w_hi)});
  return from_weighted_edges(n, edges);
}

std::vector<Violation> validate(const Network& net) {
  std::vector<Violation> out;
  const auto& g = net.weights;
  if (net.n < 1 || g.rows() != net.n || g.cols() != net.n) {
    out.push_back({"shape", static_cast<int>(g.rows()), static_cast<int>(g.cols()),
                   static_cast<double>(net.n)});
    return out;
  }
  const int n = net.n;

  Violation worst_finite{"finite", -1, -1, 0.0};
  Violation worst_sym{"symmetry", -1, -1, 0.0};
  Violation worst_row{"row-stochastic", -1, -1, 0.0};
  Violation worst_diag{"diagonal", -1, -1, 0.0};
  Violation worst_neg{"nonnegative", -1, -1, 0.0};

  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = g(i, j);
      if (!std::isfinite(v)) {
        worst_finite = {"finite", i, j, v};
      }
      row_sum += v;
      if (v < 0.0 && -v > worst_neg.residual) worst_neg = {"nonnegative", i, j, -v};
      if (j > i) {
        const double asym = std::abs(v - g(j, i));
        if (asym > worst_sym.residual) worst_sym = {"symmetry", i, j, asym};
      }
    }
    const double r = std::abs(row_sum - 1.0);
    if (r > worst_row.residual) worst_row = {"row-stochastic", i, -1, r};
    const double dg = std::abs(g(i, i));
    if (dg > worst_diag.residual) worst_diag = {"diagonal", i, i, dg};
  }

  if (worst_finite.i >= 0) out.push_back(worst_finite);
  if (worst_sym.residual > kSymmetryTol) out.push_back(worst_sym);
  if (worst_row.residual > kRowSumTol) out.push_back(worst_row);
  if (worst_diag.residual > 0.0) out.push_back(worst_diag);
  if (worst_neg.residual > 0.0) out.push_back(worst_neg);
  return out;
}

}  // namespace discord
