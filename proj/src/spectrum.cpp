#include "discord/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "discord/errors.hpp"

namespace discord {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

// One Jacobi rotation in the (p,q) plane, applied symmetrically to a and
// accumulated into v. Standard stable update with tau = s/(1+c).
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, int p, int q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t =
      (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  const int n = static_cast<int>(a.rows());
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = akp - s * (akq + tau * akp);
    a(p, k) = a(k, p);
    a(k, q) = akq + s * (akp - tau * akq);
    a(q, k) = a(k, q);
  }
  for (int k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = vkp - s * (vkq + tau * vkp);
    v(k, q) = vkq + s * (vkp - tau * vkq);
  }
}

}  // namespace

Spectrum decompose(const Network& net) {
  {
    const auto violations = validate(net);
    if (!violations.empty())
      throw InvalidInputError("decompose: invalid network: " + violations.front().describe());
  }
  const int n = net.n;
  Eigen::MatrixXd a = net.weights;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double threshold = 1e-12 * n;
  constexpr int kMaxSweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }
  if (!converged && off_diagonal_norm(a) > threshold) {
    std::ostringstream os;
    os << "decompose: Jacobi sweeps did not reduce the off-diagonal norm below "
       << threshold << " (got " << off_diagonal_norm(a) << ")";
    throw ConvergenceError(os.str(), off_diagonal_norm(a));
  }

  // Sort descending; index is the secondary key so ties are stable.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (a(x, x) != a(y, y)) return a(x, x) > a(y, y);
    return x < y;
  });

  Spectrum spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors.resize(n, n);
  for (int l = 0; l < n; ++l) {
    spec.eigenvalues(l) = a(order[l], order[l]);
    spec.eigenvectors.col(l) = v.col(order[l]);
  }

  // Sign canonicalization: largest-magnitude entry positive, ties broken by
  // lowest index. Entries within a relative 1e-12 of the maximum count as
  // tied, otherwise roundoff would decide which of two equal entries wins
  // (the alternating circle component has n exactly-tied magnitudes).
  for (int l = 0; l < n; ++l) {
    double best = 0.0;
    for (int k = 0; k < n; ++k)
      best = std::max(best, std::abs(spec.eigenvectors(k, l)));
    for (int k = 0; k < n; ++k) {
      if (std::abs(spec.eigenvectors(k, l)) >= best * (1.0 - 1e-12)) {
        if (spec.eigenvectors(k, l) < 0.0) spec.eigenvectors.col(l) *= -1.0;
        break;
      }
    }
  }
  return spec;
}

bool check_distinct(const Spectrum& spec, double tol) {
  for (int l = 0; l + 1 < spec.n(); ++l) {
    if (spec.eigenvalues(l) - spec.eigenvalues(l + 1) <= tol) return false;
  }
  return true;
}

Eigen::VectorXd to_pc_basis(const Spectrum& spec,
                            const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (z.size() != spec.n())
    throw InvalidInputError("to_pc_basis: profile length does not match spectrum");
  return spec.eigenvectors.transpose() * z;
}

Eigen::VectorXd from_pc_basis(const Spectrum& spec,
                              const Eigen::Ref<const Eigen::VectorXd>& zbar) {
  if (zbar.size() != spec.n())
    throw InvalidInputError("from_pc_basis: profile length does not match spectrum");
  return spec.eigenvectors * zbar;
}

}  // namespace discord
