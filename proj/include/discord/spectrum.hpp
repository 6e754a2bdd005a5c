#pragma once

#include <Eigen/Dense>

#include "discord/network.hpp"

namespace discord {

// Eigendecomposition of a valid network. Eigenvalues are sorted descending
// (so eigenvalues(0) == 1 for a connected doubly stochastic matrix) and
// eigenvectors.col(l) is the unit eigenvector u^{l+1}, sign-canonicalized so
// that its largest-magnitude entry is positive (ties broken by lowest index).
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int n() const { return static_cast<int>(eigenvalues.size()); }
};

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
/// Deterministic: identical input bytes give identical Spectrum bytes.
Spectrum decompose(const Network& net);

/// True iff every consecutive eigenvalue gap exceeds tol.
bool check_distinct(const Spectrum& spec, double tol);

/// Coordinates of z in the principal-component basis, U^T z.
Eigen::VectorXd to_pc_basis(const Spectrum& spec,
                            const Eigen::Ref<const Eigen::VectorXd>& z);

/// Inverse transform, U zbar.
Eigen::VectorXd from_pc_basis(const Spectrum& spec,
                              const Eigen::Ref<const Eigen::VectorXd>& zbar);

}  // namespace discord
