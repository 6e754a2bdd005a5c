#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace discord {

// Bad user input or a violated operation precondition.
struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An iterative scheme stopped before reaching its tolerance.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& msg, double residual_)
      : std::runtime_error(msg), residual(residual_) {}
  double residual;
};

// Two computation routes that must agree disagreed, or a solver produced
// an inconsistent result. Indicates a bug, not bad input.
struct InternalConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The benevolent planner's budget covers all removable disagreement; the
// exact zero-miscoordination perturbation is attached.
struct BlissPointError : std::runtime_error {
  BlissPointError(const std::string& msg, Eigen::VectorXd delta)
      : std::runtime_error(msg), bliss_delta(std::move(delta)) {}
  Eigen::VectorXd bliss_delta;
};

}  // namespace discord
