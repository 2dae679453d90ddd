#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <utility>
#include <vector>

#include "accel/classical.hpp"
#include "accel/params.hpp"

namespace accel {

// One time step after the momentum integral:
//   norm * exp{-gamma (v - v')^2 / (2 eps) - eps alpha v^2 / 2 - eps beta x^2 / 2} * delta(x - x' + eps v)
struct StepKernel {
  double eps;
  double norm;              // sqrt(gamma / (2 pi eps))
  double velocity_width;    // eps / gamma
  double alpha_weight;      // eps alpha
  double beta_weight;       // eps beta

  // Exponent of the Gaussian factor (the delta is not included).
  double exponent(double x, double v, double v_prev) const;
  // Velocity fixed by the delta: v = -(x - x') / eps.
  double constrained_velocity(double x, double x_prev) const { return -(x - x_prev) / eps; }
};

StepKernel step_kernel(const ModelParams& p, double eps);

// Path x_0 = x_i, ..., x_N = x_f with the velocities eliminated.  Four values
// are pinned: x_0, x_1 = x_i - eps v_i, x_{N-1} = x_f + eps v_f, x_N.
// The discrete Euclidean action is S_E = x^T A x / 2 with
//   A from gamma/eps^3 (second differences, n = 2..N), alpha/eps (first
//   differences, n = 1..N) and trapezoidal eps beta/2 potential weights.
struct LatticePath {
  Eigen::VectorXd x;  // x_0..x_N
  double action;      // sum_n eps L_n = -S_E at the stationary path
};

class LatticeProblem {
 public:
  int n_steps() const { return n_; }
  double eps() const { return eps_; }
  double tau() const { return tau_; }
  const BoundaryData& bc() const { return bc_; }

  std::array<int, 4> pinned_indices() const { return {0, 1, n_ - 1, n_}; }
  const Eigen::Vector4d& pinned_values() const { return pinned_; }

  // Full (N+1)^2 form and the free block x_2..x_{N-2}.
  const Eigen::SparseMatrix<double>& form() const { return a_; }
  Eigen::SparseMatrix<double> free_block() const;

  // Same lattice with other boundary data (the form is reused).
  LatticeProblem with_bc(const BoundaryData& bc) const;

  // Stationary path; throws NotNormalizable if the free block is not positive definite.
  LatticePath solve() const;

 private:
  friend LatticeProblem build_problem(const ModelParams&, const BoundaryData&, double, int);
  int n_ = 0;
  double eps_ = 0, tau_ = 0;
  BoundaryData bc_;
  Eigen::Vector4d pinned_;
  Eigen::SparseMatrix<double> a_;
};

LatticeProblem build_problem(const ModelParams& p, const BoundaryData& bc, double tau, int n_steps);

// K_N(bc) / K_N(ref) = exp(S_N(bc) - S_N(ref)); the fluctuation determinant cancels.
double kernel_ratio(const LatticeProblem& problem, const BoundaryData& reference_bc);

struct Extrapolation {
  double limit;
  double order;  // fitted from the last three points
};

// Richardson extrapolation on a sequence with eps halving at each step.  The
// leading order is fitted (snapped to an integer if within 0.25); later
// tableau columns assume the next integer orders.
Extrapolation extrapolate(std::vector<std::pair<double, double>> values);

// For kernel ratios exp(dS): extrapolates dS = log(ratio), whose expansion in
// eps is regular, and returns exp of the limit.  Ratios must be positive.
Extrapolation extrapolate_ratio(std::vector<std::pair<double, double>> ratios);

}  // namespace accel
