#pragma once

#include <Eigen/Dense>
#include <vector>

#include "accel/gaussian.hpp"
#include "accel/params.hpp"

namespace accel {

// N oscillators mixed by an orthogonal S: mode coordinates z = S x, u = S v,
// each mode an independent (gamma_n, alpha_n, beta_n) oscillator.
class MultiDofSystem {
 public:
  int n_modes() const { return static_cast<int>(modes_.size()); }
  const Eigen::MatrixXd& mixing() const { return s_; }
  const std::vector<ModelParams>& modes() const { return modes_; }
  double e00() const;  // sum of mode vacuum energies

 private:
  friend MultiDofSystem build_system(const Eigen::MatrixXd&, const std::vector<Couplings>&);
  Eigen::MatrixXd s_;
  std::vector<ModelParams> modes_;
};

// Throws NotOrthogonal if |S S^T - 1| > 1e-12, CriticalMode if a mode has w1 = w2.
MultiDofSystem build_system(const Eigen::MatrixXd& s, const std::vector<Couplings>& modes);

// exp{-(x^T P x + 2 x^T R v + v^T Q v)/2}, with P = S^T diag(p) S and so on.
// The dual flips R.
struct MultiGroundState {
  Eigen::MatrixXd P, Q, R;
  double norm;

  // Over (x_1..x_N, v_1..v_N).
  GaussianForm form(bool dual = false) const;
};

MultiGroundState ground_state_many(const MultiDofSystem& sys);

// Over (x_f, v_f, x_i, v_i), each an N-block; the product of mode kernels
// evaluated at mode coordinates.
GaussianForm kernel_many(const MultiDofSystem& sys, double tau);

}  // namespace accel
