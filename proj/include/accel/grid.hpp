#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "accel/params.hpp"

namespace accel {

enum class Stencil {
  Second,    // central differences, Dirichlet walls
  Spectral,  // Fourier collocation on a periodic box
};

struct GridSpec {
  int n_x = 63, n_v = 63;
  double x_max = 5.0, v_max = 7.0;
  Stencil stencil = Stencil::Second;
};

// Fields are n_x x n_v arrays, f(i, j) = f(x_i, v_j).
class GridOperator {
 public:
  GridOperator(const ModelParams& p, const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  const Eigen::VectorXd& xs() const { return xs_; }
  const Eigen::VectorXd& vs() const { return vs_; }
  double hx() const { return hx_; }
  double hv() const { return hv_; }

  Eigen::MatrixXd sample(const std::function<double(double, double)>& f) const;

  Eigen::MatrixXd dx(const Eigen::MatrixXd& f) const;
  Eigen::MatrixXd dvv(const Eigen::MatrixXd& f) const;
  Eigen::MatrixXd times_x(const Eigen::MatrixXd& f) const;
  Eigen::MatrixXd times_v(const Eigen::MatrixXd& f) const;

  // H = -(1/2 gamma) d_v^2 - v d_x + alpha v^2/2 + beta x^2/2 and its adjoint.
  Eigen::MatrixXd apply_h(const Eigen::MatrixXd& f) const;
  Eigen::MatrixXd apply_h_adjoint(const Eigen::MatrixXd& f) const;

  // e^{-tau H} f by scaled Taylor series.
  Eigen::MatrixXd exp_apply(double tau, const Eigen::MatrixXd& f) const;

  double inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;
  double norm(const Eigen::MatrixXd& f) const { return std::sqrt(inner(f, f)); }

  // Cheap upper bound on the 1-norm of H.
  double h_norm_bound() const;

 private:
  Eigen::MatrixXd potential_times(const Eigen::MatrixXd& f) const;

  GridSpec spec_;
  double gamma_, alpha_, beta_;
  Eigen::VectorXd xs_, vs_;
  double hx_, hv_;
  Eigen::MatrixXd d1x_, d2v_;  // spectral only
};

// exp(-(a (x-x0)^2 + 2 c (x-x0)(v-v0) + b (v-v0)^2)/2)
struct SmoothGaussian {
  double x0, v0, a, b, c;
  double operator()(double x, double v) const;
};

std::vector<SmoothGaussian> default_test_functions(const ModelParams& p);

struct GridResiduals {
  double eigen;                    // |H psi00 - E psi00| / |psi00|
  double dual;                     // |H^+ psi00D - E psi00D| / |psi00D|
  std::vector<double> commutator;  // |[H,x] f + v f| / |f| per test function
  double structural;               // max |(H - H^+) f + 2 v d_x f|
  double edge;                     // max |psi00| on the boundary relative to its peak
};

GridResiduals grid_residuals(const ModelParams& p, const GridOperator& g);
GridResiduals grid_residuals(const ModelParams& p, const GridOperator& g,
                             const std::vector<SmoothGaussian>& tests);

}  // namespace accel
