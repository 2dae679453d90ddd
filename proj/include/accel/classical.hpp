#pragma once

#include <Eigen/Dense>
#include <array>

#include "accel/gaussian.hpp"
#include "accel/params.hpp"

namespace accel {

// Kernel labels; v = -dx/dt.
struct BoundaryData {
  double x_f = 0, v_f = 0, x_i = 0, v_i = 0;
};

// Values of x and dx/dt at t = 0 and t = tau.
struct EndpointValues {
  double x0 = 0, xdot0 = 0, x_tau = 0, xdot_tau = 0;
};

// x(0) = x_f, x'(0) = -v_f, x(tau) = x_i, x'(tau) = -v_i.
EndpointValues endpoint_values(const BoundaryData& bc);

// Solution of gamma x'''' - alpha x'' + beta x = 0 on [0, tau], stored in the
// basis e^{r(t-tau)} {cos wt, sin(wt)/w}, e^{-rt} {cos wt, sin(wt)/w}.  That
// basis is real on every branch and stays regular as w -> 0.
class ClassicalSolution {
 public:
  ClassicalSolution(const ModelParams& p, double tau, const std::array<double, 4>& coeffs);

  double x(double t) const { return derivative(t, 0); }
  double derivative(double t, int order) const;

  // Coefficients a1..a4 of e^{rt} sin wt, e^{rt} cos wt, e^{-rt} sin wt, e^{-rt} cos wt.
  std::array<cplx, 4> coefficients() const;
  const std::array<double, 4>& basis_coefficients() const { return c_; }

  double r() const { return r_; }
  cplx omega() const { return omega_; }
  double tau() const { return tau_; }

  // Conserved Ostrogradsky energy  gamma x''' x' - gamma x''^2/2 - alpha x'^2/2 + beta x^2/2.
  double energy(double t = 0) const;

  // Action -1/2 int (gamma x''^2 + alpha x'^2 + beta x^2), by boundary terms.
  double action() const;

  // Basis functions and derivatives 0..3 at t: out[k][order].
  std::array<std::array<double, 4>, 4> basis(double t) const;

 private:
  double gamma_, alpha_, beta_;
  double r_, omega_sq_;
  cplx omega_;
  double tau_;
  std::array<double, 4> c_;
};

ClassicalSolution solve_endpoint_problem(const ModelParams& p, const EndpointValues& e, double tau);
ClassicalSolution solve_bvp(const ModelParams& p, const BoundaryData& bc, double tau);

// Closed-form a1..a4 for solve_bvp's boundary data.
std::array<cplx, 4> exponential_coefficients(const ModelParams& p, const BoundaryData& bc, double tau);

// Symmetric 4x4 M over (x(0), x'(0), x'(tau), x(tau)); the action of the
// classical path through those values is -1/2 y^T M y.
struct ActionMatrix {
  double m11 = 0, m12 = 0, m13 = 0, m14 = 0, m22 = 0, m23 = 0;
  double tau = 0;
  bool near_critical = false;  // evaluated through the fundamental-solution route

  Eigen::Matrix4d full() const;
  static ActionMatrix from_full(const Eigen::Matrix4d& m, double tau);

  // Action along solve_bvp(bc): y = (x_f, -v_f, -v_i, x_i).
  double action(const BoundaryData& bc) const;
  // Kernel exponent -1/2 z^T M z with z = (x_f, v_f, v_i, x_i).
  double exponent(const BoundaryData& bc) const;
};

// Relative |omega1 - omega2| below which the closed forms are abandoned.
inline constexpr double kNearCriticalTol = 1e-6;

ActionMatrix action_matrix(const ModelParams& p, double tau);
ActionMatrix action_matrix_closed_form(const ModelParams& p, double tau);
ActionMatrix action_matrix_fundamental(const ModelParams& p, double tau);
ActionMatrix infinite_tau_matrix(const ModelParams& p);

// -1/2 int_0^tau (gamma x''^2 + alpha x'^2 + beta x^2) dt along the solution,
// by boundary terms.
double classical_action(const ClassicalSolution& s);

// Kernel over (x_f, v_f, x_i, v_i) from a full action matrix M over the
// action-matrix ordering (x_f, v_f, v_i, x_i), with the Van Vleck normalization sqrt(det cross)/(2 pi).
GaussianForm kernel_from_action(const Eigen::Matrix4d& m);
GaussianForm kernel_closed_form(const ModelParams& p, double tau);

}  // namespace accel
