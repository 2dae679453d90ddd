#pragma once

#include "accel/gaussian.hpp"
#include "accel/params.hpp"

namespace accel {

// <x,v| e^{-tau Q} |x',v'> = norm * exp{-G (x v + x' v') + H (x v' + v x')}.
struct QKernel {
  double g_coef;
  double h_coef;
  cplx norm;
  double tau;

  // Over (x, v, x', v').
  GaussianForm form() const;
};

QKernel q_kernel(const QParams& qp, double tau);

// Imaginary-time oscillator kernel over (y, y') for -(1/2m) d^2 + m W^2 y^2 / 2.
GaussianForm mehler_kernel(double mass, double freq, double tau);

// e^{-tau H0} over (x, v, x', v'): x-sector mass gamma w1^2, frequency w2;
// v-sector mass gamma, frequency w1.
GaussianForm h0_kernel(const ModelParams& p, double tau);

// Normalized ground state of H0 over (x, v).
GaussianForm h0_ground_state(const ModelParams& p);

// e^{Q/2} e^{-tau H0} e^{-Q/2} over (x_f, v_f, x_i, v_i).
GaussianForm evolution_kernel_operator(const ModelParams& p, double tau);

}  // namespace accel
