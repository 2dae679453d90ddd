#pragma once

#include "accel/gaussian.hpp"
#include "accel/params.hpp"

namespace accel {

struct VacuumState {
  GaussianForm form;  // over (x, v)
  double energy;
  bool dual;

  // The state alone (not just its pairing with the dual) is in L^2.
  bool square_integrable() const;
};

// N00 exp(-P x^2/2 - Q v^2/2 -+ R x v); the dual flips the sign of R.
// Rejected (NotNormalizable) when Re(w1 + w2) <= 0, where the pairing
// <dual|state> diverges.
VacuumState vacuum(const ModelParams& p, bool dual = false);

// The same state built as e^{Q/2}|0,0> (or <0,0|e^{-Q/2} for the dual) from
// the H0 ground state.  mid_det receives the determinant of the integrated block.
VacuumState vacuum_via_q(const ModelParams& p, bool dual = false, cplx* mid_det = nullptr);

// Normalization constant N00.
double vacuum_norm(const ModelParams& p);

// L^2(R^4) relative distance between e^{tau E00} K(tau) and psi00(x_f, v_f) psi00D(x_i, v_i).
double factorization_residual(const ModelParams& p, double tau);

}  // namespace accel
