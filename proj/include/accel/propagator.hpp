#pragma once

#include <vector>

#include "accel/grid.hpp"
#include "accel/params.hpp"

namespace accel {

// G(tau) = e^{tau E00} <psi00D| x e^{-tau H} x |psi00>, exact Gaussian algebra.
double propagator_g(const ModelParams& p, double tau);

// Periodic 64 x 64 Fourier grid used by the oracle.
GridSpec propagator_oracle_grid();

// Same quantity from the grid operator; taus must be nondecreasing.
std::vector<double> propagator_grid_oracle(const ModelParams& p, const std::vector<double>& taus,
                                           const GridSpec& spec = propagator_oracle_grid());

}  // namespace accel
