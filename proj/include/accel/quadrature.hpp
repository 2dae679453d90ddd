#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "accel/gaussian.hpp"

namespace accel {

struct GaussHermite {
  std::vector<double> nodes, weights;  // weight function e^{-t^2}
};

// Golub-Welsch.
GaussHermite gauss_hermite(int n);

// int g(z) poly(z) dz over R^n by tensor Gauss-Hermite adapted to Re(M).
// The imaginary part of M stays in the integrand.
cplx gauss_hermite_integral(const GaussianForm& g, const std::function<cplx(const Eigen::VectorXd&)>& poly,
                            int nodes = 40);

}  // namespace accel
