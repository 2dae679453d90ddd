#pragma once

// Brute-force integration used as an independent check of the Gaussian algebra.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

inline double integrate1d(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol);
}

// Nested adaptive Gauss-Kronrod over a box.
inline double integrate2d(const std::function<double(double, double)>& f, double lx, double lv,
                          double tol = 1e-14) {
  return integrate1d([&](double x) { return integrate1d([&](double v) { return f(x, v); }, -lv, lv, tol); },
                     -lx, lx, tol);
}

// Tensor trapezoid rule on [-L, L]^d with n points per axis; spectrally
// accurate for smooth integrands that vanish at the walls.
template <class F>
double trapezoid(F&& f, int dim, double L, int n) {
  double h = 2 * L / (n - 1);
  std::vector<double> z(dim);
  std::vector<int> idx(dim, 0);
  double sum = 0;
  while (true) {
    for (int k = 0; k < dim; ++k) z[k] = -L + idx[k] * h;
    sum += f(z);
    int k = 0;
    while (k < dim && ++idx[k] == n) idx[k++] = 0;
    if (k == dim) break;
  }
  return sum * std::pow(h, dim);
}

}  // namespace oracle
