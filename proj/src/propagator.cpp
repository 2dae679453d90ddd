#include "accel/propagator.hpp"

#include <cmath>

#include "accel/errors.hpp"
#include "accel/gaussian.hpp"
#include "accel/qkernel.hpp"
#include "accel/vacuum.hpp"

namespace accel {

double propagator_g(const ModelParams& p, double tau) {
  if (!(tau >= 0)) throw Error(ErrorKind::InvalidArgument, "propagator needs tau >= 0");
  auto state = vacuum(p, false).form, dual = vacuum(p, true).form;
  if (tau == 0) {
    auto pair = product(dual, state);
    return (total_integral(pair) * second_moments(pair)(0, 0)).real();
  }
  // <dual(x,v)| x K(x,v;x',v') x' |state(x',v')>
  auto k = evolution_kernel_operator(p, tau);
  Eigen::MatrixXcd t = k.quad();
  t.block(0, 0, 2, 2) += dual.quad();
  t.block(2, 2, 2, 2) += state.quad();
  GaussianForm full(k.norm() * dual.norm() * state.norm(), t);
  cplx g = total_integral(full) * second_moments(full)(0, 2);
  return std::exp(tau * p.e00()) * g.real();
}

GridSpec propagator_oracle_grid() {
  GridSpec s;
  s.n_x = s.n_v = 64;
  s.x_max = 5.0;
  s.v_max = 7.0;
  s.stencil = Stencil::Spectral;
  return s;
}

std::vector<double> propagator_grid_oracle(const ModelParams& p, const std::vector<double>& taus,
                                           const GridSpec& spec) {
  GridOperator g(p, spec);
  auto sample = [&](bool dual) {
    Eigen::Matrix2d m = vacuum(p, dual).form.quad().real();
    return g.sample([m](double x, double v) {
      return std::exp(-0.5 * (m(0, 0) * x * x + 2 * m(0, 1) * x * v + m(1, 1) * v * v));
    });
  };
  Eigen::MatrixXd psi = sample(false), psid = sample(true);
  double norm = g.inner(psid, psi);
  Eigen::MatrixXd f = g.times_x(psi);
  std::vector<double> out;
  double at = 0;
  for (double tau : taus) {
    if (tau < at) throw Error(ErrorKind::InvalidArgument, "oracle taus must be nondecreasing");
    f = g.exp_apply(tau - at, f);
    at = tau;
    out.push_back(std::exp(tau * p.e00()) * g.inner(psid, g.times_x(f)) / norm);
  }
  return out;
}

}  // namespace accel
