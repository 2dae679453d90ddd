#include "accel/qkernel.hpp"

#include <cmath>
#include <numbers>

#include "accel/errors.hpp"

namespace accel {

namespace {
constexpr double kPi = std::numbers::pi;
}

GaussianForm QKernel::form() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 1) = m(1, 0) = g_coef;
  m(2, 3) = m(3, 2) = g_coef;
  m(0, 3) = m(3, 0) = -h_coef;
  m(1, 2) = m(2, 1) = -h_coef;
  return {norm, m};
}

QKernel q_kernel(const QParams& qp, double tau) {
  if (tau == 0) throw Error(ErrorKind::ZeroTau, "e^{-tau Q} at tau = 0 is a delta function");
  double s = tau * qp.sqrt_ab;
  QKernel k;
  k.g_coef = qp.C / std::tanh(s);
  k.h_coef = qp.C / std::sinh(s);
  k.norm = cplx(0, std::abs(k.h_coef) / (2 * kPi));
  k.tau = tau;
  return k;
}

GaussianForm mehler_kernel(double mass, double freq, double tau) {
  if (!(tau > 0)) throw Error(ErrorKind::ZeroTau, "Mehler kernel needs tau > 0");
  double wt = freq * tau;
  double k = mass * freq / std::sinh(wt);
  Eigen::MatrixXcd m(2, 2);
  double diag = mass * freq / std::tanh(wt);
  m << diag, -k, -k, diag;
  return {std::sqrt(k / (2 * kPi)), m};
}

GaussianForm h0_kernel(const ModelParams& p, double tau) {
  if (p.branch() != Branch::Real) throw Error(ErrorKind::ComplexBranch, "H0 kernel needs the real branch");
  double w1 = p.frequencies().omega1().real(), w2 = p.frequencies().omega2().real();
  auto kx = mehler_kernel(p.gamma() * w1 * w1, w2, tau);
  auto kv = mehler_kernel(p.gamma(), w1, tau);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  const int xi[2] = {0, 2}, vi[2] = {1, 3};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m(xi[i], xi[j]) = kx.quad()(i, j);
      m(vi[i], vi[j]) = kv.quad()(i, j);
    }
  return {kx.norm() * kv.norm(), m};
}

GaussianForm h0_ground_state(const ModelParams& p) {
  if (p.branch() != Branch::Real) throw Error(ErrorKind::ComplexBranch, "H0 ground state needs the real branch");
  double g = p.gamma(), w1 = p.frequencies().omega1().real(), w2 = p.frequencies().omega2().real();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = g * w1 * w1 * w2;
  m(1, 1) = g * w1;
  double norm = std::pow(g * g * w1 * w1 * w1 * w2 / (kPi * kPi), 0.25);
  return {norm, m};
}

GaussianForm evolution_kernel_operator(const ModelParams& p, double tau) {
  auto qp = p.q();
  auto chain = VariableSplit::chain(4, 2);
  auto left = compose(q_kernel(qp, -0.5).form(), h0_kernel(p, tau), chain);
  auto k = compose(left, q_kernel(qp, 0.5).form(), chain);
  // the product of the imaginary factor norms and branch factors is real
  if (k.imag_residue() > 1e-10)
    throw Error(ErrorKind::SingularMidBlock, "sandwiched kernel is not real; composition lost accuracy");
  return {k.norm().real(), k.quad().real().cast<cplx>()};
}

}  // namespace accel
