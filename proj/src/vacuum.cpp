#include "accel/vacuum.hpp"

#include <cmath>
#include <numbers>

#include "accel/errors.hpp"
#include "accel/qkernel.hpp"

namespace accel {

namespace {

// cos(phi) this close to zero is the floating-point image of phi = pi/2.
constexpr double kCosFloor = 1e-14;

void require_pairing(const ModelParams& p) {
  if (p.branch() == Branch::Critical) return;
  const auto& f = p.frequencies();
  double c = f.is_real() ? 1.0 : std::cos(f.phi());
  if (!(c > kCosFloor))
    throw Error(ErrorKind::NotNormalizable, "cos(phi) <= 0: <dual|state> diverges");
}

}  // namespace

bool VacuumState::square_integrable() const {
  Eigen::Matrix2d re = form.quad().real();
  return re(0, 0) > 0 && re.determinant() > 0;
}

double vacuum_norm(const ModelParams& p) {
  const auto& f = p.frequencies();
  return std::pow(f.product(), 0.25) * std::sqrt(p.gamma() * f.sum() / std::numbers::pi);
}

VacuumState vacuum(const ModelParams& p, bool dual) {
  require_pairing(p);
  const auto& f = p.frequencies();
  double g = p.gamma(), s = f.sum(), pr = f.product();
  Eigen::MatrixXcd m(2, 2);
  double R = dual ? -g * pr : g * pr;
  m << g * s * pr, R, R, g * s;
  return {GaussianForm(vacuum_norm(p), m), p.e00(), dual};
}

VacuumState vacuum_via_q(const ModelParams& p, bool dual, cplx* mid_det) {
  auto qp = p.q();
  auto ground = h0_ground_state(p);
  Composition c = dual ? compose_detailed(ground, q_kernel(qp, 0.5).form(), VariableSplit::chain(2, 2))
                       : compose_detailed(q_kernel(qp, -0.5).form(), ground, VariableSplit::chain(4, 2));
  if (mid_det) *mid_det = c.mid_det;
  return {c.form, p.e00(), dual};
}

double factorization_residual(const ModelParams& p, double tau) {
  auto psi = vacuum(p, false).form, dual = vacuum(p, true).form;
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m.block(0, 0, 2, 2) = psi.quad();
  m.block(2, 2, 2, 2) = dual.quad();
  GaussianForm g(psi.norm() * dual.norm(), m);
  auto k = evolution_kernel_operator(p, tau);
  GaussianForm f(k.norm() * std::exp(tau * p.e00()), k.quad());
  // |f - g|^2 = <f,f> - 2<f,g> + <g,g>; all three are Gaussian integrals
  double ff = total_integral(product(f, f)).real(), fg = total_integral(product(f, g)).real(),
         gg = total_integral(product(g, g)).real();
  return std::sqrt(std::max(0.0, ff - 2 * fg + gg) / gg);
}

}  // namespace accel
