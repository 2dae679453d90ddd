#include "accel/multidof.hpp"

#include "accel/errors.hpp"
#include "accel/qkernel.hpp"
#include "accel/vacuum.hpp"

namespace accel {

double MultiDofSystem::e00() const {
  double e = 0;
  for (const auto& m : modes_) e += m.e00();
  return e;
}

MultiDofSystem build_system(const Eigen::MatrixXd& s, const std::vector<Couplings>& modes) {
  const int n = static_cast<int>(modes.size());
  if (n == 0 || s.rows() != n || s.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "mixing matrix must be N x N for N modes");
  if ((s * s.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorKind::NotOrthogonal, "mixing matrix is not orthogonal");
  MultiDofSystem sys;
  sys.s_ = s;
  for (int k = 0; k < n; ++k) {
    if (classify_branch(modes[k]) == Branch::Critical)
      throw Error(ErrorKind::CriticalMode, "mode " + std::to_string(k) + " has equal frequencies");
    sys.modes_.push_back(ModelParams::from_couplings(modes[k]));
  }
  return sys;
}

GaussianForm MultiGroundState::form(bool dual) const {
  const int n = P.rows();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m << P, (dual ? -R : R), (dual ? -R : R), Q;
  return GaussianForm(norm, m.cast<cplx>());
}

MultiGroundState ground_state_many(const MultiDofSystem& sys) {
  const int n = sys.n_modes();
  Eigen::VectorXd p(n), q(n), r(n);
  double norm = 1;
  for (int k = 0; k < n; ++k) {
    auto v = vacuum(sys.modes()[k]);
    const auto& m = v.form.quad();
    // conjugate frequency pairs still give real coefficients
    if (m.imag().cwiseAbs().maxCoeff() > 1e-12 * m.real().cwiseAbs().maxCoeff() ||
        std::abs(v.form.norm().imag()) > 1e-12 * std::abs(v.form.norm()))
      throw Error(ErrorKind::ComplexBranch, "mode vacuum is not real");
    p(k) = m(0, 0).real();
    q(k) = m(1, 1).real();
    r(k) = m(0, 1).real();
    norm *= v.form.norm().real();
  }
  const auto& s = sys.mixing();
  return {s.transpose() * p.asDiagonal() * s, s.transpose() * q.asDiagonal() * s,
          s.transpose() * r.asDiagonal() * s, norm};
}

GaussianForm kernel_many(const MultiDofSystem& sys, double tau) {
  const int n = sys.n_modes();
  Eigen::MatrixXcd mz = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  cplx norm = 1;
  for (int k = 0; k < n; ++k) {
    auto g = evolution_kernel_operator(sys.modes()[k], tau);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) mz(a * n + k, b * n + k) = g.quad()(a, b);
    norm *= g.norm();
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int a = 0; a < 4; ++a) t.block(a * n, a * n, n, n) = sys.mixing();
  return GaussianForm(norm, t.transpose().cast<cplx>() * mz * t.cast<cplx>());
}

}  // namespace accel
