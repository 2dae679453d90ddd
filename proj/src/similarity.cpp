#include "accel/similarity.hpp"

#include <array>
#include <cmath>

#include "accel/errors.hpp"
#include "accel/gaussian.hpp"
#include "accel/qkernel.hpp"
#include "accel/quadrature.hpp"

namespace accel {

const char* to_string(QOp op) {
  switch (op) {
    case QOp::X: return "X";
    case QOp::DX: return "DX";
    case QOp::V: return "V";
    case QOp::DV: return "DV";
  }
  return "?";
}

namespace {

// Gaussian with quadratic form diag-ish in the light-cone coordinates (x+v, x-v)/sqrt2.
GaussianForm cone_gaussian(double ca, double cb, double cab) {
  Eigen::Matrix2d rm;
  rm << 1, 1, 1, -1;
  rm /= std::sqrt(2.0);
  Eigen::Matrix2d a;
  a << ca, cab, cab, cb;
  return GaussianForm(1.0, (rm.transpose() * a * rm).cast<cplx>());
}

// (op f)/f for f = exp(-z^T M z / 2)
cplx op_ratio(QOp op, const Eigen::Matrix2cd& m, const Eigen::VectorXd& z) {
  Eigen::Vector2cd mz = m * z.head<2>().cast<cplx>();
  switch (op) {
    case QOp::X: return z(0);
    case QOp::V: return z(1);
    case QOp::DX: return -mz(0);
    case QOp::DV: return -mz(1);
  }
  return 0;
}

cplx pairing(const GaussianForm& left, const GaussianForm& right, const Eigen::Vector2cd& ell, QOp op) {
  Eigen::Matrix2cd m = right.quad();
  auto pr = product(left, right);
  return gauss_hermite_integral(pr, [&](const Eigen::VectorXd& z) {
    return (ell(0) * z(0) + ell(1) * z(1)) * op_ratio(op, m, z);
  });
}

}  // namespace

double similarity_residual(const QParams& qp, QOp op, double tau) {
  double c = qp.C;
  struct Case { std::array<double, 3> psi, chi; };
  const Case cases[] = {
      {{c * 1.1, 3.0, 0.2}, {0.7, c * 1.2, -0.1}},
      {{c * 0.9, 1.0, 0.0}, {4.0, c * 0.8, 0.3}},
      {{c, 2.0, -0.3}, {1.5, c, 0.2}},
  };
  const Eigen::Vector2cd ell(0.7, -1.3);

  double ch = std::cosh(tau * qp.sqrt_ab), sh = std::sinh(tau * qp.sqrt_ab);
  double shb = std::sqrt(qp.b / qp.a) * sh, sha = std::sqrt(qp.a / qp.b) * sh;
  std::array<std::pair<QOp, double>, 2> rhs_terms;
  switch (op) {
    case QOp::X: rhs_terms = {{{QOp::X, ch}, {QOp::DV, shb}}}; break;
    case QOp::DX: rhs_terms = {{{QOp::DX, ch}, {QOp::V, sha}}}; break;
    case QOp::V: rhs_terms = {{{QOp::V, ch}, {QOp::DX, shb}}}; break;
    case QOp::DV: rhs_terms = {{{QOp::DV, ch}, {QOp::X, sha}}}; break;
  }

  double worst = 0;
  for (const auto& cs : cases) {
    auto psi = cone_gaussian(cs.psi[0], cs.psi[1], cs.psi[2]);
    auto chi = cone_gaussian(cs.chi[0], cs.chi[1], cs.chi[2]);
    GaussianForm phi = psi, chit = chi;
    Eigen::Vector2cd ell2 = ell;
    if (tau != 0) {
      auto kp = q_kernel(qp, tau).form();
      phi = compose(q_kernel(qp, -tau).form(), psi, VariableSplit::chain(4, 2));
      chit = compose(chi, kp, VariableSplit::chain(2, 2));
      // the linear factor rides through the left composition as a conditional mean
      Eigen::Matrix4cd t = kp.quad();
      t.block(0, 0, 2, 2) += chi.quad();
      Eigen::Matrix2cd d = t.block(0, 0, 2, 2), b = t.block(2, 0, 2, 2);
      Eigen::Matrix2cd cm = -d.lu().solve(b.transpose());
      ell2 = cm.transpose() * ell;
    }
    cplx lhs = pairing(chit, phi, ell2, op);
    cplx rhs = 0;
    for (auto [o, k] : rhs_terms) rhs += k * pairing(chi, psi, ell, o);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return worst;
}

namespace {

constexpr int kDeg = 10;
using Poly = Eigen::Matrix<double, kDeg, kDeg>;  // p(i, j) multiplies x^i v^j

// f = p(x, v) exp(-z^T A z / 2); operators act on the polynomial part.
struct PolyGauss {
  Eigen::Matrix2d a;

  Poly mul_x(const Poly& p) const {
    Poly r = Poly::Zero();
    r.bottomRows(kDeg - 1) = p.topRows(kDeg - 1);
    return r;
  }
  Poly mul_v(const Poly& p) const {
    Poly r = Poly::Zero();
    r.rightCols(kDeg - 1) = p.leftCols(kDeg - 1);
    return r;
  }
  Poly d_x(const Poly& p) const {
    Poly r = Poly::Zero();
    for (int i = 1; i < kDeg; ++i) r.row(i - 1) = i * p.row(i);
    return r - a(0, 0) * mul_x(p) - a(0, 1) * mul_v(p);
  }
  Poly d_v(const Poly& p) const {
    Poly r = Poly::Zero();
    for (int j = 1; j < kDeg; ++j) r.col(j - 1) = j * p.col(j);
    return r - a(0, 1) * mul_x(p) - a(1, 1) * mul_v(p);
  }
};

}  // namespace

double double_commutator_residual(const QParams& qp) {
  PolyGauss pg;
  pg.a << 1.3, 0.2, 0.2, 0.9;
  auto q = [&](const Poly& p) -> Poly { return qp.a * pg.mul_x(pg.mul_v(p)) - qp.b * pg.d_x(pg.d_v(p)); };
  auto comm_x = [&](const Poly& p) -> Poly { return pg.mul_x(q(p)) - q(pg.mul_x(p)); };

  Poly f = Poly::Zero();
  f(0, 0) = 1;
  f(1, 0) = 0.3;
  f(0, 1) = -0.2;
  f(1, 1) = 0.5;
  Poly lhs = comm_x(q(f)) - q(comm_x(f));
  Poly rhs = qp.a * qp.b * pg.mul_x(f);
  return (lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
}

}  // namespace accel
