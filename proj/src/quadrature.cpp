#include "accel/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "accel/errors.hpp"

namespace accel {

GaussHermite gauss_hermite(int n) {
  // Jacobi matrix of the Hermite recurrence; weights from first eigenvector components
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussHermite gh;
  double mu0 = std::sqrt(std::numbers::pi);
  for (int k = 0; k < n; ++k) {
    gh.nodes.push_back(es.eigenvalues()(k));
    double v = es.eigenvectors()(0, k);
    gh.weights.push_back(mu0 * v * v);
  }
  return gh;
}

cplx gauss_hermite_integral(const GaussianForm& g, const std::function<cplx(const Eigen::VectorXd&)>& poly,
                            int nodes) {
  int n = g.n();
  Eigen::MatrixXd re = g.quad().real();
  Eigen::LLT<Eigen::MatrixXd> llt(re);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::QuadratureFailure, "integrand does not decay (Re M not positive definite)");
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd Linv_t = L.inverse().transpose();  // z = L^{-T} y, y^T y = z^T Re(M) z
  Eigen::MatrixXd im = g.quad().imag();
  auto gh = gauss_hermite(nodes);
  std::vector<int> idx(n, 0);
  Eigen::VectorXd y(n);
  cplx sum = 0;
  while (true) {
    double w = 1;
    for (int k = 0; k < n; ++k) {
      y(k) = std::sqrt(2.0) * gh.nodes[idx[k]];
      w *= gh.weights[idx[k]];
    }
    Eigen::VectorXd z = Linv_t * y;
    sum += w * poly(z) * std::exp(cplx(0, -0.5 * z.dot(im * z)));
    int k = 0;
    while (k < n && ++idx[k] == nodes) idx[k++] = 0;
    if (k == n) break;
  }
  double jac = std::pow(2.0, n / 2.0) / L.diagonal().prod();
  return g.norm() * sum * jac;
}

}  // namespace accel
