#include "accel/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "accel/errors.hpp"

namespace accel {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Eigen::MatrixXcd symmetrize(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.transpose()); }

Eigen::MatrixXcd select(const Eigen::MatrixXcd& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  Eigen::MatrixXcd out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

std::vector<int> complement(int n, const std::vector<int>& vars) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (std::find(vars.begin(), vars.end(), i) == vars.end()) out.push_back(i);
  return out;
}

void check_indices(int n, const std::vector<int>& vars) {
  std::vector<int> s(vars);
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end() || (!s.empty() && (s.front() < 0 || s.back() >= n)))
    throw Error(ErrorKind::DimensionMismatch, "bad variable index set");
}

}  // namespace

GaussianForm::GaussianForm(cplx norm, const Eigen::MatrixXcd& quad) : norm_(norm) {
  if (quad.rows() != quad.cols()) throw Error(ErrorKind::DimensionMismatch, "quad must be square");
  quad_ = symmetrize(quad);
}

GaussianForm GaussianForm::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n()) throw Error(ErrorKind::DimensionMismatch, "permutation size");
  check_indices(n(), perm);
  return {norm_, select(quad_, perm, perm)};
}

GaussianForm GaussianForm::reflected(const std::vector<int>& vars) const {
  check_indices(n(), vars);
  Eigen::VectorXcd s = Eigen::VectorXcd::Ones(n());
  for (int v : vars) s(v) = -1.0;
  return {norm_, s.asDiagonal() * quad_ * s.asDiagonal()};
}

GaussianForm GaussianForm::scaled(cplx factor) const { return {norm_ * factor, quad_}; }

double GaussianForm::imag_residue() const {
  double q = quad_.imag().cwiseAbs().maxCoeff() / std::max(quad_.cwiseAbs().maxCoeff(), 1e-300);
  double c = std::abs(norm_.imag()) / std::max(std::abs(norm_), 1e-300);
  return std::max(q, c);
}

cplx evaluate(const GaussianForm& g, const Eigen::VectorXcd& z) {
  if (z.size() != g.n()) throw Error(ErrorKind::DimensionMismatch, "evaluate: length(z) != n");
  cplx e = -0.5 * (z.transpose() * g.quad() * z).value();
  return g.norm() * std::exp(e);
}

cplx evaluate(const GaussianForm& g, const Eigen::VectorXd& z) {
  return evaluate(g, Eigen::VectorXcd(z.cast<cplx>()));
}

VariableSplit VariableSplit::chain(int n1, int k) {
  VariableSplit s;
  for (int i = 0; i < k; ++i) {
    s.left_mid.push_back(n1 - k + i);
    s.right_mid.push_back(i);
  }
  return s;
}

cplx det_inv_sqrt(const Eigen::MatrixXcd& m, cplx* det) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SingularMidBlock, "eigen-decomposition failed");
  cplx f = 1.0, d = 1.0;
  double scale = m.cwiseAbs().maxCoeff();
  for (int i = 0; i < m.rows(); ++i) {
    cplx lam = es.eigenvalues()(i);
    if (!(std::abs(lam) > 1e-13 * scale))
      throw Error(ErrorKind::SingularMidBlock, "integrated block is (numerically) singular");
    // a negative real eigenvalue that came out as -x - i0 is taken from above
    if (lam.imag() == 0.0) lam = cplx(lam.real(), 0.0);
    f /= std::sqrt(lam);
    d *= lam;
  }
  if (det) *det = d;
  return f;
}

GaussianForm product(const GaussianForm& g1, const GaussianForm& g2) {
  if (g1.n() != g2.n()) throw Error(ErrorKind::DimensionMismatch, "product: variable count");
  return {g1.norm() * g2.norm(), g1.quad() + g2.quad()};
}

Composition integrate_out(const GaussianForm& g, const std::vector<int>& vars, Elimination how) {
  check_indices(g.n(), vars);
  if (vars.empty()) return {g, 1.0};
  if (how == Elimination::Sequential) {
    // one pivot at a time; later indices shift after each removal
    GaussianForm cur = g;
    cplx det = 1.0;
    std::vector<int> left(vars);
    while (!left.empty()) {
      int v = left.front();
      left.erase(left.begin());
      auto step = integrate_out(cur, {v}, Elimination::Block);
      cur = step.form;
      det *= step.mid_det;
      for (int& w : left)
        if (w > v) --w;
    }
    return {cur, det};
  }
  auto keep = complement(g.n(), vars);
  Eigen::MatrixXcd A = select(g.quad(), keep, keep);
  Eigen::MatrixXcd B = select(g.quad(), keep, vars);
  Eigen::MatrixXcd D = select(g.quad(), vars, vars);
  cplx det;
  cplx f = det_inv_sqrt(D, &det);
  Eigen::MatrixXcd schur = A - B * D.partialPivLu().solve(B.transpose());
  double m = static_cast<double>(vars.size());
  return {GaussianForm(g.norm() * std::pow(kTwoPi, m / 2) * f, schur), det};
}

Composition compose_detailed(const GaussianForm& g1, const GaussianForm& g2, const VariableSplit& split,
                             Elimination how) {
  if (split.left_mid.size() != split.right_mid.size())
    throw Error(ErrorKind::DimensionMismatch, "mid sets differ in size");
  check_indices(g1.n(), split.left_mid);
  check_indices(g2.n(), split.right_mid);
  auto out = complement(g1.n(), split.left_mid);
  auto in = complement(g2.n(), split.right_mid);
  int no = out.size(), nm = split.left_mid.size(), ni = in.size();
  // joint variables: (out, mid, in)
  std::vector<int> map1(g1.n()), map2(g2.n());
  for (int i = 0; i < no; ++i) map1[out[i]] = i;
  for (int i = 0; i < nm; ++i) map1[split.left_mid[i]] = no + i, map2[split.right_mid[i]] = no + i;
  for (int i = 0; i < ni; ++i) map2[in[i]] = no + nm + i;
  int n = no + nm + ni;
  Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < g1.n(); ++i)
    for (int j = 0; j < g1.n(); ++j) joint(map1[i], map1[j]) += g1.quad()(i, j);
  for (int i = 0; i < g2.n(); ++i)
    for (int j = 0; j < g2.n(); ++j) joint(map2[i], map2[j]) += g2.quad()(i, j);
  std::vector<int> mid(nm);
  for (int i = 0; i < nm; ++i) mid[i] = no + i;
  return integrate_out(GaussianForm(g1.norm() * g2.norm(), joint), mid, how);
}

GaussianForm compose(const GaussianForm& g1, const GaussianForm& g2, const VariableSplit& split) {
  return compose_detailed(g1, g2, split).form;
}

cplx total_integral(const GaussianForm& g) {
  std::vector<int> all(g.n());
  for (int i = 0; i < g.n(); ++i) all[i] = i;
  return integrate_out(g, all).form.norm();
}

Eigen::MatrixXcd second_moments(const GaussianForm& g) {
  Eigen::MatrixXd re = g.quad().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0))
    throw Error(ErrorKind::NotNormalizable, "Re(M) is not positive definite");
  Eigen::MatrixXcd inv = g.quad().partialPivLu().inverse();
  return symmetrize(inv);
}

}  // namespace accel
