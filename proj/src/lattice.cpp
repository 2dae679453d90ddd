#include "accel/lattice.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "accel/errors.hpp"

namespace accel {

double StepKernel::exponent(double x, double v, double v_prev) const {
  double dv = v - v_prev;
  return -dv * dv / (2 * velocity_width) - alpha_weight * v * v / 2 - beta_weight * x * x / 2;
}

StepKernel step_kernel(const ModelParams& p, double eps) {
  if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "step needs eps > 0");
  double g = p.gamma();
  return {eps, std::sqrt(g / (2 * std::numbers::pi * eps)), eps / g, eps * p.alpha(), eps * p.beta()};
}

namespace {

Eigen::Vector4d pin(const BoundaryData& bc, double eps) {
  return {bc.x_i, bc.x_i - eps * bc.v_i, bc.x_f + eps * bc.v_f, bc.x_f};
}

}  // namespace

LatticeProblem build_problem(const ModelParams& p, const BoundaryData& bc, double tau, int n_steps) {
  if (n_steps < 4) throw Error(ErrorKind::BadDiscretization, "lattice needs N >= 4 to host both constraints");
  if (!(tau > 0)) throw Error(ErrorKind::ZeroTau, "lattice needs tau > 0");
  LatticeProblem lp;
  lp.n_ = n_steps;
  lp.tau_ = tau;
  lp.eps_ = tau / n_steps;
  lp.bc_ = bc;
  lp.pinned_ = pin(bc, lp.eps_);

  const int n = n_steps;
  const double eps = lp.eps_;
  const double kg = p.gamma() / (eps * eps * eps), ka = p.alpha() / eps, kb = eps * p.beta() / 2;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(9 * n + 4 * n + 2 * n);
  auto add_outer = [&](const int* idx, const double* c, int m, double w) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) t.emplace_back(idx[i], idx[j], w * c[i] * c[j]);
  };
  const double second[] = {1, -2, 1}, first[] = {1, -1};
  for (int k = 2; k <= n; ++k) {
    int idx[] = {k, k - 1, k - 2};
    add_outer(idx, second, 3, kg);
  }
  for (int k = 1; k <= n; ++k) {
    int idx[] = {k, k - 1};
    add_outer(idx, first, 2, ka);
    t.emplace_back(k, k, kb);
    t.emplace_back(k - 1, k - 1, kb);
  }
  lp.a_.resize(n + 1, n + 1);
  lp.a_.setFromTriplets(t.begin(), t.end());
  return lp;
}

Eigen::SparseMatrix<double> LatticeProblem::free_block() const {
  return a_.block(2, 2, n_ - 3, n_ - 3);
}

LatticeProblem LatticeProblem::with_bc(const BoundaryData& bc) const {
  LatticeProblem lp = *this;
  lp.bc_ = bc;
  lp.pinned_ = pin(bc, eps_);
  return lp;
}

LatticePath LatticeProblem::solve() const {
  const int n = n_, m = n_ - 3;
  Eigen::VectorXd fixed = Eigen::VectorXd::Zero(n + 1);
  auto pins = pinned_indices();
  for (int k = 0; k < 4; ++k) fixed(pins[k]) = pinned_(k);

  // stationarity in the free block: A_ff y = -A_f,pinned x_pinned
  Eigen::VectorXd rhs = -(a_ * fixed).segment(2, m);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(free_block());
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0).any())
    throw Error(ErrorKind::NotNormalizable, "lattice action is not positive definite");
  Eigen::VectorXd x = fixed;
  x.segment(2, m) = ldlt.solve(rhs);
  return {x, -0.5 * x.dot(a_ * x)};
}

double kernel_ratio(const LatticeProblem& problem, const BoundaryData& reference_bc) {
  return std::exp(problem.solve().action - problem.with_bc(reference_bc).solve().action);
}

Extrapolation extrapolate(std::vector<std::pair<double, double>> values) {
  if (values.size() < 3) throw Error(ErrorKind::InvalidArgument, "extrapolation needs at least 3 points");
  std::sort(values.begin(), values.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (size_t k = 1; k < values.size(); ++k)
    if (std::abs(values[k - 1].first / values[k].first - 2) > 1e-9)
      throw Error(ErrorKind::InvalidArgument, "extrapolation needs eps halving at each step");

  const size_t m = values.size();
  std::vector<double> d;
  for (size_t k = 1; k < m; ++k) d.push_back(std::abs(values[k].second - values[k - 1].second));
  double scale = std::abs(values.back().second);
  if (d.back() <= 1e-15 * scale) return {values.back().second, INFINITY};
  for (size_t k = 1; k < d.size(); ++k)
    if (!(d[k] < d[k - 1])) throw Error(ErrorKind::NonConvergent, "successive differences do not shrink");

  double fitted = std::log2(d[d.size() - 2] / d.back());
  double p = std::abs(fitted - std::round(fitted)) < 0.25 ? std::round(fitted) : fitted;

  std::vector<double> col;
  for (auto& v : values) col.push_back(v.second);
  for (size_t level = 0; col.size() > 1; ++level) {
    double f = std::pow(2.0, p + level);
    std::vector<double> next;
    for (size_t k = 1; k < col.size(); ++k) next.push_back((f * col[k] - col[k - 1]) / (f - 1));
    col = std::move(next);
  }
  return {col[0], fitted};
}

Extrapolation extrapolate_ratio(std::vector<std::pair<double, double>> ratios) {
  for (auto& [eps, r] : ratios) {
    if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "kernel ratios must be positive");
    r = std::log(r);
  }
  auto ex = extrapolate(std::move(ratios));
  return {std::exp(ex.limit), ex.order};
}

}  // namespace accel
