#include "accel/grid.hpp"

#include <cmath>
#include <numbers>

#include "accel/errors.hpp"
#include "accel/vacuum.hpp"

namespace accel {

namespace {

constexpr double kPi = std::numbers::pi;

// Fourier collocation matrices on n periodic points spanning a period P.
Eigen::MatrixXd spectral_d1(int n, double P) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  double h = 2 * kPi / n, s = 2 * kPi / P;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) d(j, k) = s * 0.5 * ((j - k) % 2 ? -1.0 : 1.0) / std::tan((j - k) * h / 2);
  return d;
}

Eigen::MatrixXd spectral_d2(int n, double P) {
  Eigen::MatrixXd d(n, n);
  double h = 2 * kPi / n, s = 2 * kPi / P;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        d(j, k) = -kPi * kPi / (3 * h * h) - 1.0 / 6;
      } else {
        double sn = std::sin((j - k) * h / 2);
        d(j, k) = -0.5 * ((j - k) % 2 ? -1.0 : 1.0) / (sn * sn);
      }
    }
  return s * s * d;
}

}  // namespace

GridOperator::GridOperator(const ModelParams& p, const GridSpec& spec)
    : spec_(spec), gamma_(p.gamma()), alpha_(p.alpha()), beta_(p.beta()) {
  if (spec.n_x < 4 || spec.n_v < 4 || !(spec.x_max > 0) || !(spec.v_max > 0))
    throw Error(ErrorKind::GridTooSmall, "grid needs at least 4 points per axis and positive extents");
  xs_.resize(spec.n_x);
  vs_.resize(spec.n_v);
  if (spec.stencil == Stencil::Second) {
    // interior points of [-L, L]; the walls carry zero
    hx_ = 2 * spec.x_max / (spec.n_x + 1);
    hv_ = 2 * spec.v_max / (spec.n_v + 1);
    for (int i = 0; i < spec.n_x; ++i) xs_(i) = -spec.x_max + (i + 1) * hx_;
    for (int j = 0; j < spec.n_v; ++j) vs_(j) = -spec.v_max + (j + 1) * hv_;
  } else {
    if (spec.n_x % 2 || spec.n_v % 2) throw Error(ErrorKind::InvalidArgument, "spectral grid needs even sizes");
    hx_ = 2 * spec.x_max / spec.n_x;
    hv_ = 2 * spec.v_max / spec.n_v;
    for (int i = 0; i < spec.n_x; ++i) xs_(i) = -spec.x_max + i * hx_;
    for (int j = 0; j < spec.n_v; ++j) vs_(j) = -spec.v_max + j * hv_;
    d1x_ = spectral_d1(spec.n_x, 2 * spec.x_max);
    d2v_ = spectral_d2(spec.n_v, 2 * spec.v_max);
  }
}

Eigen::MatrixXd GridOperator::sample(const std::function<double(double, double)>& f) const {
  Eigen::MatrixXd out(xs_.size(), vs_.size());
  for (int i = 0; i < xs_.size(); ++i)
    for (int j = 0; j < vs_.size(); ++j) out(i, j) = f(xs_(i), vs_(j));
  return out;
}

Eigen::MatrixXd GridOperator::dx(const Eigen::MatrixXd& f) const {
  if (spec_.stencil == Stencil::Spectral) return d1x_ * f;
  int n = f.rows();
  Eigen::MatrixXd out(f.rows(), f.cols());
  for (int i = 0; i < n; ++i) {
    out.row(i).setZero();
    if (i + 1 < n) out.row(i) += f.row(i + 1);
    if (i > 0) out.row(i) -= f.row(i - 1);
    out.row(i) /= 2 * hx_;
  }
  return out;
}

Eigen::MatrixXd GridOperator::dvv(const Eigen::MatrixXd& f) const {
  if (spec_.stencil == Stencil::Spectral) return f * d2v_.transpose();
  int n = f.cols();
  Eigen::MatrixXd out(f.rows(), f.cols());
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd c = -2 * f.col(j);
    if (j + 1 < n) c += f.col(j + 1);
    if (j > 0) c += f.col(j - 1);
    out.col(j) = c / (hv_ * hv_);
  }
  return out;
}

Eigen::MatrixXd GridOperator::times_x(const Eigen::MatrixXd& f) const { return xs_.asDiagonal() * f; }
Eigen::MatrixXd GridOperator::times_v(const Eigen::MatrixXd& f) const { return f * vs_.asDiagonal(); }

Eigen::MatrixXd GridOperator::potential_times(const Eigen::MatrixXd& f) const {
  Eigen::VectorXd px = 0.5 * beta_ * xs_.array().square();
  Eigen::VectorXd pv = 0.5 * alpha_ * vs_.array().square();
  return px.asDiagonal() * f + f * pv.asDiagonal();
}

Eigen::MatrixXd GridOperator::apply_h(const Eigen::MatrixXd& f) const {
  return -dvv(f) / (2 * gamma_) - times_v(dx(f)) + potential_times(f);
}

Eigen::MatrixXd GridOperator::apply_h_adjoint(const Eigen::MatrixXd& f) const {
  return -dvv(f) / (2 * gamma_) + times_v(dx(f)) + potential_times(f);
}

double GridOperator::h_norm_bound() const {
  double vmax = vs_.cwiseAbs().maxCoeff(), xmax = xs_.cwiseAbs().maxCoeff();
  double pot = 0.5 * alpha_ * vmax * vmax + 0.5 * beta_ * xmax * xmax;
  double d1, d2;
  if (spec_.stencil == Stencil::Spectral) {
    d1 = d1x_.cwiseAbs().colwise().sum().maxCoeff();
    d2 = d2v_.cwiseAbs().colwise().sum().maxCoeff();
  } else {
    d1 = 1 / hx_;
    d2 = 4 / (hv_ * hv_);
  }
  return d2 / (2 * gamma_) + vmax * d1 + pot;
}

Eigen::MatrixXd GridOperator::exp_apply(double tau, const Eigen::MatrixXd& f) const {
  if (tau < 0) throw Error(ErrorKind::InvalidArgument, "exp_apply needs tau >= 0");
  if (tau == 0) return f;
  int steps = std::max(1, static_cast<int>(std::ceil(tau * h_norm_bound())));
  double dt = tau / steps;
  Eigen::MatrixXd u = f;
  for (int s = 0; s < steps; ++s) {
    Eigen::MatrixXd term = u, sum = u;
    for (int k = 1; k <= 80; ++k) {
      term = (-dt / k) * apply_h(term);
      sum += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-18 * sum.cwiseAbs().maxCoeff()) break;
    }
    u = sum;
  }
  return u;
}

double GridOperator::inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
  return a.cwiseProduct(b).sum() * hx_ * hv_;
}

double SmoothGaussian::operator()(double x, double v) const {
  double dx = x - x0, dv = v - v0;
  return std::exp(-0.5 * (a * dx * dx + 2 * c * dx * dv + b * dv * dv));
}

std::vector<SmoothGaussian> default_test_functions(const ModelParams& p) {
  auto f = p.frequencies();
  double g = p.gamma();
  return {
      {0.0, 0.0, g * f.sum() * f.product(), g * f.sum(), g * f.product()},
      {0.3, -0.2, 2.0, 1.5, 0.4},
      {-0.5, 0.4, 3.0, 2.0, -0.8},
      {0.0, 0.6, 1.2, 2.5, 0.3},
      {0.4, 0.0, 4.0, 1.0, 1.0},
  };
}

GridResiduals grid_residuals(const ModelParams& p, const GridOperator& g) {
  return grid_residuals(p, g, default_test_functions(p));
}

GridResiduals grid_residuals(const ModelParams& p, const GridOperator& g, const std::vector<SmoothGaussian>& tests) {
  auto state = vacuum(p, false), dual = vacuum(p, true);
  auto eval = [](const VacuumState& s) {
    Eigen::Matrix2d m = s.form.quad().real();
    return [m](double x, double v) { return std::exp(-0.5 * (m(0, 0) * x * x + 2 * m(0, 1) * x * v + m(1, 1) * v * v)); };
  };
  Eigen::MatrixXd psi = g.sample(eval(state)), psid = g.sample(eval(dual));

  GridResiduals r;
  double peak = psi.cwiseAbs().maxCoeff();
  int nx = psi.rows(), nv = psi.cols();
  double edge = std::max({psi.row(0).cwiseAbs().maxCoeff(), psi.row(nx - 1).cwiseAbs().maxCoeff(),
                          psi.col(0).cwiseAbs().maxCoeff(), psi.col(nv - 1).cwiseAbs().maxCoeff()});
  r.edge = edge / peak;
  if (r.edge > 1e-12) throw Error(ErrorKind::GridTooSmall, "vacuum is not negligible at the grid boundary");

  double E = p.e00();
  r.eigen = g.norm(g.apply_h(psi) - E * psi) / g.norm(psi);
  r.dual = g.norm(g.apply_h_adjoint(psid) - E * psid) / g.norm(psid);
  r.structural = 0;
  for (const auto& t : tests) {
    Eigen::MatrixXd f = g.sample(t);
    Eigen::MatrixXd comm = g.apply_h(g.times_x(f)) - g.times_x(g.apply_h(f)) + g.times_v(f);
    r.commutator.push_back(g.norm(comm) / g.norm(f));
    Eigen::MatrixXd anti = g.apply_h(f) - g.apply_h_adjoint(f) + 2 * g.times_v(g.dx(f));
    r.structural = std::max(r.structural, anti.cwiseAbs().maxCoeff());
  }
  return r;
}

}  // namespace accel
