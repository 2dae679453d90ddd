#include "accel/classical.hpp"

#include <cmath>
#include <numbers>

#include "accel/errors.hpp"

namespace accel {

namespace {

void check_tau(double tau) {
  if (!(tau > 0) || !std::isfinite(tau)) throw Error(ErrorKind::DegenerateBvp, "tau must be positive");
}

// cos(wt) and sin(wt)/w for real w^2 (w imaginary when w^2 < 0).
void trig(double w2, double t, double& c, double& s) {
  if (w2 > 0) {
    double w = std::sqrt(w2);
    c = std::cos(w * t);
    s = std::sin(w * t) / w;
  } else if (w2 < 0) {
    double w = std::sqrt(-w2);
    c = std::cosh(w * t);
    s = std::sinh(w * t) / w;
  } else {
    c = 1;
    s = t;
  }
}

bool near_critical(const ModelParams& p) {
  const auto& f = p.frequencies();
  return 2 * std::sqrt(std::abs(f.half_diff_sq())) < kNearCriticalTol * std::abs(f.omega1());
}

struct Closed {
  cplx r, w, a, b;
  cplx E(cplx x) const { return std::exp(x); }
};

Closed closed_setup(const ModelParams& p) {
  auto rw = p.rw();
  return {rw.r, rw.omega, p.gamma(), p.alpha() / 2};
}

// Inverse of Gamma with the magnitude of its terms, for the degeneracy test.
cplx gamma_inv(const Closed& k, double tau, double* scale) {
  cplx r = k.r, w = k.w, t = tau;
  cplx e2 = std::exp(2.0 * r * t), e4 = std::exp(4.0 * r * t);
  cplx terms[] = {w * w, w * w * e4, 2.0 * r * r * e2 * std::cos(2.0 * t * w), -2.0 * e2 * (r * r + w * w)};
  cplx sum = 0;
  double sc = 0;
  for (auto x : terms) sum += x, sc += std::abs(x);
  if (scale) *scale = sc;
  return sum;
}

cplx checked_gamma(const Closed& k, double tau) {
  double scale;
  cplx den = gamma_inv(k, tau, &scale);
  if (!(std::abs(den) > 1e-12 * scale))
    throw Error(ErrorKind::DegenerateBvp, "Gamma denominator vanishes (conjugate point or tau -> 0)");
  return 1.0 / den;
}

}  // namespace

EndpointValues endpoint_values(const BoundaryData& bc) { return {bc.x_f, -bc.v_f, bc.x_i, -bc.v_i}; }

ClassicalSolution::ClassicalSolution(const ModelParams& p, double tau, const std::array<double, 4>& coeffs)
    : gamma_(p.gamma()), alpha_(p.alpha()), beta_(p.beta()), tau_(tau), c_(coeffs) {
  auto rw = p.rw();
  r_ = rw.r;
  omega_sq_ = rw.omega_sq;
  omega_ = rw.omega;
}

std::array<std::array<double, 4>, 4> ClassicalSolution::basis(double t) const {
  // (c, s)' = [[mu, -w^2], [1, mu]] (c, s) for c = e^{mu t} cos wt, s = e^{mu t} sin(wt)/w
  double cw, sw;
  trig(omega_sq_, t, cw, sw);
  std::array<std::array<double, 4>, 4> out{};
  for (int half = 0; half < 2; ++half) {
    double mu = half == 0 ? r_ : -r_;
    double e = half == 0 ? std::exp(r_ * (t - tau_)) : std::exp(-r_ * t);
    double c = e * cw, s = e * sw;
    for (int k = 0; k < 4; ++k) {
      out[2 * half][k] = c;
      out[2 * half + 1][k] = s;
      double nc = mu * c - omega_sq_ * s, ns = c + mu * s;
      c = nc;
      s = ns;
    }
  }
  return out;
}

double ClassicalSolution::derivative(double t, int order) const {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  if (order > 3) {
    // reduce with the equation of motion: gamma x'''' = alpha x'' - beta x
    return (alpha_ * derivative(t, order - 2) - beta_ * derivative(t, order - 4)) / gamma_;
  }
  auto b = basis(t);
  double x = 0;
  for (int k = 0; k < 4; ++k) x += c_[k] * b[k][order];
  return x;
}

std::array<cplx, 4> ClassicalSolution::coefficients() const {
  cplx w = omega_;
  double shift = std::exp(-r_ * tau_);
  if (w == cplx(0)) throw Error(ErrorKind::CriticalFrequency, "sin-basis coefficients undefined at w = 0");
  return {c_[1] * shift / w, c_[0] * shift, c_[3] / w, c_[2]};
}

double ClassicalSolution::energy(double t) const {
  double x = derivative(t, 0), x1 = derivative(t, 1), x2 = derivative(t, 2), x3 = derivative(t, 3);
  return gamma_ * x3 * x1 - 0.5 * gamma_ * x2 * x2 - 0.5 * alpha_ * x1 * x1 + 0.5 * beta_ * x * x;
}

ClassicalSolution solve_endpoint_problem(const ModelParams& p, const EndpointValues& e, double tau) {
  check_tau(tau);
  ClassicalSolution unit(p, tau, {0, 0, 0, 0});
  auto b0 = unit.basis(0), bt = unit.basis(tau);
  Eigen::Matrix4d A;
  for (int k = 0; k < 4; ++k) {
    A(0, k) = b0[k][0];
    A(1, k) = b0[k][1];
    A(2, k) = bt[k][0];
    A(3, k) = bt[k][1];
  }
  auto lu = A.fullPivLu();
  if (!lu.isInvertible()) throw Error(ErrorKind::DegenerateBvp, "endpoint system is singular");
  Eigen::Vector4d c = lu.solve(Eigen::Vector4d(e.x0, e.xdot0, e.x_tau, e.xdot_tau));
  return {p, tau, {c(0), c(1), c(2), c(3)}};
}

ClassicalSolution solve_bvp(const ModelParams& p, const BoundaryData& bc, double tau) {
  return solve_endpoint_problem(p, endpoint_values(bc), tau);
}

std::array<cplx, 4> exponential_coefficients(const ModelParams& p, const BoundaryData& bc, double tau) {
  check_tau(tau);
  auto k = closed_setup(p);
  cplx G = checked_gamma(k, tau);
  cplx r = k.r, w = k.w, t = tau;
  double xf = bc.x_f, vf = bc.v_f, xi = bc.x_i, vi = bc.v_i;
  auto E = [](cplx x) { return std::exp(x); };
  auto s = [](cplx x) { return std::sin(x); };
  auto c = [](cplx x) { return std::cos(x); };
  cplx a1 = G * (r * r * xf * E(2. * r * t) * s(2. * t * w) + w * vf * E(2. * r * t) -
                 r * vf * E(2. * r * t) * s(2. * t * w) + r * w * xf * E(2. * r * t) * c(2. * t * w) -
                 r * w * xf - w * vf - 2. * r * r * xi * E(r * t) * s(t * w) +
                 2. * r * vi * E(r * t) * s(t * w) - w * E(r * t) * (E(2. * r * t) - 1.) * c(t * w) * (vi + r * xi) -
                 w * w * xi * E(r * t) * s(t * w) + w * w * xi * E(3. * r * t) * s(t * w));
  cplx a2 = G * (-r * r * xf * E(2. * r * t) + r * vf * E(2. * r * t) +
                 r * E(2. * r * t) * c(2. * t * w) * (r * xf - vf) - w * w * xf * E(2. * r * t) -
                 r * w * xf * E(2. * r * t) * s(2. * t * w) + w * w * xf - w * vi * E(r * t) * s(t * w) +
                 w * vi * E(3. * r * t) * s(t * w) + w * w * xi * E(r * t) * (E(2. * r * t) - 1.) * c(t * w) +
                 r * w * xi * E(r * t) * s(t * w) + r * w * xi * E(3. * r * t) * s(t * w));
  cplx a3 = G * E(r * t) *
            (r * r * xf * E(r * t) * s(2. * t * w) + w * vf * E(r * t) - w * vf * E(3. * r * t) +
             r * vf * E(r * t) * s(2. * t * w) + r * w * xf * E(3. * r * t) - r * w * xf * E(r * t) * c(2. * t * w) -
             2. * r * r * xi * E(2. * r * t) * s(t * w) - 2. * r * vi * E(2. * r * t) * s(t * w) -
             w * (E(2. * r * t) - 1.) * c(t * w) * (r * xi - vi) - w * w * xi * E(2. * r * t) * s(t * w) +
             w * w * xi * s(t * w));
  cplx a4 = G * E(r * t) *
            (-r * r * xf * E(r * t) - r * vf * E(r * t) + r * E(r * t) * c(2. * t * w) * (r * xf + vf) -
             w * w * xf * E(r * t) + w * w * xf * E(3. * r * t) + r * w * xf * E(r * t) * s(2. * t * w) -
             w * vi * E(2. * r * t) * s(t * w) - w * w * xi * (E(2. * r * t) - 1.) * c(t * w) -
             r * w * xi * E(2. * r * t) * s(t * w) - r * w * xi * s(t * w) + w * vi * s(t * w));
  return {a1, a2, a3, a4};
}

Eigen::Matrix4d ActionMatrix::full() const {
  Eigen::Matrix4d m;
  m << m11, m12, m13, m14,  //
      m12, m22, m23, -m13,  //
      m13, m23, m22, -m12,  //
      m14, -m13, -m12, m11;
  return m;
}

ActionMatrix ActionMatrix::from_full(const Eigen::Matrix4d& m, double tau) {
  ActionMatrix a;
  a.m11 = 0.5 * (m(0, 0) + m(3, 3));
  a.m22 = 0.5 * (m(1, 1) + m(2, 2));
  a.m12 = 0.5 * (m(0, 1) - m(2, 3));
  a.m13 = 0.5 * (m(0, 2) - m(1, 3));
  a.m14 = m(0, 3);
  a.m23 = m(1, 2);
  a.tau = tau;
  return a;
}

double ActionMatrix::action(const BoundaryData& bc) const {
  Eigen::Vector4d y(bc.x_f, -bc.v_f, -bc.v_i, bc.x_i);
  return -0.5 * y.dot(full() * y);
}

double ActionMatrix::exponent(const BoundaryData& bc) const {
  Eigen::Vector4d z(bc.x_f, bc.v_f, bc.v_i, bc.x_i);
  return -0.5 * z.dot(full() * z);
}

ActionMatrix action_matrix_closed_form(const ModelParams& p, double tau) {
  check_tau(tau);
  auto k = closed_setup(p);
  cplx G = checked_gamma(k, tau);
  cplx r = k.r, w = k.w, a = k.a, b = k.b, t = tau;
  auto E = [](cplx x) { return std::exp(x); };
  auto s = [](cplx x) { return std::sin(x); };
  auto c = [](cplx x) { return std::cos(x); };
  cplx rw2 = r * r + w * w;
  cplx m11 = G * (2. * a * r * w * rw2 * (w * (E(4. * r * t) - 1.) + 2. * r * E(2. * r * t) * s(2. * t * w)));
  cplx m12 = G * (w * w * E(4. * r * t) * (2. * a * r * r - b) -
                  2. * r * r * E(2. * r * t) * (2. * a * w * w + b) * c(2. * t * w) - w * w * (b - 2. * a * r * r) +
                  2. * b * E(2. * r * t) * rw2);
  cplx m13 = G * (4. * a * r * w * E(r * t) * (E(2. * r * t) - 1.) * rw2 * s(t * w));
  cplx m14 = G * (-4. * a * r * w * E(r * t) * rw2 *
                  (r * (E(2. * r * t) + 1.) * s(t * w) + w * (E(2. * r * t) - 1.) * c(t * w)));
  cplx m22 = G * (-2. * a * r * w * (-w * E(4. * r * t) + 2. * r * E(2. * r * t) * s(2. * t * w) + w));
  cplx m23 = G * (4. * a * r * w * E(r * t) * (r * (E(2. * r * t) + 1.) * s(t * w) - w * (E(2. * r * t) - 1.) * c(t * w)));
  cplx all[] = {m11, m12, m13, m14, m22, m23};
  double scale = 0, im = 0;
  for (auto x : all) scale = std::max(scale, std::abs(x)), im = std::max(im, std::abs(x.imag()));
  if (im > 1e-10 * scale)
    throw Error(ErrorKind::DegenerateBvp, "closed-form action matrix has a large imaginary residue");
  ActionMatrix m;
  m.m11 = m11.real();
  m.m12 = m12.real();
  m.m13 = m13.real();
  m.m14 = m14.real();
  m.m22 = m22.real();
  m.m23 = m23.real();
  m.tau = tau;
  return m;
}

ActionMatrix action_matrix_fundamental(const ModelParams& p, double tau) {
  check_tau(tau);
  // y = (x(0), x'(0), x'(tau), x(tau)) -> coefficients, then -2S = B(tau) - B(0)
  // with B = gamma x'' x' - gamma x''' x + alpha x' x.
  ClassicalSolution unit(p, tau, {0, 0, 0, 0});
  auto b0 = unit.basis(0), bt = unit.basis(tau);
  Eigen::Matrix4d A;
  for (int k = 0; k < 4; ++k) {
    A(0, k) = b0[k][0];
    A(1, k) = b0[k][1];
    A(2, k) = bt[k][1];
    A(3, k) = bt[k][0];
  }
  auto bilinear = [&](const std::array<std::array<double, 4>, 4>& b) {
    Eigen::Matrix4d K;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        K(i, j) = p.gamma() * b[i][2] * b[j][1] - p.gamma() * b[i][3] * b[j][0] + p.alpha() * b[i][1] * b[j][0];
    return K;
  };
  Eigen::Matrix4d K = bilinear(bt) - bilinear(b0);
  K = 0.5 * (K + K.transpose()).eval();
  auto lu = A.fullPivLu();
  if (!lu.isInvertible()) throw Error(ErrorKind::DegenerateBvp, "endpoint system is singular");
  Eigen::Matrix4d Ainv = lu.inverse();
  Eigen::Matrix4d M = Ainv.transpose() * K * Ainv;
  auto out = ActionMatrix::from_full(0.5 * (M + M.transpose()), tau);
  out.near_critical = near_critical(p);
  return out;
}

ActionMatrix action_matrix(const ModelParams& p, double tau) {
  if (near_critical(p)) return action_matrix_fundamental(p, tau);
  return action_matrix_closed_form(p, tau);
}

ActionMatrix infinite_tau_matrix(const ModelParams& p) {
  auto rw = p.rw();
  if (!(rw.r > 0)) throw Error(ErrorKind::InvalidArgument, "infinite-tau limit needs r > 0");
  double a = p.gamma(), b = p.alpha() / 2, r = rw.r;
  ActionMatrix m;
  m.m11 = 2 * r * a * (r * r + rw.omega_sq);
  m.m22 = 2 * r * a;
  m.m12 = 2 * r * r * a - b;
  m.tau = std::numeric_limits<double>::infinity();
  return m;
}

double ClassicalSolution::action() const {
  // on shell, -2S = B(tau) - B(0) with B = gamma x2 x1 - gamma x3 x + alpha x1 x
  auto B = [&](double t) {
    double x = derivative(t, 0), x1 = derivative(t, 1), x2 = derivative(t, 2), x3 = derivative(t, 3);
    return gamma_ * x2 * x1 - gamma_ * x3 * x + alpha_ * x1 * x;
  };
  return -0.5 * (B(tau_) - B(0));
}

double classical_action(const ClassicalSolution& s) { return s.action(); }

GaussianForm kernel_from_action(const Eigen::Matrix4d& m) {
  // action-matrix order (x_f, v_f, v_i, x_i) -> kernel order (x_f, v_f, x_i, v_i)
  const int P[4] = {0, 1, 3, 2};
  Eigen::Matrix4d q;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q(i, j) = m(P[i], P[j]);
  double det = q.block<2, 2>(0, 2).determinant();
  if (!(det > 0)) throw Error(ErrorKind::DegenerateBvp, "cross block determinant is not positive");
  double norm = std::sqrt(det) / (2 * std::numbers::pi);
  return {norm, q.cast<cplx>()};
}

GaussianForm kernel_closed_form(const ModelParams& p, double tau) {
  return kernel_from_action(action_matrix(p, tau).full());
}

}  // namespace accel
