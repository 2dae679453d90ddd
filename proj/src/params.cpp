#include "accel/params.hpp"

#include <cmath>
#include <numbers>

#include "accel/errors.hpp"

namespace accel {

Couplings::Couplings(double gamma, double alpha, double beta)
    : gamma_(gamma), alpha_(alpha), beta_(beta) {
  if (!(gamma > 0 && alpha > 0 && beta > 0) || !std::isfinite(gamma) || !std::isfinite(alpha) ||
      !std::isfinite(beta))
    throw Error(ErrorKind::InvalidArgument, "couplings must be finite and positive");
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::Real: return "Real";
    case Branch::Complex: return "Complex";
    case Branch::Critical: return "Critical";
  }
  return "?";
}

FrequencyPair FrequencyPair::real(double omega1, double omega2) {
  if (!(omega2 > 0) || !(omega1 >= omega2) || !std::isfinite(omega1))
    throw Error(ErrorKind::InvalidArgument, "real frequencies need omega1 >= omega2 > 0");
  FrequencyPair f;
  f.real_ = true;
  f.w1_ = omega1;
  f.w2_ = omega2;
  f.R_ = std::sqrt(omega1 * omega2);
  f.phi_ = 0;
  return f;
}

FrequencyPair FrequencyPair::polar(double R, double phi) {
  if (!(R > 0) || !std::isfinite(R) || !(std::abs(phi) < std::numbers::pi))
    throw Error(ErrorKind::InvalidArgument, "polar frequencies need R > 0 and |phi| < pi");
  if (phi == 0) return real(R, R);
  FrequencyPair f;
  f.real_ = false;
  f.R_ = R;
  f.phi_ = phi;
  return f;
}

cplx FrequencyPair::omega1() const { return real_ ? cplx(w1_, 0) : std::polar(R_, phi_); }
cplx FrequencyPair::omega2() const { return real_ ? cplx(w2_, 0) : std::polar(R_, -phi_); }

Branch FrequencyPair::branch() const {
  if (!real_) return Branch::Complex;
  return w1_ > w2_ ? Branch::Real : Branch::Critical;
}

double FrequencyPair::sum() const { return real_ ? w1_ + w2_ : 2 * R_ * std::cos(phi_); }
double FrequencyPair::product() const { return real_ ? w1_ * w2_ : R_ * R_; }
double FrequencyPair::sum_squares() const {
  return real_ ? w1_ * w1_ + w2_ * w2_ : 2 * R_ * R_ * std::cos(2 * phi_);
}
double FrequencyPair::half_diff_sq() const {
  if (real_) {
    double h = 0.5 * (w1_ - w2_);
    return h * h;
  }
  double s = R_ * std::sin(phi_);
  return -s * s;
}

Branch classify_branch(const Couplings& c, double tol) {
  double crit = 2 * std::sqrt(c.beta() * c.gamma());
  if (c.alpha() > crit * (1 + tol)) return Branch::Real;
  if (c.alpha() < crit * (1 - tol)) return Branch::Complex;
  return Branch::Critical;
}

FrequencyPair frequencies_from_couplings(const Couplings& c, double tol) {
  double g = c.gamma(), al = c.alpha(), be = c.beta();
  double s = std::sqrt(g * be);
  double prod = std::sqrt(be / g);  // omega1 omega2
  switch (classify_branch(c, tol)) {
    case Branch::Real: {
      double w1 = 0.5 * (std::sqrt(al + 2 * s) + std::sqrt(al - 2 * s)) / std::sqrt(g);
      return FrequencyPair::real(w1, prod / w1);
    }
    case Branch::Critical: {
      double w = std::sqrt(prod);
      return FrequencyPair::real(w, w);
    }
    case Branch::Complex:
      break;
  }
  // 2 R^2 cos(2 phi) = alpha/gamma with R^2 = sqrt(beta/gamma)
  double phi = 0.5 * std::acos(al / (2 * s));
  return FrequencyPair::polar(std::sqrt(prod), phi);
}

Couplings couplings_from_frequencies(double gamma, const FrequencyPair& f) {
  double p = f.product();
  return {gamma, gamma * f.sum_squares(), gamma * p * p};
}

QParams q_parameters(double gamma, const FrequencyPair& f) {
  if (!f.is_real())
    throw Error(ErrorKind::ComplexBranch, "Q parameters need real frequencies");
  double w1 = f.omega1().real(), w2 = f.omega2().real();
  if (!(w1 > w2)) throw Error(ErrorKind::CriticalFrequency, "omega1 == omega2: ln((w1+w2)/(w1-w2)) diverges");
  QParams q;
  q.sqrt_ab = std::log((w1 + w2) / (w1 - w2));
  q.C = gamma * w1 * w2;
  q.a = q.C * q.sqrt_ab;
  q.b = q.sqrt_ab / q.C;
  double d = std::sqrt((w1 - w2) * (w1 + w2));
  q.A = w1 / d;
  q.B = w2 / d;
  return q;
}

H0Coefficients h0_coefficients(double gamma, const FrequencyPair& f) {
  auto q = q_parameters(gamma, f);
  double w1 = f.omega1().real(), w2 = f.omega2().real();
  double A = q.A, B = q.B, C = q.C, g = gamma;
  double p2 = w1 * w1 * w2 * w2, s2 = w1 * w1 + w2 * w2;
  H0Coefficients h;
  h.c1 = -A * A / (2 * g) + 0.5 * g * (B / C) * (B / C) * p2;
  h.c2 = -C * A * B / g + g * p2 * (A * B / C);
  h.c3 = -(A * A + B * B) + g * s2 * (A * B / C);
  h.c4 = -A * B / C + 0.5 * g * s2 * (B / C) * (B / C);
  h.c5 = -B * B * C * C / (2 * g) + 0.5 * g * p2 * A * A;
  h.c6 = -A * B * C + 0.5 * g * s2 * A * A;
  return h;
}

RwParams rw_parameters(double, const FrequencyPair& f) {
  RwParams p;
  p.r = 0.5 * f.sum();
  if (f.is_real())
    p.omega = cplx(0, -0.5 * (f.omega1().real() - f.omega2().real()));
  else
    p.omega = cplx(f.R() * std::sin(f.phi()), 0);
  p.omega_sq = -f.half_diff_sq();
  return p;
}

ModelParams ModelParams::from_couplings(const Couplings& c, double tol) {
  auto f = frequencies_from_couplings(c, tol);
  return {c.gamma(), c.alpha(), c.beta(), f, classify_branch(c, tol)};
}

ModelParams ModelParams::from_frequencies(double gamma, const FrequencyPair& f) {
  if (!(gamma > 0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  double p = f.product();
  return {gamma, gamma * f.sum_squares(), gamma * p * p, f, f.branch()};
}

}  // namespace accel
