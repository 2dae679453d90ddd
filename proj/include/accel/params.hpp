#pragma once

#include <complex>

namespace accel {

using cplx = std::complex<double>;

// Relative half-width of the band around alpha = 2 sqrt(beta gamma) that is
// treated as the equal-frequency (critical) line.
inline constexpr double kCriticalTol = 1e-10;

class Couplings {
 public:
  Couplings(double gamma, double alpha, double beta);

  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  double gamma_, alpha_, beta_;
};

enum class Branch { Real, Complex, Critical };
const char* to_string(Branch b);

// (omega1, omega2): either a real ordered pair omega1 >= omega2 > 0, or the
// conjugate pair R e^{+-i phi}.  Symmetric functions are kept real.
class FrequencyPair {
 public:
  static FrequencyPair real(double omega1, double omega2);
  static FrequencyPair polar(double R, double phi);

  cplx omega1() const;
  cplx omega2() const;
  bool is_real() const { return real_; }
  Branch branch() const;

  double sum() const;         // omega1 + omega2
  double product() const;     // omega1 omega2
  double sum_squares() const; // omega1^2 + omega2^2
  double half_diff_sq() const;  // ((omega1 - omega2)/2)^2, negative when complex

  double R() const { return R_; }
  double phi() const { return phi_; }

 private:
  FrequencyPair() = default;
  bool real_ = true;
  double w1_ = 0, w2_ = 0, R_ = 0, phi_ = 0;
};

struct QParams {
  double a, b;
  double sqrt_ab;  // ln((w1+w2)/(w1-w2)), kept to avoid sqrt(a*b) roundoff
  double A, B, C;  // cosh, sinh of sqrt_ab/2 and sqrt(a/b)
};

struct RwParams {
  double r;         // (w1+w2)/2
  cplx omega;       // (w1-w2)/(2i)
  double omega_sq;  // omega^2, real on every branch
};

struct H0Coefficients {
  double c1, c2, c3, c4, c5, c6;
};

FrequencyPair frequencies_from_couplings(const Couplings& c, double tol = kCriticalTol);
Couplings couplings_from_frequencies(double gamma, const FrequencyPair& f);
Branch classify_branch(const Couplings& c, double tol = kCriticalTol);
QParams q_parameters(double gamma, const FrequencyPair& f);
H0Coefficients h0_coefficients(double gamma, const FrequencyPair& f);
RwParams rw_parameters(double gamma, const FrequencyPair& f);

// Everything downstream needs: couplings, frequencies and branch together.
class ModelParams {
 public:
  static ModelParams from_couplings(const Couplings& c, double tol = kCriticalTol);
  static ModelParams from_frequencies(double gamma, const FrequencyPair& f);

  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const FrequencyPair& frequencies() const { return freq_; }
  Branch branch() const { return branch_; }

  bool has_q() const { return branch_ == Branch::Real; }
  QParams q() const { return q_parameters(gamma_, freq_); }
  RwParams rw() const { return rw_parameters(gamma_, freq_); }
  H0Coefficients h0() const { return h0_coefficients(gamma_, freq_); }

  double e00() const { return 0.5 * freq_.sum(); }

 private:
  ModelParams(double g, double a, double b, FrequencyPair f, Branch br)
      : gamma_(g), alpha_(a), beta_(b), freq_(f), branch_(br) {}
  double gamma_, alpha_, beta_;
  FrequencyPair freq_;
  Branch branch_;
};

}  // namespace accel
