#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "accel/params.hpp"

namespace accel {

// norm * exp(-1/2 z^T M z) with M complex symmetric; no linear terms.
class GaussianForm {
 public:
  GaussianForm(cplx norm, const Eigen::MatrixXcd& quad);

  int n() const { return static_cast<int>(quad_.rows()); }
  cplx norm() const { return norm_; }
  const Eigen::MatrixXcd& quad() const { return quad_; }

  // New variable k is old variable perm[k].
  GaussianForm permuted(const std::vector<int>& perm) const;
  // Flip the sign of the listed variables (z_k -> -z_k).
  GaussianForm reflected(const std::vector<int>& vars) const;
  GaussianForm scaled(cplx factor) const;

  // Largest |imaginary part| of norm and quad relative to their magnitudes.
  double imag_residue() const;

 private:
  cplx norm_;
  Eigen::MatrixXcd quad_;
};

cplx evaluate(const GaussianForm& g, const Eigen::VectorXcd& z);
cplx evaluate(const GaussianForm& g, const Eigen::VectorXd& z);

// Which variables of each factor are integrated against each other: left_mid[k]
// of g1 is identified with right_mid[k] of g2.  The result's variables are the
// remaining variables of g1 (in order) followed by those of g2.
struct VariableSplit {
  std::vector<int> left_mid;
  std::vector<int> right_mid;

  // Last k variables of an n1-variable g1 against the first k of g2.
  static VariableSplit chain(int n1, int k);
};

enum class Elimination { Block, Sequential };

struct Composition {
  GaussianForm form;
  cplx mid_det;  // det of the integrated block
};

// Pointwise product over a shared variable list.
GaussianForm product(const GaussianForm& g1, const GaussianForm& g2);

// Integrate the listed variables over R^m.  The determinant factor uses the
// principal branch of lambda^{-1/2} for each eigenvalue of the block; this is
// the continuation along (1-t) I + t M with negative reals taken from above.
Composition integrate_out(const GaussianForm& g, const std::vector<int>& vars,
                          Elimination how = Elimination::Block);

Composition compose_detailed(const GaussianForm& g1, const GaussianForm& g2,
                             const VariableSplit& split, Elimination how = Elimination::Block);
GaussianForm compose(const GaussianForm& g1, const GaussianForm& g2, const VariableSplit& split);

// Integral over all variables.
cplx total_integral(const GaussianForm& g);

// <z z^T> = M^{-1}; requires Re(M) positive definite.
Eigen::MatrixXcd second_moments(const GaussianForm& g);

// prod_j lambda_j^{-1/2} (principal branch per eigenvalue).
cplx det_inv_sqrt(const Eigen::MatrixXcd& m, cplx* det = nullptr);

}  // namespace accel
