#pragma once

#include "accel/params.hpp"

namespace accel {

enum class QOp { X, DX, V, DV };
const char* to_string(QOp op);

// Weak check of e^{-tau Q} op e^{tau Q} = cosh(tau sqrt(ab)) op + k sinh(tau sqrt(ab)) op'
//   X -> X, DV with k = sqrt(b/a);  DX -> DX, V with k = sqrt(a/b)
//   V -> V, DX with k = sqrt(b/a);  DV -> DV, X with k = sqrt(a/b)
// over a battery of Gaussian test pairs; returns the worst relative residual.
double similarity_residual(const QParams& qp, QOp op, double tau);

// Exact polynomial-times-Gaussian check of [[x,Q],Q] = ab x; relative residual.
double double_commutator_residual(const QParams& qp);

}  // namespace accel
