#include <doctest.h>

#include "accel/similarity.hpp"

using namespace accel;

namespace {

ModelParams demo() { return ModelParams::from_frequencies(1, FrequencyPair::real(2, 1)); }

}  // namespace

TEST_CASE("similarity mapping of x, v and derivatives") {
  auto qp = demo().q();
  for (double tau : {0.1, 0.3})
    for (QOp op : {QOp::X, QOp::DX, QOp::V, QOp::DV}) {
      CAPTURE(tau);
      CAPTURE(to_string(op));
      CHECK(similarity_residual(qp, op, tau) < 1e-8);
    }
}

TEST_CASE("identity at tau = 0") {
  auto qp = demo().q();
  for (QOp op : {QOp::X, QOp::DX, QOp::V, QOp::DV}) CHECK(similarity_residual(qp, op, 0) < 1e-13);
}

TEST_CASE("wrong mapping is detected") {
  // kernel unchanged (same sqrt(ab) and C), but the sinh weights sqrt(b/a), sqrt(a/b) are off
  auto qp = demo().q();
  auto bad = qp;
  bad.a *= 1.5;
  bad.b /= 1.5;  // same sqrt(ab), wrong ratio
  CHECK(similarity_residual(bad, QOp::X, 0.3) > 1e-4);
}

TEST_CASE("double commutator") {
  CHECK(double_commutator_residual(demo().q()) < 1e-13);
  auto other = ModelParams::from_frequencies(2.5, FrequencyPair::real(3, 0.7)).q();
  CHECK(double_commutator_residual(other) < 1e-12);
}
