#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "accel/errors.hpp"
#include "accel/gaussian.hpp"

using namespace accel;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kPi = std::numbers::pi;

// Random complex symmetric n x n with Re part comfortably positive definite.
MatrixXcd random_form(std::mt19937_64& rng, int n, double imag = 0.3) {
  std::normal_distribution<double> nd;
  MatrixXd a(n, n), b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = nd(rng), b(i, j) = nd(rng);
  MatrixXd re = a * a.transpose() / n + MatrixXd::Identity(n, n);
  MatrixXd im = imag * (b + b.transpose()) / 2;
  return re.cast<cplx>() + cplx(0, 1) * im.cast<cplx>();
}

double rel(const MatrixXcd& a, const MatrixXcd& b) { return (a - b).norm() / b.norm(); }
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("evaluate: trivial forms") {
  GaussianForm zero(1.0, MatrixXcd::Zero(2, 2));
  CHECK(std::abs(evaluate(zero, VectorXd{{0.3, -7.0}}) - 1.0) < 1e-16);
  GaussianForm id(1.0, MatrixXcd::Identity(2, 2));
  CHECK(std::abs(evaluate(id, VectorXd{{1.0, 1.0}}) - std::exp(-1.0)) < 1e-16);
  CHECK_THROWS_AS(evaluate(id, VectorXd{{1.0, 1.0, 1.0}}), Error);
}

TEST_CASE("construction symmetrizes the quadratic form") {
  MatrixXcd m(2, 2);
  m << 2.0, 1.0, 0.0, 3.0;
  GaussianForm g(1.0, m);
  CHECK(g.quad()(0, 1) == g.quad()(1, 0));
  CHECK(std::abs(g.quad()(0, 1) - 0.5) < 1e-16);
}

TEST_CASE("integrating out one variable matches the textbook formula") {
  double a = 3.0, b = 0.7, c = 2.0;
  MatrixXcd m(2, 2);
  m << a, b, b, c;
  auto r = integrate_out(GaussianForm(1.0, m), {1});
  CHECK(r.form.n() == 1);
  CHECK(rel(r.form.norm(), std::sqrt(2 * kPi / c)) < 1e-15);
  CHECK(rel(r.form.quad()(0, 0), a - b * b / c) < 1e-15);
}

TEST_CASE("compose of decoupled one-variable forms factorizes") {
  MatrixXcd one(1, 1);
  one << 1.0;
  GaussianForm g(1.0, one);
  MatrixXcd two(2, 2);
  two << 1.0, 0.0, 0.0, 1.0;
  GaussianForm k(1.0, two);  // coupling 0 between x and x'
  auto out = compose(k, g, VariableSplit::chain(2, 1));
  CHECK(out.n() == 1);
  CHECK(rel(out.norm(), std::sqrt(2 * kPi / 2.0)) < 1e-15);
  CHECK(std::abs(out.quad()(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("compose matches brute-force integration for a complex form") {
  // g1(x, y) g2(y, z), integrate y on a fine grid
  MatrixXcd m1(2, 2), m2(2, 2);
  m1 << cplx(1.2, 0.3), cplx(0.4, -0.2), cplx(0.4, -0.2), cplx(0.9, 0.5);
  m2 << cplx(1.1, -0.4), cplx(-0.3, 0.1), cplx(-0.3, 0.1), cplx(0.8, 0.2);
  GaussianForm g1(cplx(0.7, 0.1), m1), g2(cplx(1.3, -0.2), m2);
  auto c = compose(g1, g2, VariableSplit::chain(2, 1));
  double x = 0.4, z = -0.9;
  cplx sum = 0;
  double h = 1e-3;
  for (double y = -15; y <= 15; y += h)
    sum += evaluate(g1, VectorXd{{x, y}}) * evaluate(g2, VectorXd{{y, z}});
  sum *= h;
  CHECK(rel(evaluate(c, VectorXd{{x, z}}), sum) < 1e-10);
}

TEST_CASE("compose is associative") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    GaussianForm a(1.0, random_form(rng, 4)), b(cplx(0.5, 0.2), random_form(rng, 4)),
        c(2.0, random_form(rng, 4));
    auto s = VariableSplit::chain(4, 2);
    auto left = compose(compose(a, b, s), c, s);
    auto right = compose(a, compose(b, c, s), s);
    CHECK(rel(left.quad(), right.quad()) < 1e-11);
    CHECK(rel(left.norm(), right.norm()) < 1e-11);
  }
}

TEST_CASE("block and sequential elimination agree") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    GaussianForm g(cplx(0.3, -1.0), random_form(rng, 4, 0.8));
    auto blk = integrate_out(g, {1, 3}, Elimination::Block);
    auto seq = integrate_out(g, {1, 3}, Elimination::Sequential);
    CHECK(rel(blk.form.quad(), seq.form.quad()) < 1e-11);
    CHECK(rel(blk.form.norm(), seq.form.norm()) < 1e-11);
  }
}

TEST_CASE("real positive definite forms compose to a positive norm") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    GaussianForm a(1.0, random_form(rng, 4, 0.0)), b(2.0, random_form(rng, 4, 0.0));
    auto c = compose(a, b, VariableSplit::chain(4, 2));
    CHECK(c.norm().real() > 0);
    CHECK(std::abs(c.norm().imag()) < 1e-15 * c.norm().real());
  }
}

TEST_CASE("branch rule on indefinite blocks") {
  // block with eigenvalues (2, -1): principal (-1)^{-1/2} = -i
  MatrixXcd m(2, 2);
  m << 2.0, 0.0, 0.0, -1.0;
  cplx det;
  cplx f = det_inv_sqrt(m, &det);
  CHECK(std::abs(det - cplx(-2.0)) < 1e-15);
  CHECK(std::abs(f - cplx(0, -1) / std::sqrt(2.0)) < 1e-15);
  // purely off-diagonal block [[0,g],[g,0]]: eigenvalues +-g
  MatrixXcd off(2, 2);
  off << 0.0, 3.0, 3.0, 0.0;
  CHECK(std::abs(det_inv_sqrt(off) - cplx(0, -1) / 3.0) < 1e-15);
}

TEST_CASE("singular mid block is reported") {
  MatrixXcd m = MatrixXcd::Identity(3, 3);
  m(1, 1) = 0.0;
  try {
    integrate_out(GaussianForm(1.0, m), {1});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMidBlock);
  }
}

TEST_CASE("second moments") {
  MatrixXcd d = 2.0 * MatrixXcd::Identity(2, 2);
  auto mom = second_moments(GaussianForm(1.0, d));
  CHECK(std::abs(mom(0, 0) - 0.5) < 1e-16);
  CHECK(std::abs(mom(0, 1)) < 1e-16);

  std::mt19937_64 rng(4);
  auto g = GaussianForm(1.0, random_form(rng, 4));
  auto s = second_moments(g);
  CHECK((s - s.transpose()).norm() < 1e-14 * s.norm());
  CHECK((s * g.quad() - MatrixXcd::Identity(4, 4)).norm() < 1e-13);

  MatrixXcd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // indefinite
  try {
    second_moments(GaussianForm(1.0, bad));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormalizable);
  }
}

TEST_CASE("total integral of a normalized Gaussian is one") {
  MatrixXcd m(2, 2);
  m << 2.0, 0.5, 0.5, 1.0;
  double det = 2.0 - 0.25;
  GaussianForm g(std::sqrt(det) / (2 * kPi), m);
  CHECK(std::abs(total_integral(g) - 1.0) < 1e-15);
}

TEST_CASE("permutation and reflection") {
  MatrixXcd m(3, 3);
  m << 1, 0.1, 0.2, 0.1, 2, 0.3, 0.2, 0.3, 3;
  GaussianForm g(1.0, m);
  auto p = g.permuted({2, 0, 1});
  VectorXd z{{0.3, -0.4, 0.5}};
  VectorXd zp{{0.5, 0.3, -0.4}};
  CHECK(std::abs(evaluate(g, z) - evaluate(p, zp)) < 1e-16);
  auto r = g.reflected({1});
  VectorXd zr{{0.3, 0.4, 0.5}};
  CHECK(std::abs(evaluate(g, z) - evaluate(r, zr)) < 1e-16);
}
