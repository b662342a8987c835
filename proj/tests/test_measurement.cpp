// test_measurement.cpp — correlating unitaries, the coupling propagator, rotated bases.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pointer_sim/measurement.hpp"

#include <cmath>
#include <random>

using namespace psim;

namespace {

std::mt19937 rng(2718);

Complex random_phase() {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  return std::exp(Complex(0, u(rng)));
}

std::pair<Complex, Complex> random_pair_amplitudes() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double p = u(rng);
  return {std::sqrt(p) * random_phase(), std::sqrt(1.0 - p) * random_phase()};
}

DeltaParams random_delta_params() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  DeltaParams p;
  p.delta22 = u(rng) * random_phase();
  p.phi24 = angle(rng);
  p.phi32 = angle(rng);
  return p;
}

// The fixed correlating permutation |-+> <-> |-->.
Matrix z_tau_permutation() {
  Matrix u = Matrix::Identity(4, 4);
  u(2, 2) = 0.0;
  u(3, 3) = 0.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

}  // namespace

TEST_CASE("spin labels follow the pair basis order") {
  CHECK(spin_s(0) == +1);
  CHECK(spin_s(1) == +1);
  CHECK(spin_s(2) == -1);
  CHECK(spin_s(3) == -1);
  CHECK(spin_a(0) == +1);
  CHECK(spin_a(1) == -1);
  CHECK(spin_a(2) == +1);
  CHECK(spin_a(3) == -1);
}

TEST_CASE("build_delta at delta22=1, phi24=pi is the correlating permutation") {
  Matrix m = build_delta({Complex(1.0), M_PI, 0.0});
  CHECK(max_abs(m - z_tau_permutation()) < 1e-15);
}

TEST_CASE("build_delta is unitary across the parameter family") {
  for (int trial = 0; trial < 100; ++trial) {
    Matrix m = build_delta(random_delta_params());
    CHECK(max_abs(m * m.adjoint() - identity(4)) < 1e-12);
  }
  // Edge cases of the modulus.
  Matrix zero_mod = build_delta({Complex(0.0), 1.0, 2.0});
  CHECK(max_abs(zero_mod * zero_mod.adjoint() - identity(4)) < 1e-13);
  Matrix unit_mod = build_delta({random_phase(), 1.0, 2.0});
  CHECK(max_abs(unit_mod * unit_mod.adjoint() - identity(4)) < 1e-13);
}

TEST_CASE("build_delta correlates every pre-measurement state") {
  for (int trial = 0; trial < 100; ++trial) {
    auto [a, b] = random_pair_amplitudes();
    Matrix m = build_delta(random_delta_params());
    Vector in(4), expect(4);
    in << a, 0.0, b, 0.0;
    expect << a, 0.0, 0.0, b;
    CHECK(max_abs(Matrix(m * in - expect)) < 1e-10);
  }
}

TEST_CASE("build_delta rejects out-of-range parameters") {
  CHECK_THROWS_AS(build_delta({Complex(1.1), 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_delta({Complex(0.5), std::nan(""), 0.0}), std::invalid_argument);
}

TEST_CASE("build_h_sa matches the explicit lower-block matrix") {
  double g = 1.7;
  Matrix expect = Matrix::Zero(4, 4);
  expect(2, 2) = g / 2.0;
  expect(2, 3) = -g / 2.0;
  expect(3, 2) = -g / 2.0;
  expect(3, 3) = g / 2.0;
  CHECK(max_abs(build_h_sa(g) - expect) < 1e-15);
  CHECK_THROWS_AS(build_h_sa(0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_h_sa(-1.0), std::invalid_argument);
}

TEST_CASE("build_h_sa spectrum is {0,0,0,g} with the antisymmetric eigenvector") {
  double g = 0.9;
  Eigen::SelfAdjointEigenSolver<Matrix> es(build_h_sa(g));
  CHECK(std::abs(es.eigenvalues()(0)) < 1e-14);
  CHECK(std::abs(es.eigenvalues()(1)) < 1e-14);
  CHECK(std::abs(es.eigenvalues()(2)) < 1e-14);
  CHECK(std::abs(es.eigenvalues()(3) - g) < 1e-14);
  Vector top = es.eigenvectors().col(3);
  // (|-+> - |-->)/sqrt(2) up to phase
  CHECK(std::abs(std::abs(top(2)) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(top(2) + top(3)) < 1e-12);
  CHECK(std::abs(top(0)) < 1e-12);
  CHECK(std::abs(top(1)) < 1e-12);
}

TEST_CASE("premeasurement_unitary agrees with the exponential of the coupling") {
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    double g = u(rng), t = u(rng);
    Matrix direct = premeasurement_unitary(g, t);
    Matrix viaExp = expm_hermitian(build_h_sa(g), Complex(0, -t));
    CHECK(max_abs(direct - viaExp) < 1e-13);
    CHECK(max_abs(direct * direct.adjoint() - identity(4)) < 1e-14);
  }
}

TEST_CASE("premeasurement_unitary at tau_pm is the correlating permutation") {
  double g = 0.35;
  Matrix u = premeasurement_unitary(g, tau_pm(g, 1));
  CHECK(max_abs(u - z_tau_permutation()) < 1e-12);
  Matrix u3 = premeasurement_unitary(g, tau_pm(g, 3));
  CHECK(max_abs(u3 - z_tau_permutation()) < 1e-12);
}

TEST_CASE("premeasurement_unitary is periodic with period 2 pi / g") {
  double g = 1.3, t = 0.77;
  Matrix a = premeasurement_unitary(g, t);
  Matrix b = premeasurement_unitary(g, t + 2.0 * M_PI / g);
  CHECK(max_abs(a - b) < 1e-12);
}

TEST_CASE("tau_pm validates its arguments") {
  CHECK(tau_pm(2.0, 1) == doctest::Approx(M_PI / 2.0));
  CHECK(tau_pm(1.0, 5) == doctest::Approx(5.0 * M_PI));
  CHECK_THROWS_AS(tau_pm(0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(tau_pm(1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(tau_pm(1.0, -1), std::invalid_argument);
}

TEST_CASE("premeasure correlates a 0.6, 0.8i superposition") {
  JointState out = premeasure(Complex(0.6), Complex(0.0, 0.8), {});
  CHECK(std::abs(out.amplitudes(0) - Complex(0.6)) < 1e-12);
  CHECK(std::abs(out.amplitudes(1)) < 1e-12);
  CHECK(std::abs(out.amplitudes(2)) < 1e-12);
  CHECK(std::abs(out.amplitudes(3) - Complex(0.0, 0.8)) < 1e-12);
}

TEST_CASE("premeasure leaves a pointer-up system untouched") {
  JointState out = premeasure(Complex(1.0), Complex(0.0), {});
  CHECK(std::abs(out.amplitudes(0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(out.amplitudes(1)) + std::abs(out.amplitudes(2)) +
            std::abs(out.amplitudes(3)) < 1e-15);
}

TEST_CASE("premeasure kills the cross branches for random inputs") {
  for (int trial = 0; trial < 50; ++trial) {
    auto [a, b] = random_pair_amplitudes();
    JointState out = premeasure(a, b, {0.5 + trial * 0.01, 1});
    CHECK(std::abs(out.amplitudes(0) - a) < 1e-10);
    CHECK(std::abs(out.amplitudes(1)) < 1e-12);
    CHECK(std::abs(out.amplitudes(2)) < 1e-12);
    CHECK(std::abs(out.amplitudes(3) - b) < 1e-10);
  }
  CHECK_THROWS_AS(premeasure(Complex(1.0), Complex(1.0), {}), std::invalid_argument);
}

TEST_CASE("free_evolve rotates a balanced superposition onto the y axis") {
  double omega0 = 0.8;
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto [p, m] = free_evolve(inv_sqrt2, inv_sqrt2, M_PI / (2.0 * omega0), omega0);
  CHECK(std::abs(p - Complex(0.0, -inv_sqrt2)) < 1e-14);
  CHECK(std::abs(m - Complex(0.0, inv_sqrt2)) < 1e-14);
}

TEST_CASE("free_evolve preserves moduli and does nothing at dt=0") {
  auto [a, b] = random_pair_amplitudes();
  auto [p, m] = free_evolve(a, b, 2.9, 1.4);
  CHECK(std::abs(std::abs(p) - std::abs(a)) < 1e-14);
  CHECK(std::abs(std::abs(m) - std::abs(b)) < 1e-14);
  auto [p0, m0] = free_evolve(a, b, 0.0, 1.4);
  CHECK(p0 == a);
  CHECK(m0 == b);
  CHECK_THROWS_AS(free_evolve(Complex(0.9), Complex(0.9), 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("xy_eigenbasis solves the eigenvalue equation on every branch") {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    XYBasisParams p{u(rng), u(rng)};
    if (std::hypot(p.x, p.y) < 1e-3) continue;
    Matrix o2 = p.x * pauli_x() + p.y * pauli_y();
    double r = std::hypot(p.x, p.y);
    auto [plus, minus] = xy_eigenbasis(p);
    CHECK((o2 * plus - r * plus).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((o2 * minus + r * minus).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(plus.norm() - 1.0) < 1e-14);
    CHECK(std::abs(plus.dot(minus)) < 1e-14);
  }
}

TEST_CASE("xy_eigenbasis covers the x, y, and negative-x directions") {
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto [xp, xm] = xy_eigenbasis({1.0, 0.0});
  CHECK(std::abs(xp(0) - inv_sqrt2) < 1e-15);
  CHECK(std::abs(xp(1) - inv_sqrt2) < 1e-15);
  CHECK(std::abs(xm(1) + inv_sqrt2) < 1e-15);

  // sigma_y eigenvectors up to global phase: compare projectors.
  auto [yp, ym] = xy_eigenbasis({0.0, 1.0});
  Eigen::Matrix2cd proj_plus;
  proj_plus << 0.5, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.5;
  CHECK((yp * yp.adjoint() - proj_plus).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((ym * ym.adjoint() - (Eigen::Matrix2cd::Identity() - proj_plus)).cwiseAbs().maxCoeff() <
        1e-14);

  auto [np, nm] = xy_eigenbasis({-1.0, 0.0});
  Matrix ox = -pauli_x();
  CHECK((ox * np - np).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((ox * nm + nm).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(xy_eigenbasis({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("xy_product_basis is unitary") {
  Matrix basis = xy_product_basis({0.3, -1.2});
  CHECK(max_abs(basis * basis.adjoint() - identity(4)) < 1e-13);
}

TEST_CASE("express_in_xy matches the closed-form coefficient pattern") {
  // For psi = a|++> + b|--> and r = (x+iy)/(x-iy) = e^{2 i theta}:
  // c0 = c3 = (a r + b)/2 and c1 = c2 = (a r - b)/2.
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto [a, b] = random_pair_amplitudes();
    XYBasisParams p{u(rng), u(rng)};
    if (std::hypot(p.x, p.y) < 1e-3) continue;
    Vector amps(4);
    amps << a, 0.0, 0.0, b;
    JointState psi({2, 2}, amps);
    Eigen::Vector4cd c = express_in_xy(psi, p);
    CHECK((xy_product_basis(p) * c - amps).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(c.norm() - 1.0) < 1e-13);
    Complex r = Complex(p.x, p.y) / Complex(p.x, -p.y);
    Complex c03 = 0.5 * (a * r + b);
    Complex c12 = 0.5 * (a * r - b);
    CHECK(std::abs(c(0) - c03) < 1e-13);
    CHECK(std::abs(c(3) - c03) < 1e-13);
    CHECK(std::abs(c(1) - c12) < 1e-13);
    CHECK(std::abs(c(2) - c12) < 1e-13);
  }
}

TEST_CASE("express_in_xy cross terms vanish exactly when b = a (x+iy)/(x-iy)") {
  XYBasisParams p{0.8, 0.6};
  Complex ratio = Complex(p.x, p.y) / Complex(p.x, -p.y);
  Complex a = Complex(1.0) / std::sqrt(2.0);
  Complex b = a * ratio;
  Vector amps(4);
  amps << a, 0.0, 0.0, b;
  Eigen::Vector4cd c = express_in_xy(JointState({2, 2}, amps), p);
  CHECK(std::abs(c(1)) < 1e-14);
  CHECK(std::abs(c(2)) < 1e-14);
  CHECK(std::abs(std::abs(c(0)) - 1.0 / std::sqrt(2.0)) < 1e-13);
  CHECK(std::abs(std::abs(c(3)) - 1.0 / std::sqrt(2.0)) < 1e-13);

  // Generic b leaves weight in the cross branches.
  Vector generic(4);
  generic << Complex(0.6), 0.0, 0.0, Complex(0.8);
  Eigen::Vector4cd cg = express_in_xy(JointState({2, 2}, generic), p);
  CHECK(std::abs(cg(1)) + std::abs(cg(2)) > 1e-3);
}
