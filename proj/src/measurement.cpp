#include "pointer_sim/measurement.hpp"

#include <cmath>

namespace psim {

namespace {

constexpr double kAmplitudeNormTol = 1e-9;

void check_pair_amplitudes(Complex a, Complex b, const char* fn) {
  double norm = std::sqrt(std::norm(a) + std::norm(b));
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kAmplitudeNormTol)
    throw std::invalid_argument(std::string(fn) + ": |a|^2 + |b|^2 must equal 1");
}

}  // namespace

Matrix build_delta(const DeltaParams& p) {
  double mag = std::abs(p.delta22);
  if (!(mag <= 1.0) || !std::isfinite(p.phi24) || !std::isfinite(p.phi32))
    throw std::invalid_argument("build_delta: need |delta22| <= 1 and finite phases");
  double s = std::sqrt(1.0 - mag * mag);
  Complex e24 = std::exp(Complex(0, p.phi24));
  Complex e32 = std::exp(Complex(0, p.phi32));
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = p.delta22;
  m(1, 3) = e24 * s;
  m(2, 1) = e32 * s;
  m(2, 3) = -e24 * e32 * std::conj(p.delta22);
  m(3, 2) = 1.0;
  return m;
}

Matrix build_h_sa(double g) {
  if (!(g > 0.0)) throw std::invalid_argument("build_h_sa: g must be > 0");
  Matrix one_minus_sz = identity(2) - pauli_z();
  Matrix one_minus_sx = identity(2) - pauli_x();
  return (g / 4.0) * tensor(one_minus_sz, one_minus_sx);
}

double tau_pm(double g, int n_odd) {
  if (!(g > 0.0)) throw std::invalid_argument("tau_pm: g must be > 0");
  if (n_odd < 1 || n_odd % 2 == 0) throw std::invalid_argument("tau_pm: n_odd must be odd and >= 1");
  return n_odd * M_PI / g;
}

Matrix premeasurement_unitary(double g, double t) {
  if (!(g > 0.0)) throw std::invalid_argument("premeasurement_unitary: g must be > 0");
  if (!std::isfinite(t)) throw std::invalid_argument("premeasurement_unitary: t must be finite");
  Complex z = std::exp(Complex(0, -g * t));
  Matrix u = Matrix::Identity(4, 4);
  u(2, 2) = 0.5 * (1.0 + z);
  u(2, 3) = 0.5 * (1.0 - z);
  u(3, 2) = 0.5 * (1.0 - z);
  u(3, 3) = 0.5 * (1.0 + z);
  return u;
}

std::pair<Complex, Complex> free_evolve(Complex s_plus, Complex s_minus,
                                        double dt, double omega0) {
  check_pair_amplitudes(s_plus, s_minus, "free_evolve");
  if (!std::isfinite(dt) || !std::isfinite(omega0))
    throw std::invalid_argument("free_evolve: dt and omega0 must be finite");
  return {s_plus * std::exp(Complex(0, -omega0 * dt)),
          s_minus * std::exp(Complex(0, omega0 * dt))};
}

JointState premeasure(Complex a, Complex b, const PremeasurementConfig& cfg) {
  check_pair_amplitudes(a, b, "premeasure");
  Vector initial(4);
  initial << a, 0.0, b, 0.0;  // (a|+> + b|->) tensor |+>_A
  Vector out = premeasurement_unitary(cfg.g, tau_pm(cfg.g, cfg.n_odd)) * initial;
  return JointState({2, 2}, std::move(out));
}

std::pair<Eigen::Vector2cd, Eigen::Vector2cd> xy_eigenbasis(const XYBasisParams& p) {
  double r = std::hypot(p.x, p.y);
  if (!(r > 0.0)) throw std::invalid_argument("xy_eigenbasis: (x,y) must not both vanish");
  // exp(-i*theta)/sqrt(2) solves the +r eigenvalue equation on every branch.
  Complex c = std::exp(Complex(0, -std::atan2(p.y, p.x))) / std::sqrt(2.0);
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd plus(c, inv_sqrt2);
  Eigen::Vector2cd minus(c, -inv_sqrt2);
  return {plus, minus};
}

Matrix xy_product_basis(const XYBasisParams& p) {
  auto [plus, minus] = xy_eigenbasis(p);
  Matrix single(2, 2);
  single.col(0) = plus;
  single.col(1) = minus;
  return tensor(single, single);
}

Eigen::Vector4cd express_in_xy(const JointState& psi, const XYBasisParams& p) {
  if (psi.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("express_in_xy: state must live on a pair of qubits");
  return xy_product_basis(p).adjoint() * psi.amplitudes;
}

}  // namespace psim
