#include "pointer_sim/envariance.hpp"

#include <cmath>

namespace psim {

namespace {

// Phase that makes the first nonzero component of v real and nonnegative.
Complex alignment_phase(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-14) return std::exp(Complex(0, -std::arg(v(i))));
  return 1.0;
}

void check_two_column_basis(const Matrix& basis, const char* fn) {
  if (basis.rows() != 2 || basis.cols() != 2)
    throw std::invalid_argument(std::string(fn) + ": basis must be 2x2 (columns s0, s1)");
  if (max_abs(basis.adjoint() * basis - Matrix::Identity(2, 2)) > 1e-10)
    throw std::invalid_argument(std::string(fn) + ": basis columns must be orthonormal");
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const JointState& psi) {
  if (psi.dims.size() != 2)
    throw std::invalid_argument("schmidt_decompose: state must be bipartite");
  const int ds = psi.dims[0], da = psi.dims[1];
  Matrix c(ds, da);
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < da; ++j) c(i, j) = psi.amplitudes(i * da + j);

  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int rank_dim = static_cast<int>(svd.singularValues().size());

  SchmidtDecomposition out;
  out.basis_s = Matrix(ds, rank_dim);
  out.basis_a = Matrix(da, rank_dim);
  for (int i = 0; i < rank_dim; ++i) {
    // psi = sum_i sigma_i u_i (conj v_i); realign both factors and push the
    // phases into the coefficient.
    Vector s = svd.matrixU().col(i);
    Vector a = svd.matrixV().col(i).conjugate();
    Complex ps = alignment_phase(s);
    Complex pa = alignment_phase(a);
    out.basis_s.col(i) = ps * s;
    out.basis_a.col(i) = pa * a;
    out.coefficients.push_back(svd.singularValues()(i) / (ps * pa));
  }
  return out;
}

Matrix swap_system(double phi, const Matrix& basis_s) {
  check_two_column_basis(basis_s, "swap_system");
  if (!std::isfinite(phi)) throw std::invalid_argument("swap_system: phi must be finite");
  const Vector s0 = basis_s.col(0), s1 = basis_s.col(1);
  return std::exp(Complex(0, phi)) * s1 * s0.adjoint() +
         std::exp(Complex(0, -phi)) * s0 * s1.adjoint();
}

Matrix counter_swap(double phi, double phi0, double phi1, const Matrix& basis_a) {
  check_two_column_basis(basis_a, "counter_swap");
  if (!std::isfinite(phi) || !std::isfinite(phi0) || !std::isfinite(phi1))
    throw std::invalid_argument("counter_swap: phases must be finite");
  const Vector a0 = basis_a.col(0), a1 = basis_a.col(1);
  const Complex e = std::exp(Complex(0, phi1 - phi0 - phi));
  return e * a1 * a0.adjoint() + std::conj(e) * a0 * a1.adjoint();
}

double reversal_residual(const JointState& psi, const Matrix& u_s, const Matrix& u_a) {
  if (psi.dims.size() != 2)
    throw std::invalid_argument("reversal_residual: state must be bipartite");
  if (u_s.rows() != psi.dims[0] || u_a.rows() != psi.dims[1])
    throw std::invalid_argument("reversal_residual: operator shapes must match dims");
  Vector swapped = tensor(u_s, identity(psi.dims[1])) * psi.amplitudes;
  Vector restored = tensor(identity(psi.dims[0]), u_a) * swapped;
  return (restored - psi.amplitudes).norm();
}

bool is_envariant(const JointState& psi, const Matrix& u_s, const Matrix& u_a, double tol) {
  return reversal_residual(psi, u_s, u_a) < tol;
}

double FineGrainedState::modulus() const { return 1.0 / std::sqrt(double(a_count + b_count)); }

FineGrainedState fine_grain(Complex c0, Complex c1, int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("fine_grain: counts must be >= 1");
  const double norm2 = std::norm(c0) + std::norm(c1);
  if (std::abs(norm2 - 1.0) > 1e-9)
    throw std::invalid_argument("fine_grain: |c0|^2 + |c1|^2 must equal 1");
  const double target = double(a) / double(a + b);
  if (std::abs(std::norm(c0) - target) > 1e-9)
    throw std::invalid_argument("fine_grain: |c0|^2 must equal a/(a+b), got " +
                                std::to_string(std::norm(c0)) + " vs " + std::to_string(target));
  return {a, b, std::arg(c0), std::arg(c1)};
}

Vector materialize(const FineGrainedState& state) {
  const int total = state.a_count + state.b_count;
  if (total > 1024) throw std::invalid_argument("materialize: a+b must be <= 1024");
  Vector out(total);
  const double m = state.modulus();
  for (int k = 0; k < total; ++k)
    out(k) = m * std::exp(Complex(0, k < state.a_count ? state.phi0 : state.phi1));
  return out;
}

std::pair<double, double> born_by_counting(const FineGrainedState& state) {
  const double total = state.a_count + state.b_count;
  return {state.a_count / total, state.b_count / total};
}

RationalApprox rational_approx(double p, long cap) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("rational_approx: p must lie in (0,1)");
  if (cap < 2) throw std::invalid_argument("rational_approx: cap must be >= 2");
  // The largest admissible denominator always brackets p; scan downward so the
  // returned a+b is maximal under the cap.
  for (long q = cap; q >= 2; --q) {
    long a = static_cast<long>(std::floor(p * double(q)));
    // Repair floating-point rounding at the bracket edges.
    while (a + 1 <= q && double(a + 1) / double(q) <= p) ++a;
    while (a > 0 && double(a) / double(q) > p) --a;
    if (a < 1 || a >= q) continue;  // both branch counts must be positive
    if (double(a) / double(q) <= p && p <= double(a + 1) / double(q))
      return {a, q - a, 1.0 / double(q)};
  }
  throw std::runtime_error("rational_approx: no admissible counts under cap");
}

}  // namespace psim
