// hilbert.hpp — dense complex kets and operators on small tensor-product spaces:
// Kronecker products, partial trace, Hermitian matrix exponentials, density checks.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace psim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerances shared across the library.
constexpr double kStateNormTol = 1e-12;  // ket normalization
constexpr double kHermTol = 1e-10;       // Hermiticity and trace residuals
constexpr double kEigFloor = -1e-10;     // smallest admissible density eigenvalue

double max_abs(const Matrix& m);
bool is_finite(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermTol);

Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);
Matrix tensor_many(const std::vector<Matrix>& factors);

// exp(scale * h) for Hermitian h, via eigendecomposition. Unitary when scale is
// purely imaginary. Throws if h is not Hermitian within tol.
Matrix expm_hermitian(const Matrix& h, Complex scale, double tol = kHermTol);

// Normalized state on subsystems of dimensions dims (index 0 varies slowest).
struct JointState {
  std::vector<int> dims;
  Vector amplitudes;

  JointState(std::vector<int> dims_, Vector amplitudes_);
  int dim() const { return static_cast<int>(amplitudes.size()); }
};

struct DensityViolation {
  std::string kind;  // "finite", "hermitian", "trace", "positive"
  double magnitude;  // size of the violation
};

struct DensityOperator {
  std::vector<int> dims;
  Matrix matrix;
  int dim() const { return static_cast<int>(matrix.rows()); }
};

// Empty result means rho is a valid density operator for the given dims.
std::vector<DensityViolation> density_violations(const Matrix& rho,
                                                 const std::vector<int>& dims);

// Checked constructor: throws std::invalid_argument listing every violation.
DensityOperator validate_density(const Matrix& rho, const std::vector<int>& dims);

DensityOperator pure_density(const JointState& psi);

// Trace out every subsystem not listed in keep; keep is a strictly increasing,
// nonempty list of subsystem indices. Result dims follow the keep order.
Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep);
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);

// ------------- fixed small operators -------------

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(int dim);

// Truncated boson ladder operators, lower|n> = sqrt(n)|n-1>.
Matrix boson_lower(int dim);
Matrix boson_raise(int dim);
Matrix boson_number(int dim);

}  // namespace psim
