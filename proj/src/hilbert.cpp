#include "pointer_sim/hilbert.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace psim {

namespace {

int dims_product(const std::vector<int>& dims) {
  int total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("dims: every subsystem dimension must be >= 1");
    total *= d;
  }
  return total;
}

}  // namespace

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_finite(const Matrix& m) {
  return m.allFinite();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix tensor_many(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor_many: need at least one factor");
  Matrix out = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

Matrix expm_hermitian(const Matrix& h, Complex scale, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("expm_hermitian: matrix must be square");
  if (!is_finite(h)) throw std::invalid_argument("expm_hermitian: non-finite entries");
  if (!is_hermitian(h, tol)) throw std::invalid_argument("expm_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  Vector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(scale * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

JointState::JointState(std::vector<int> dims_, Vector amplitudes_)
    : dims(std::move(dims_)), amplitudes(std::move(amplitudes_)) {
  if (dims_product(dims) != amplitudes.size())
    throw std::invalid_argument("JointState: amplitude count does not match dims product");
  if (!amplitudes.allFinite())
    throw std::invalid_argument("JointState: non-finite amplitude");
  double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kStateNormTol)
    throw std::invalid_argument("JointState: norm deviates from 1 by " +
                                std::to_string(std::abs(norm - 1.0)));
}

std::vector<DensityViolation> density_violations(const Matrix& rho,
                                                 const std::vector<int>& dims) {
  std::vector<DensityViolation> out;
  if (rho.rows() != rho.cols() || rho.rows() != dims_product(dims))
    throw std::invalid_argument("density_violations: shape does not match dims");
  if (!is_finite(rho)) {
    out.push_back({"finite", std::numeric_limits<double>::infinity()});
    return out;
  }
  double herm = max_abs(rho - rho.adjoint());
  if (herm > kHermTol) out.push_back({"hermitian", herm});
  double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_err > kHermTol) out.push_back({"trace", trace_err});

  // Eigenvalues of the Hermitian part; a diagonal matrix is its own spectrum.
  double off_diag = max_abs(rho - Matrix(rho.diagonal().asDiagonal()));
  double min_eig;
  if (off_diag == 0.0) {
    min_eig = rho.diagonal().real().minCoeff();
  } else {
    Matrix herm_part = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm_part, Eigen::EigenvaluesOnly);
    min_eig = es.eigenvalues().minCoeff();
  }
  if (min_eig < kEigFloor) out.push_back({"positive", -min_eig});
  return out;
}

DensityOperator validate_density(const Matrix& rho, const std::vector<int>& dims) {
  auto violations = density_violations(rho, dims);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "validate_density:";
    for (const auto& v : violations) msg << " " << v.kind << "=" << v.magnitude;
    throw std::invalid_argument(msg.str());
  }
  return DensityOperator{dims, rho};
}

DensityOperator pure_density(const JointState& psi) {
  Matrix rho = psi.amplitudes * psi.amplitudes.adjoint();
  return DensityOperator{psi.dims, std::move(rho)};
}

Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  const int total = dims_product(dims);
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("partial_trace: shape does not match dims");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("partial_trace: keep must be strictly increasing");
  if (keep.front() < 0 || keep.back() >= n)
    throw std::invalid_argument("partial_trace: keep index out of range");

  std::vector<int> traced;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

  // Row-major strides: subsystem 0 varies slowest.
  std::vector<int> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  int keep_dim = 1;
  for (int i : keep) keep_dim *= dims[i];
  int traced_dim = total / keep_dim;

  // Offsets of every kept (row, col) multi-index and every traced multi-index.
  auto offsets = [&](const std::vector<int>& subsystems, int count) {
    std::vector<int> off(count, 0);
    for (int flat = 0; flat < count; ++flat) {
      int rem = flat;
      for (auto it = subsystems.rbegin(); it != subsystems.rend(); ++it) {
        off[flat] += (rem % dims[*it]) * stride[*it];
        rem /= dims[*it];
      }
    }
    return off;
  };
  std::vector<int> keep_off = offsets(keep, keep_dim);
  std::vector<int> traced_off = offsets(traced, traced_dim);

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (int r = 0; r < keep_dim; ++r)
    for (int c = 0; c < keep_dim; ++c) {
      Complex sum = 0.0;
      for (int t : traced_off) sum += rho(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = sum;
    }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  Matrix reduced = partial_trace(rho.matrix, rho.dims, keep);
  std::vector<int> new_dims;
  for (int i : keep) new_dims.push_back(rho.dims[i]);
  return DensityOperator{std::move(new_dims), std::move(reduced)};
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity(int dim) {
  if (dim < 1) throw std::invalid_argument("identity: dim must be >= 1");
  return Matrix::Identity(dim, dim);
}

Matrix boson_lower(int dim) {
  if (dim < 1) throw std::invalid_argument("boson_lower: dim must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (int nn = 1; nn < dim; ++nn) m(nn - 1, nn) = std::sqrt(double(nn));
  return m;
}

Matrix boson_raise(int dim) {
  return boson_lower(dim).adjoint();
}

Matrix boson_number(int dim) {
  if (dim < 1) throw std::invalid_argument("boson_number: dim must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (int nn = 0; nn < dim; ++nn) m(nn, nn) = double(nn);
  return m;
}

}  // namespace psim
