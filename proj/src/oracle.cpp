#include "pointer_sim/oracle.hpp"

#include "pointer_sim/measurement.hpp"

#include <cmath>

namespace psim {

namespace {

void check_bath(const TruncatedBath& bath) {
  if (bath.modes.size() != bath.n_max.size())
    throw std::invalid_argument("TruncatedBath: one cutoff per mode required");
  if (std::isnan(bath.beta) || bath.beta <= 0.0)
    throw std::invalid_argument("TruncatedBath: beta must be > 0 (or +inf)");
  for (const auto& m : bath.modes)
    if (!(m.omega > 0.0)) throw std::invalid_argument("TruncatedBath: mode frequencies must be > 0");
  for (int n : bath.n_max)
    if (n < 0) throw std::invalid_argument("TruncatedBath: cutoffs must be >= 0");
}

// Per-mode truncated thermal diagonal, renormalized to unit trace.
Vector mode_thermal_diag(double beta, double omega, int n_max) {
  Vector diag = Vector::Zero(n_max + 1);
  if (std::isinf(beta)) {
    diag(0) = 1.0;
    return diag;
  }
  double z = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    double w = std::exp(-beta * omega * n);
    diag(n) = w;
    z += w;
  }
  return diag / z;
}

std::vector<int> joint_dims(const TruncatedBath& bath) {
  std::vector<int> dims = {2, 2};
  for (int n : bath.n_max) dims.push_back(n + 1);
  return dims;
}

}  // namespace

TruncatedBath TruncatedBath::uniform(std::vector<BathMode> modes, int n_max, double beta) {
  TruncatedBath bath;
  bath.n_max.assign(modes.size(), n_max);
  bath.modes = std::move(modes);
  bath.beta = beta;
  check_bath(bath);
  return bath;
}

TruncatedBath TruncatedBath::adequate(std::vector<BathMode> modes, double beta,
                                      double adequacy) {
  TruncatedBath bath;
  bath.beta = beta;
  bath.adequacy = adequacy;
  for (const auto& m : modes) bath.n_max.push_back(adequate_cutoff(beta, m.omega, adequacy));
  bath.modes = std::move(modes);
  check_bath(bath);
  return bath;
}

int TruncatedBath::bath_dim() const {
  int dim = 1;
  for (int n : n_max) dim *= n + 1;
  return dim;
}

double thermal_tail(double beta, double omega, int n_max) {
  if (std::isnan(beta) || beta <= 0.0 || !(omega > 0.0) || n_max < 0)
    throw std::invalid_argument("thermal_tail: need beta > 0, omega > 0, n_max >= 0");
  if (std::isinf(beta)) return 0.0;
  return std::exp(-(n_max + 1) * beta * omega);
}

int adequate_cutoff(double beta, double omega, double adequacy) {
  if (!(adequacy > 0.0) || adequacy >= 1.0)
    throw std::invalid_argument("adequate_cutoff: adequacy must lie in (0,1)");
  if (std::isinf(beta)) return 0;
  // e^{-(n+1) beta w} < adequacy  <=>  n+1 > -ln(adequacy)/(beta w).
  int n = static_cast<int>(std::ceil(-std::log(adequacy) / (beta * omega))) - 1;
  n = std::max(n, 0);
  while (thermal_tail(beta, omega, n) >= adequacy) ++n;
  return n;
}

Matrix build_total_hamiltonian(double omega0, const TruncatedBath& bath) {
  check_bath(bath);
  const int k_modes = static_cast<int>(bath.modes.size());
  const long full_dim = 4L * bath.bath_dim();
  if (full_dim > bath.dim_cap)
    throw std::invalid_argument("build_total_hamiltonian: dimension " +
                                std::to_string(full_dim) + " exceeds cap " +
                                std::to_string(bath.dim_cap));

  std::vector<Matrix> factors(k_modes + 2);
  auto reset_identity = [&] {
    factors[0] = identity(2);
    factors[1] = identity(2);
    for (int k = 0; k < k_modes; ++k) factors[k + 2] = identity(bath.n_max[k] + 1);
  };

  reset_identity();
  factors[0] = pauli_z();
  Matrix h = omega0 * tensor_many(factors);

  reset_identity();
  factors[1] = pauli_z();
  h += omega0 * tensor_many(factors);

  for (int k = 0; k < k_modes; ++k) {
    const int fock = bath.n_max[k] + 1;
    reset_identity();
    factors[1] = pauli_z();
    factors[k + 2] = bath.modes[k].g * boson_raise(fock) +
                     std::conj(bath.modes[k].g) * boson_lower(fock);
    h += tensor_many(factors);

    reset_identity();
    factors[k + 2] = bath.modes[k].omega * boson_number(fock);
    h += tensor_many(factors);
  }
  return h;
}

DensityOperator thermal_state(const TruncatedBath& bath) {
  check_bath(bath);
  if (bath.modes.empty())
    throw std::invalid_argument("thermal_state: bath has no modes");
  if (bath.bath_dim() > bath.dim_cap)
    throw std::invalid_argument("thermal_state: bath dimension exceeds cap");
  std::vector<int> dims;
  Vector diag = Vector::Ones(1);
  for (size_t k = 0; k < bath.modes.size(); ++k) {
    double tail = thermal_tail(bath.beta, bath.modes[k].omega, bath.n_max[k]);
    if (tail >= bath.adequacy)
      throw std::invalid_argument(
          "thermal_state: truncated weight " + std::to_string(tail) + " at mode " +
          std::to_string(k) + "; raise n_max to at least " +
          std::to_string(adequate_cutoff(bath.beta, bath.modes[k].omega, bath.adequacy)));
    Vector mode = mode_thermal_diag(bath.beta, bath.modes[k].omega, bath.n_max[k]);
    Vector next(diag.size() * mode.size());
    for (Eigen::Index i = 0; i < diag.size(); ++i)
      next.segment(i * mode.size(), mode.size()) = diag(i).real() * mode;
    diag = next;
    dims.push_back(bath.n_max[k] + 1);
  }
  return validate_density(Matrix(diag.asDiagonal()), dims);
}

struct ExactPropagator::Impl {
  double omega0;
  TruncatedBath bath;
  Method method;
  double tails = 0.0;

  // full method: eigendecomposition of the joint Hamiltonian plus rho_B.
  Eigen::SelfAdjointEigenSolver<Matrix> joint_eig;
  Matrix rho_bath;

  // factorized method: per-mode eigenpairs of w n + a(g b† + g* b) for a = ±1,
  // and the per-mode thermal diagonals.
  struct ModeCache {
    Eigen::SelfAdjointEigenSolver<Matrix> plus, minus;
    Vector thermal;
  };
  std::vector<ModeCache> mode_cache;
};

ExactPropagator::ExactPropagator(double omega0, TruncatedBath bath, Method method)
    : impl_(std::make_unique<Impl>()) {
  check_bath(bath);
  impl_->omega0 = omega0;
  impl_->bath = std::move(bath);
  impl_->method = method;
  const TruncatedBath& b = impl_->bath;
  for (size_t k = 0; k < b.modes.size(); ++k) {
    double tail = thermal_tail(b.beta, b.modes[k].omega, b.n_max[k]);
    if (tail >= b.adequacy)
      throw std::invalid_argument("ExactPropagator: inadequate cutoff at mode " +
                                  std::to_string(k));
    impl_->tails += tail;
  }

  if (method == Method::full) {
    impl_->joint_eig.compute(build_total_hamiltonian(omega0, b));
    if (impl_->joint_eig.info() != Eigen::Success)
      throw std::runtime_error("ExactPropagator: eigendecomposition failed");
    impl_->rho_bath = thermal_state(b).matrix;
  } else {
    for (size_t k = 0; k < b.modes.size(); ++k) {
      const int fock = b.n_max[k] + 1;
      Matrix coupling = b.modes[k].g * boson_raise(fock) +
                        std::conj(b.modes[k].g) * boson_lower(fock);
      Matrix free_part = b.modes[k].omega * boson_number(fock);
      Impl::ModeCache cache;
      cache.plus.compute(free_part + coupling);
      cache.minus.compute(free_part - coupling);
      if (cache.plus.info() != Eigen::Success || cache.minus.info() != Eigen::Success)
        throw std::runtime_error("ExactPropagator: mode eigendecomposition failed");
      cache.thermal = mode_thermal_diag(b.beta, b.modes[k].omega, b.n_max[k]);
      impl_->mode_cache.push_back(std::move(cache));
    }
  }
}

ExactPropagator::~ExactPropagator() = default;
ExactPropagator::ExactPropagator(ExactPropagator&&) noexcept = default;
ExactPropagator& ExactPropagator::operator=(ExactPropagator&&) noexcept = default;

const TruncatedBath& ExactPropagator::bath() const { return impl_->bath; }

double ExactPropagator::truncation_bound() const { return impl_->tails; }

DensityOperator ExactPropagator::evolve(const DensityOperator& rho_sa0, double t) const {
  if (rho_sa0.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("ExactPropagator: state must live on a pair of qubits");
  validate_density(rho_sa0.matrix, rho_sa0.dims);
  if (!std::isfinite(t)) throw std::invalid_argument("ExactPropagator: t must be finite");

  if (impl_->method == Method::full) {
    const auto& eig = impl_->joint_eig;
    Vector phases(eig.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
      phases(i) = std::exp(Complex(0, -t * eig.eigenvalues()(i)));
    Matrix u = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    Matrix rho_full = tensor(rho_sa0.matrix, impl_->rho_bath);
    Matrix evolved = u * rho_full * u.adjoint();
    Matrix reduced = partial_trace(evolved, joint_dims(impl_->bath), {0, 1});
    return validate_density(reduced, {2, 2});
  }

  // Factorized: sigma_z^S and sigma_z^A commute with H, so the propagator is
  // diagonal over the four (s,a) labels; within a label the mode terms commute
  // pairwise and the thermal state is a product, so the bath trace factorizes:
  // <P|rho(t)|Q> = <P|rho(0)|Q> e^{-i w0 t [(sP+aP)-(sQ+aQ)]}
  //                * prod_k Tr[ e^{-i t h_k^{aP}} rho_k e^{+i t h_k^{aQ}} ].
  Matrix out(4, 4);
  Complex mode_factor[2][2];  // indexed by (aP, aQ) in {+,-}
  mode_factor[0][0] = mode_factor[0][1] = mode_factor[1][0] = mode_factor[1][1] = 1.0;
  for (const auto& cache : impl_->mode_cache) {
    auto mode_u = [&](const Eigen::SelfAdjointEigenSolver<Matrix>& eig) {
      Vector phases(eig.eigenvalues().size());
      for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(Complex(0, -t * eig.eigenvalues()(i)));
      return Matrix(eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint());
    };
    Matrix u_plus = mode_u(cache.plus);
    Matrix u_minus = mode_u(cache.minus);
    Matrix weighted_plus = u_plus * cache.thermal.asDiagonal();
    Matrix weighted_minus = u_minus * cache.thermal.asDiagonal();
    mode_factor[0][0] *= (weighted_plus * u_plus.adjoint()).trace();
    mode_factor[0][1] *= (weighted_plus * u_minus.adjoint()).trace();
    mode_factor[1][0] *= (weighted_minus * u_plus.adjoint()).trace();
    mode_factor[1][1] *= (weighted_minus * u_minus.adjoint()).trace();
  }
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      const double label_p = spin_s(p) + spin_a(p);
      const double label_q = spin_s(q) + spin_a(q);
      const Complex free = std::exp(Complex(0, -impl_->omega0 * t * (label_p - label_q)));
      out(p, q) = rho_sa0.matrix(p, q) * free *
                  mode_factor[spin_a(p) == 1 ? 0 : 1][spin_a(q) == 1 ? 0 : 1];
    }
  return validate_density(out, {2, 2});
}

DensityOperator evolve_exact(const DensityOperator& rho_sa0, const TruncatedBath& bath,
                             double omega0, double t) {
  return ExactPropagator(omega0, bath, ExactPropagator::Method::full).evolve(rho_sa0, t);
}

OracleReport compare_analytic(const DensityOperator& rho_sa0, const TruncatedBath& bath,
                              double omega0, const std::vector<double>& times,
                              ExactPropagator::Method method) {
  if (times.empty()) throw std::invalid_argument("compare_analytic: times must be nonempty");
  ExactPropagator prop(omega0, bath, method);
  BathSpec discrete = BathSpec::discrete(bath.modes, bath.beta);
  OracleReport report;
  report.times = times;
  report.truncation_bound = prop.truncation_bound();
  for (double t : times) {
    DensityOperator exact = prop.evolve(rho_sa0, t);
    DensityOperator analytic = evolve_density(rho_sa0, omega0, discrete, t);
    report.max_abs_diff.push_back(max_abs(exact.matrix - analytic.matrix));
  }
  return report;
}

}  // namespace psim
