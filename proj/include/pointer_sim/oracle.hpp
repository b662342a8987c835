// oracle.hpp — brute-force check of the closed-form dephasing map: truncate each
// bath mode to a finite Fock ladder, evolve system+apparatus+bath exactly, trace
// the bath out, and compare against evolve_density.
#pragma once

#include "pointer_sim/bath.hpp"

#include <memory>

namespace psim {

struct TruncatedBath {
  std::vector<BathMode> modes;
  std::vector<int> n_max;  // Fock cutoff per mode (occupations 0..n_max[k])
  double beta = std::numeric_limits<double>::infinity();
  double adequacy = 1e-6;  // admissible truncated thermal weight per mode
  int dim_cap = 16384;     // cap on the full system+apparatus+bath dimension

  static TruncatedBath uniform(std::vector<BathMode> modes, int n_max, double beta);
  static TruncatedBath adequate(std::vector<BathMode> modes, double beta,
                                double adequacy = 1e-6);
  int bath_dim() const;    // product of the Fock dimensions
};

// Thermal weight beyond the cutoff, sum_{n>n_max} e^{-n beta w}(1-e^{-beta w}).
double thermal_tail(double beta, double omega, int n_max);

// Smallest cutoff with thermal_tail below the threshold.
int adequate_cutoff(double beta, double omega, double adequacy);

// Dense Hamiltonian on [S, A, modes...]: free qubit terms, sigma_z^A-conditioned
// linear coupling to each mode, and the free mode energies. Dimension-capped.
Matrix build_total_hamiltonian(double omega0, const TruncatedBath& bath);

// Truncated, renormalized product of per-mode geometric distributions. Errors if
// any mode's dropped weight exceeds bath.adequacy.
DensityOperator thermal_state(const TruncatedBath& bath);

// Exact propagation of rho_SA tensor rho_B with the eigendecomposition cached per
// bath. `full` diagonalizes the joint dense Hamiltonian; `factorized` uses the
// conserved (s,a) labels and the mutually commuting mode terms to reduce the work
// to per-mode dense eigenproblems. Both are exact on the truncated space.
class ExactPropagator {
 public:
  enum class Method { full, factorized };

  ExactPropagator(double omega0, TruncatedBath bath, Method method = Method::full);
  ~ExactPropagator();
  ExactPropagator(ExactPropagator&&) noexcept;
  ExactPropagator& operator=(ExactPropagator&&) noexcept;

  DensityOperator evolve(const DensityOperator& rho_sa0, double t) const;
  double truncation_bound() const;  // summed per-mode thermal tails
  const TruncatedBath& bath() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot full-method propagation (builds and discards the cache).
DensityOperator evolve_exact(const DensityOperator& rho_sa0, const TruncatedBath& bath,
                             double omega0, double t);

struct OracleReport {
  std::vector<double> times;
  std::vector<double> max_abs_diff;  // elementwise gap to the closed form
  double truncation_bound = 0.0;
};

OracleReport compare_analytic(const DensityOperator& rho_sa0, const TruncatedBath& bath,
                              double omega0, const std::vector<double>& times,
                              ExactPropagator::Method method = ExactPropagator::Method::full);

}  // namespace psim
