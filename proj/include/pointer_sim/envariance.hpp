// envariance.hpp — entanglement-assisted invariance: Schmidt structure of the
// correlated pair, swap/counter-swap reversal, and outcome probabilities obtained
// by counting equal-weight fine-grained branches.
#pragma once

#include "pointer_sim/hilbert.hpp"

namespace psim {

struct SchmidtDecomposition {
  std::vector<Complex> coefficients;  // moduli descending; phases carried here
  Matrix basis_s;                     // columns, first nonzero component real >= 0
  Matrix basis_a;
};

// SVD of the coefficient matrix of psi on dims {dim_s, dim_a}.
SchmidtDecomposition schmidt_decompose(const JointState& psi);

// e^{i phi}|s1><s0| + e^{-i phi}|s0><s1| for the two columns of basis_s.
Matrix swap_system(double phi, const Matrix& basis_s);

// e^{i(phi1 - phi0 - phi)}|a1><a0| + h.c. phase-conjugate; undoes swap_system
// on c0|s0 a0> + c1|s1 a1> exactly when |c0| = |c1|.
Matrix counter_swap(double phi, double phi0, double phi1, const Matrix& basis_a);

// || (I ⊗ U_A)(U_S ⊗ I)|psi> - |psi> || for a pair state.
double reversal_residual(const JointState& psi, const Matrix& u_s, const Matrix& u_a);

bool is_envariant(const JointState& psi, const Matrix& u_s, const Matrix& u_a,
                  double tol = 1e-10);

// Two pointer branches split into a and b equal-weight sub-branches; kept
// symbolic (counts, phases, shared modulus 1/sqrt(a+b)).
struct FineGrainedState {
  int a_count = 1;
  int b_count = 1;
  double phi0 = 0.0;
  double phi1 = 0.0;
  double modulus() const;
};

// Requires |c0|^2 = a/(a+b) within 1e-9 so the split is exactly equal-weight.
FineGrainedState fine_grain(Complex c0, Complex c1, int a, int b);

// Branch-space amplitudes: a copies of e^{i phi0}/sqrt(a+b), then b copies of
// e^{i phi1}/sqrt(a+b). Capped at a+b <= 1024.
Vector materialize(const FineGrainedState& state);

// Outcome probabilities by counting branches: (a, b)/(a+b).
std::pair<double, double> born_by_counting(const FineGrainedState& state);

struct RationalApprox {
  long a = 0;
  long b = 0;
  double gap = 0.0;  // 1/(a+b)
};

// Bracketing counts with a/(a+b) <= p <= (a+1)/(a+b) and a+b <= cap maximal.
RationalApprox rational_approx(double p, long cap);

}  // namespace psim
