// pointer.hpp — which basis survives the bath: off-diagonal coherence norms over
// candidate product bases, threshold decoherence times, and the pre-decoherence
// basis ambiguity of correlated pure states.
#pragma once

#include "pointer_sim/bath.hpp"
#include "pointer_sim/measurement.hpp"

#include <optional>
#include <string>

namespace psim {

// Single-qubit basis rotated by Bloch angles, applied to both qubits:
// |0'> = cos(theta/2)|+> + e^{i phi} sin(theta/2)|->. theta = 0 is the pointer basis.
struct BasisCandidate {
  double theta = 0.0;
  double phi = 0.0;
  std::string label;

  static BasisCandidate pointer();
  static BasisCandidate from_xy(const XYBasisParams& p);  // equatorial, phi = atan2(y,x)
};

// 4x4 unitary whose columns are the candidate product basis vectors.
Matrix candidate_basis_matrix(const BasisCandidate& c);

// Sum of squared moduli of the off-diagonal elements of rho in the candidate
// basis; zero exactly when the candidate diagonalizes rho.
double coherence_norm(const DensityOperator& rho, const BasisCandidate& c);

// First time the dephasing ratio exp(-4 I1(t)) reaches the threshold, linearly
// interpolated between curve grid points. Throws if never reached on the grid.
double decoherence_time(const CoherenceCurve& curve, double threshold = std::exp(-1.0));

// Pointer point plus an n_theta x n_phi grid over theta in (0, pi/2], phi in [0, 2pi).
std::vector<BasisCandidate> default_grid(int n_theta = 10, int n_phi = 10);
std::vector<BasisCandidate> random_grid(int count, unsigned seed);

struct ScanEntry {
  BasisCandidate candidate;
  double norm;
};

struct ScanReport {
  std::vector<ScanEntry> entries;   // grid order
  int minimizer = 0;                // index of the smallest norm
  double margin = 0.0;              // runner-up norm minus minimum
  bool unique = false;              // margin above tolerance
};

// Evaluates the coherence norm on every candidate; the grid must contain the
// pointer basis (theta = 0) and at least 50 other candidates.
ScanReport pointer_scan(const DensityOperator& rho, const std::vector<BasisCandidate>& grid,
                        double unique_tol = 1e-8);

struct AmbiguityReport {
  bool found = false;                 // an equatorial alternative basis exists
  double modulus_mismatch = 0.0;      // | |b/a| - 1 |, the obstruction when absent
  std::optional<XYBasisParams> solution;  // family b = +a (x+iy)/(x-iy)
  double residual = 0.0;              // cross-branch weight of psi in the solution basis
  std::optional<XYBasisParams> grid_best;
  double grid_residual = 0.0;
};

// Searches for an equatorial product basis in which the correlated pure state
// a|++> + b|--> is again a two-branch pre-measurement. Such a basis exists
// exactly when |a| = |b|; the supplied grid is scanned for the best witness.
AmbiguityReport ambiguity_check(const JointState& psi, const std::vector<XYBasisParams>& grid);

}  // namespace psim
