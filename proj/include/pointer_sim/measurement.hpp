// measurement.hpp — two-level system measured by a two-level apparatus: the
// correlating unitary family, the coupling Hamiltonian and its propagator, and
// rotated spin bases in the equatorial (x,y) plane.
#pragma once

#include "pointer_sim/hilbert.hpp"

#include <utility>

namespace psim {

// Pair basis order: |++>, |+->, |-+>, |-->. The system label s is +1 on the
// first two indices, the apparatus label a is +1 on even indices.
inline int spin_s(int index) { return index < 2 ? +1 : -1; }
inline int spin_a(int index) { return index % 2 == 0 ? +1 : -1; }

// Family of correlating unitaries mapping (a,0,b,0) to (a,0,0,b).
struct DeltaParams {
  Complex delta22{0.0, 0.0};
  double phi24 = 0.0;
  double phi32 = 0.0;
};

// Equatorial basis direction; (x,y) must not both vanish.
struct XYBasisParams {
  double x = 1.0;
  double y = 0.0;
};

struct PremeasurementConfig {
  double g = 1.0;    // system-apparatus coupling, > 0
  int n_odd = 1;     // odd multiple selecting the interaction time
};

Matrix build_delta(const DeltaParams& p);

// (g/4)(1 - sigma_z) tensor (1 - sigma_x) on the pair space.
Matrix build_h_sa(double g);

// Interaction time n*pi/g (n odd) at which the coupling correlates exactly.
double tau_pm(double g, int n_odd);

// exp(-i t H_SA): identity on the s=+1 block, a symmetric mixing block on s=-1.
Matrix premeasurement_unitary(double g, double t);

// Free phases of the system amplitudes over dt under H = omega0 * sigma_z
// (the apparatus contributes only a discarded global phase).
std::pair<Complex, Complex> free_evolve(Complex s_plus, Complex s_minus,
                                        double dt, double omega0);

// Runs the coupling for tau_pm on (a|+> + b|->)|+>_A.
JointState premeasure(Complex a, Complex b, const PremeasurementConfig& cfg);

// Eigenvectors of x*sigma_x + y*sigma_y for eigenvalues +r and -r, r=|(x,y)|.
std::pair<Eigen::Vector2cd, Eigen::Vector2cd> xy_eigenbasis(const XYBasisParams& p);

// Columns |++>_xy, |+->_xy, |-+>_xy, |-->_xy (same rotation on both qubits).
Matrix xy_product_basis(const XYBasisParams& p);

// Coefficients of a pair state in the rotated product basis. The inverse
// transform is the adjoint of the basis matrix, computed numerically.
Eigen::Vector4cd express_in_xy(const JointState& psi, const XYBasisParams& p);

}  // namespace psim
