// bath.hpp — phase damping of the measured pair by a thermal bosonic bath: spectral
// density, the dephasing integral I1(t), and the closed-form reduced evolution that
// kills off-diagonal elements while leaving populations untouched.
#pragma once

#include "pointer_sim/hilbert.hpp"

#include <limits>
#include <vector>

namespace psim {

struct BathMode {
  double omega = 1.0;    // mode frequency, > 0
  Complex g{0.0, 0.0};   // coupling
};

// Either a finite list of modes or an ohmic continuum J(w) = eta*w*exp(-w/omega_c).
// beta = +infinity encodes zero temperature exactly (coth factor = 1).
struct BathSpec {
  enum class Kind { discrete, ohmic };

  Kind kind = Kind::ohmic;
  std::vector<BathMode> modes;  // discrete only
  double eta = 1.0;             // ohmic only
  double omega_c = 1.0;         // ohmic only
  double beta = std::numeric_limits<double>::infinity();

  static BathSpec discrete(std::vector<BathMode> modes, double beta);
  static BathSpec ohmic(double eta, double omega_c, double beta);
  bool zero_temperature() const { return std::isinf(beta); }
};

// coth(x) for x > 0, stable for both tiny and huge arguments.
double coth(double x);

// J(omega) for an ohmic spec; 0 at omega = 0.
double spectral_density(const BathSpec& spec, double omega);

// I1(t) = integral_0^inf J(w) (1-cos wt)/w^2 coth(beta w/2) dw, adaptive
// Gauss-Kronrod on [0, 50 omega_c] with a closed-form bound on the dropped
// tail; relative tolerance 1e-9.
double i1_integral(const BathSpec& spec, double t);

// I1(t) = sum_k |g_k|^2 (1-cos w_k t)/w_k^2 coth(beta w_k/2).
double i1_discrete(const BathSpec& spec, double t);

// Dispatches on the spec kind.
double i1(const BathSpec& spec, double t);

// Unimodular prefactor of the displaced-bath evolution for a discrete bath,
// exp(-sum (|g|^2/w) conj(phi)) * exp(it sum |g|^2/w) * exp(sum |g phi|^2 / 2)
// with phi_k(t) = (1 - exp(i w_k t))/w_k.
Complex phi_prefactor(const BathSpec& spec, double t);

// One matrix element of the dephasing map in the pointer pair basis: free phases
// for both labels plus decay by exp(-(ap-aq)^2 * I1).
Complex evolve_element(Complex element, int sp, int ap, int sq, int aq,
                       double omega0, double i1_value, double t);

// Applies the element map to a 4x4 pair density operator.
DensityOperator evolve_density(const DensityOperator& rho0, double omega0,
                               const BathSpec& spec, double t);

struct CoherenceCurve {
  std::vector<double> times;
  std::vector<double> i1_values;
  std::vector<double> coherence_14;  // |<++|rho(t)|-->|
};

CoherenceCurve coherence_curve(const DensityOperator& rho0, double omega0,
                               const BathSpec& spec, const std::vector<double>& times);

}  // namespace psim
