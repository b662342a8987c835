#include "pointer_sim/bath.hpp"

#include "pointer_sim/measurement.hpp"
#include "pointer_sim/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace psim {

namespace {

void check_beta(double beta) {
  if (std::isnan(beta) || beta <= 0.0)
    throw std::invalid_argument("BathSpec: beta must be > 0 (or +inf for zero temperature)");
}

double coth_factor(double beta, double omega) {
  return std::isinf(beta) ? 1.0 : coth(0.5 * beta * omega);
}

}  // namespace

BathSpec BathSpec::discrete(std::vector<BathMode> modes, double beta) {
  check_beta(beta);
  for (const auto& m : modes) {
    if (!(m.omega > 0.0)) throw std::invalid_argument("BathSpec: mode frequencies must be > 0");
    if (!std::isfinite(m.g.real()) || !std::isfinite(m.g.imag()))
      throw std::invalid_argument("BathSpec: couplings must be finite");
  }
  BathSpec spec;
  spec.kind = Kind::discrete;
  spec.modes = std::move(modes);
  spec.beta = beta;
  return spec;
}

BathSpec BathSpec::ohmic(double eta, double omega_c, double beta) {
  check_beta(beta);
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("BathSpec: eta must be >= 0");
  if (!(omega_c > 0.0) || !std::isfinite(omega_c))
    throw std::invalid_argument("BathSpec: omega_c must be > 0");
  BathSpec spec;
  spec.kind = Kind::ohmic;
  spec.eta = eta;
  spec.omega_c = omega_c;
  spec.beta = beta;
  return spec;
}

double coth(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("coth: x must be > 0");
  return 1.0 + 2.0 / std::expm1(2.0 * x);
}

double spectral_density(const BathSpec& spec, double omega) {
  if (spec.kind != BathSpec::Kind::ohmic)
    throw std::invalid_argument("spectral_density: spec must be ohmic");
  if (omega < 0.0) throw std::invalid_argument("spectral_density: omega must be >= 0");
  return spec.eta * omega * std::exp(-omega / spec.omega_c);
}

double i1_integral(const BathSpec& spec, double t) {
  if (spec.kind != BathSpec::Kind::ohmic)
    throw std::invalid_argument("i1_integral: spec must be ohmic");
  if (!(t >= 0.0)) throw std::invalid_argument("i1_integral: t must be >= 0");
  if (t == 0.0 || spec.eta == 0.0) return 0.0;

  const double eta = spec.eta, wc = spec.omega_c, beta = spec.beta;
  // The exponential envelope confines the integrand to w <= 50 wc at any t.
  const double omega_max = 50.0 * wc;
  // Limit at w -> 0: (1-cos wt)/w -> w t^2/2, coth(beta w/2) -> 2/(beta w).
  const double at_zero = std::isinf(beta) ? 0.0 : eta * t * t / beta;
  auto integrand = [&](double w) {
    if (w <= 0.0) return at_zero;
    // 1 - cos(wt) written as 2 sin^2(wt/2) to stay accurate for tiny wt.
    const double s = std::sin(0.5 * w * t);
    return eta * std::exp(-w / wc) * (2.0 * s * s) / w * coth_factor(beta, w);
  };

  // One initial panel per half oscillation period keeps the refinement local.
  int initial = static_cast<int>(std::min(4000.0, std::ceil(omega_max * t / M_PI)));
  initial = std::max(initial, 16);
  quad::Result res = quad::integrate(integrand, 0.0, omega_max, 1e-9, 0.0, initial);

  // Dropped tail, bounding (1-cos wt) by 2 or by (wt)^2/2, whichever is smaller:
  //   int_O^inf eta e^{-w/wc} (1-cos wt)/w coth(beta w/2) dw
  //     <= eta coth(beta O/2) e^{-O/wc} min(2 wc / O, (t^2/2) wc (O + wc)).
  const double coth_at_max = coth_factor(beta, omega_max);
  const double tail = eta * coth_at_max * std::exp(-omega_max / wc) *
                      std::min(2.0 * wc / omega_max,
                               0.5 * t * t * wc * (omega_max + wc));
  if (res.error_bound + tail > 1e-8 * std::abs(res.value) + 1e-300)
    throw quad::ConvergenceError("i1_integral: tail bound exceeds tolerance",
                                 res.value, res.error_bound + tail);
  return res.value;
}

double i1_discrete(const BathSpec& spec, double t) {
  if (spec.kind != BathSpec::Kind::discrete)
    throw std::invalid_argument("i1_discrete: spec must be discrete");
  if (!(t >= 0.0)) throw std::invalid_argument("i1_discrete: t must be >= 0");
  double sum = 0.0;
  for (const auto& m : spec.modes) {
    const double s = std::sin(0.5 * m.omega * t);
    sum += std::norm(m.g) * (2.0 * s * s) / (m.omega * m.omega) *
           coth_factor(spec.beta, m.omega);
  }
  return sum;
}

double i1(const BathSpec& spec, double t) {
  return spec.kind == BathSpec::Kind::ohmic ? i1_integral(spec, t) : i1_discrete(spec, t);
}

Complex phi_prefactor(const BathSpec& spec, double t) {
  if (spec.kind != BathSpec::Kind::discrete)
    throw std::invalid_argument("phi_prefactor: spec must be discrete");
  if (!std::isfinite(t)) throw std::invalid_argument("phi_prefactor: t must be finite");
  Complex exponent = 0.0;
  for (const auto& m : spec.modes) {
    const double g2 = std::norm(m.g);
    const Complex phi = (1.0 - std::exp(Complex(0, m.omega * t))) / m.omega;
    exponent += -g2 / m.omega * std::conj(phi) + Complex(0, t * g2 / m.omega) +
                0.5 * g2 * std::norm(phi);
  }
  return std::exp(exponent);
}

Complex evolve_element(Complex element, int sp, int ap, int sq, int aq,
                       double omega0, double i1_value, double t) {
  auto valid_label = [](int v) { return v == 1 || v == -1; };
  if (!valid_label(sp) || !valid_label(ap) || !valid_label(sq) || !valid_label(aq))
    throw std::invalid_argument("evolve_element: labels must be +1 or -1");
  if (i1_value < 0.0) throw std::invalid_argument("evolve_element: I1 must be >= 0");
  const double ds = sp - sq, da = ap - aq;
  return element * std::exp(Complex(0, -omega0 * t * (ds + da))) *
         std::exp(-da * da * i1_value);
}

DensityOperator evolve_density(const DensityOperator& rho0, double omega0,
                               const BathSpec& spec, double t) {
  if (rho0.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("evolve_density: state must live on a pair of qubits");
  validate_density(rho0.matrix, rho0.dims);
  const double i1_value = i1(spec, t);
  Matrix out(4, 4);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      out(p, q) = evolve_element(rho0.matrix(p, q), spin_s(p), spin_a(p),
                                 spin_s(q), spin_a(q), omega0, i1_value, t);
  return validate_density(out, rho0.dims);
}

CoherenceCurve coherence_curve(const DensityOperator& rho0, double omega0,
                               const BathSpec& spec, const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("coherence_curve: times must be nonempty");
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("coherence_curve: times must be increasing");
  CoherenceCurve curve;
  curve.times = times;
  for (double t : times) {
    double v = i1(spec, t);
    DensityOperator rho = evolve_density(rho0, omega0, spec, t);
    curve.i1_values.push_back(v);
    curve.coherence_14.push_back(std::abs(rho.matrix(0, 3)));
  }
  return curve;
}

}  // namespace psim
