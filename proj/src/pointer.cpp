#include "pointer_sim/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace psim {

BasisCandidate BasisCandidate::pointer() { return {0.0, 0.0, "pointer"}; }

BasisCandidate BasisCandidate::from_xy(const XYBasisParams& p) {
  if (!(std::hypot(p.x, p.y) > 0.0))
    throw std::invalid_argument("BasisCandidate::from_xy: (x,y) must not both vanish");
  return {M_PI / 2.0, std::atan2(p.y, p.x), "xy"};
}

Matrix candidate_basis_matrix(const BasisCandidate& c) {
  if (!std::isfinite(c.theta) || !std::isfinite(c.phi))
    throw std::invalid_argument("candidate_basis_matrix: angles must be finite");
  const double ct = std::cos(0.5 * c.theta), st = std::sin(0.5 * c.theta);
  const Complex ep = std::exp(Complex(0, c.phi));
  Matrix single(2, 2);
  single << ct, -std::conj(ep) * st, ep * st, ct;
  return tensor(single, single);
}

double coherence_norm(const DensityOperator& rho, const BasisCandidate& c) {
  if (rho.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("coherence_norm: state must live on a pair of qubits");
  Matrix basis = candidate_basis_matrix(c);
  Matrix rotated = basis.adjoint() * rho.matrix * basis;
  double sum = 0.0;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      if (p != q) sum += std::norm(rotated(p, q));
  return sum;
}

double decoherence_time(const CoherenceCurve& curve, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0)
    throw std::invalid_argument("decoherence_time: threshold must lie in (0, 1]");
  if (curve.times.size() != curve.i1_values.size() || curve.times.empty())
    throw std::invalid_argument("decoherence_time: malformed curve");
  double prev_ratio = std::exp(-4.0 * curve.i1_values.front());
  if (prev_ratio <= threshold) return curve.times.front();
  for (size_t i = 1; i < curve.times.size(); ++i) {
    double ratio = std::exp(-4.0 * curve.i1_values[i]);
    if (ratio <= threshold) {
      double f = (prev_ratio - threshold) / (prev_ratio - ratio);
      return curve.times[i - 1] + f * (curve.times[i] - curve.times[i - 1]);
    }
    prev_ratio = ratio;
  }
  throw std::runtime_error("decoherence_time: threshold " + std::to_string(threshold) +
                           " not reached; final ratio " + std::to_string(prev_ratio));
}

std::vector<BasisCandidate> default_grid(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("default_grid: grid sides must be >= 1");
  std::vector<BasisCandidate> grid;
  grid.push_back(BasisCandidate::pointer());
  for (int i = 1; i <= n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      double theta = (M_PI / 2.0) * i / n_theta;
      double phi = 2.0 * M_PI * j / n_phi;
      grid.push_back({theta, phi,
                      "theta=" + std::to_string(theta) + ",phi=" + std::to_string(phi)});
    }
  return grid;
}

std::vector<BasisCandidate> random_grid(int count, unsigned seed) {
  if (count < 1) throw std::invalid_argument("random_grid: count must be >= 1");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<BasisCandidate> grid;
  grid.push_back(BasisCandidate::pointer());
  for (int i = 0; i < count; ++i) {
    // Uniform over the upper hemisphere: cos(theta) uniform on (0,1].
    double theta = std::acos(1.0 - u01(rng));
    double phi = 2.0 * M_PI * u01(rng);
    grid.push_back({theta, phi, "random" + std::to_string(i)});
  }
  return grid;
}

ScanReport pointer_scan(const DensityOperator& rho, const std::vector<BasisCandidate>& grid,
                        double unique_tol) {
  bool has_pointer = std::any_of(grid.begin(), grid.end(),
                                 [](const BasisCandidate& c) { return c.theta == 0.0; });
  if (!has_pointer || grid.size() < 51)
    throw std::invalid_argument(
        "pointer_scan: grid must contain the pointer basis and at least 50 other candidates");
  ScanReport report;
  report.entries.reserve(grid.size());
  for (const auto& c : grid) report.entries.push_back({c, coherence_norm(rho, c)});

  report.minimizer = 0;
  for (size_t i = 1; i < report.entries.size(); ++i)
    if (report.entries[i].norm < report.entries[report.minimizer].norm)
      report.minimizer = static_cast<int>(i);
  double runner_up = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < report.entries.size(); ++i)
    if (static_cast<int>(i) != report.minimizer)
      runner_up = std::min(runner_up, report.entries[i].norm);
  report.margin = runner_up - report.entries[report.minimizer].norm;
  report.unique = report.margin > unique_tol;
  return report;
}

AmbiguityReport ambiguity_check(const JointState& psi, const std::vector<XYBasisParams>& grid) {
  if (psi.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("ambiguity_check: state must live on a pair of qubits");
  if (std::abs(psi.amplitudes(1)) > 1e-9 || std::abs(psi.amplitudes(2)) > 1e-9)
    throw std::invalid_argument("ambiguity_check: state must have the form a|++> + b|-->");

  const Complex a = psi.amplitudes(0), b = psi.amplitudes(3);
  AmbiguityReport report;

  // Weight of psi outside a two-branch pre-measurement in the candidate basis;
  // correlated branches for the + family, anti-correlated for the - family.
  auto residual_at = [&](const XYBasisParams& p) {
    Eigen::Vector4cd c = express_in_xy(psi, p);
    double corr = std::norm(c(1)) + std::norm(c(2));
    double anti = std::norm(c(0)) + std::norm(c(3));
    return std::min(corr, anti);
  };

  if (!grid.empty()) {
    double best = std::numeric_limits<double>::infinity();
    XYBasisParams best_params;
    for (const auto& p : grid) {
      double r = residual_at(p);
      if (r < best) {
        best = r;
        best_params = p;
      }
    }
    report.grid_best = best_params;
    report.grid_residual = best;
  }

  if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) {
    report.modulus_mismatch = 1.0;  // single-branch state, nothing to rotate into
    return report;
  }
  const Complex ratio = b / a;
  report.modulus_mismatch = std::abs(std::abs(ratio) - 1.0);
  if (report.modulus_mismatch > 1e-9) return report;

  // b = a (x+iy)/(x-iy) means arg(b/a) = 2*atan2(y,x).
  const double theta = 0.5 * std::arg(ratio);
  XYBasisParams solution{std::cos(theta), std::sin(theta)};
  report.found = true;
  report.solution = solution;
  report.residual = residual_at(solution);
  return report;
}

}  // namespace psim
