#include "pointer_sim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace psim::quad {

namespace {

// Kronrod-15 abscissae on [-1,1] (nonnegative half) and weights, with the
// embedded Gauss-7 weights on the odd-indexed abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_gauss = fc * kWg[3];
  double result_kronrod = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    result_kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = result_kronrod * half;
  p.error = std::abs((result_kronrod - result_gauss) * half);
  return p;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int initial_panels,
                 int max_panels) {
  if (!(b > a)) throw std::invalid_argument("quad::integrate: need b > a");
  if (initial_panels < 1) throw std::invalid_argument("quad::integrate: initial_panels >= 1");

  auto worse = [](const Panel& p, const Panel& q) { return p.error < q.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);

  initial_panels = std::min(initial_panels, max_panels);
  const double width = (b - a) / initial_panels;
  double value = 0.0, error = 0.0;
  for (int i = 0; i < initial_panels; ++i) {
    Panel p = evaluate(f, a + i * width, i + 1 == initial_panels ? b : a + (i + 1) * width);
    value += p.value;
    error += p.error;
    queue.push(p);
  }

  int panels = initial_panels;
  while (error > std::max(rel_tol * std::abs(value), abs_tol)) {
    if (panels >= max_panels)
      throw ConvergenceError("quad::integrate: panel budget exhausted", value, error);
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate(f, worst.a, mid);
    Panel right = evaluate(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  return {value, error, panels};
}

}  // namespace psim::quad
