#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "annealm/errors.hpp"

namespace annealm {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod abscissae/weights and embedded 7-point Gauss weights,
// 80-digit values from QUADPACK (dqk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gauss_kronrod_15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];

  std::array<double, 7> fsum{};
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fsum[i] = f1 + f2;
    kronrod += fsum[i] * kKronrodWeights[i];
    if (i % 2 == 1) gauss += fsum[i] * kGaussWeights[i / 2];
  }

  // QUADPACK-style sharpened error estimate.
  const double mean = kronrod * 0.5;
  double resasc = kKronrodWeights[7] * std::fabs(fc - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kKronrodWeights[i] * std::fabs(fsum[i] - 2.0 * mean);
  resasc *= std::fabs(half);

  double err = std::fabs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {kronrod * half, err};
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]: the panel
/// with the largest error estimate is bisected until the total estimate
/// drops below abs_tol. Throws NumericalError if the panel budget runs out
/// or panels become unsplittable first.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_panels = 4000) {
  QuadratureResult out;
  if (a == b) return out;

  auto make_panel = [&f](double lo, double hi) {
    auto [value, err] = detail::gauss_kronrod_15(f, lo, hi);
    if (!std::isfinite(value))
      throw NumericalError("quadrature: integrand not finite on [" +
                           std::to_string(lo) + ", " + std::to_string(hi) +
                           "]");
    return detail::Panel{lo, hi, value, err};
  };

  std::priority_queue<detail::Panel> active;
  active.push(make_panel(a, b));
  double total_error = active.top().error;

  while (total_error > abs_tol) {
    if (static_cast<int>(active.size()) >= max_panels)
      throw NumericalError("quadrature: panel budget exhausted, error estimate " +
                           std::to_string(total_error));
    const detail::Panel worst = active.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw NumericalError("quadrature: interval collapsed at " +
                           std::to_string(mid) + " with error estimate " +
                           std::to_string(total_error));
    active.pop();
    const detail::Panel left = make_panel(worst.a, mid);
    const detail::Panel right = make_panel(mid, worst.b);
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  out.error_estimate = total_error;
  out.intervals = static_cast<int>(active.size());
  // accumulate panel values smallest-magnitude first
  std::vector<double> values;
  values.reserve(active.size());
  while (!active.empty()) {
    values.push_back(active.top().value);
    active.pop();
  }
  std::sort(values.begin(), values.end(),
            [](double x, double y) { return std::fabs(x) < std::fabs(y); });
  for (double v : values) out.value += v;
  return out;
}

template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10) {
  return integrate_adaptive(std::forward<F>(f), a, b, abs_tol).value;
}

}  // namespace annealm
