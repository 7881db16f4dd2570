#pragma once

/**
 * @file quadrature.hpp
 * @brief Globally adaptive 7/15-point Gauss-Kronrod quadrature.
 *
 * The interval with the largest error estimate is bisected until the summed
 * estimate falls below max(abs_tol, rel_tol * |I|). The per-panel error
 * estimate follows the usual QUADPACK scaling, including the round-off floor.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace cmgd {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 200;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
      throw DomainError("quadrature config: tolerances must be positive and max_subdivisions >= 1");
    }
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  const double fc = f(center);
  double result_gauss = fc * kWg[3];
  double result_kronrod = fc * kWgk[7];
  double result_abs = std::abs(result_kronrod);

  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    result_kronrod += kWgk[j] * sum;
    result_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * sum;
  }

  const double mean = result_kronrod * 0.5;
  double result_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    result_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  result_kronrod *= half;
  result_abs *= abs_half;
  result_asc *= abs_half;

  double err = std::abs((result_kronrod - result_gauss * half));
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (result_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * result_abs, err);
  }
  return {a, b, result_kronrod, err};
}

}  // namespace detail

/**
 * @brief Integrate f over the oriented interval [a, b].
 *
 * Returns the negated integral over [b, a] when b < a. Throws
 * QuadratureError when the tolerance is not reached within
 * cfg.max_subdivisions bisections.
 */
template <class F>
  requires std::invocable<F&, double>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  if (a == b) return {};
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate: interval end points must be finite");
  }
  if (b < a) {
    auto r = integrate(f, b, a, cfg);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<detail::Panel> panels;
  const detail::Panel first = detail::gauss_kronrod_15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  panels.push(first);

  int subdivisions = 0;
  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  while (total_err > tolerance()) {
    if (subdivisions >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "integrate: tolerance not met on [" << a << ", " << b << "] after " << subdivisions
          << " subdivisions (estimate " << total << ", error " << total_err << ")";
      throw QuadratureError(msg.str(), total, total_err);
    }
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
    const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  // Re-sum to shed the drift from incremental updates.
  double sum = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  return {sum, err, subdivisions};
}

}  // namespace cmgd
