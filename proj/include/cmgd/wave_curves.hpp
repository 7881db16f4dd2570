#pragma once

/**
 * @file wave_curves.hpp
 * @brief Elementary wave curves R1, R2, S1, S2 through a given state.
 *
 * Forward curves are parameterised by the density on the far side of the
 * wave, with the given state on the near (left) side:
 *   R1: u = u_l + I(rho, rho_l),               0 < rho <= rho_l
 *   R2: u = u_l + I(rho_l, rho),               rho >= rho_l
 *   S1: u = u_l - sqrt(K(rho, rho_l)) (rho - rho_l),   rho >= rho_l
 *   S2: u = u_l + sqrt(K(rho, rho_l)) (rho - rho_l),   rho <= rho_l
 * where I(a, b) is the oriented integral of w(s)/s and
 * K(a, b) = (k1 / (a b) + k2^2 (a + b) / (2 mu)) / (a b).
 */

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string_view>

#include "errors.hpp"
#include "model.hpp"
#include "quadrature.hpp"

namespace cmgd {

enum class CurveFamily { R1, R2, S1, S2 };

inline constexpr std::string_view to_string(CurveFamily f) {
  switch (f) {
    case CurveFamily::R1: return "R1";
    case CurveFamily::R2: return "R2";
    case CurveFamily::S1: return "S1";
    case CurveFamily::S2: return "S2";
  }
  return "?";
}

inline constexpr bool is_shock(CurveFamily f) {
  return f == CurveFamily::S1 || f == CurveFamily::S2;
}

inline constexpr int family_index(CurveFamily f) {
  return (f == CurveFamily::R1 || f == CurveFamily::S1) ? 1 : 2;
}

/**
 * @brief Oriented integral of sqrt(k1/s^2 + k2^2 s/mu)/s from rho_a to rho_b.
 *
 * Evaluated in the logarithmic variable t = ln s, where the integrand becomes
 * the magneto-acoustic speed w(e^t). That keeps the 1/s^2 growth near
 * vacuum out of the quadrature.
 */
inline double rarefaction_integral(double rho_a, double rho_b, const Params& params,
                                   const QuadratureConfig& cfg = {}) {
  detail::require_positive_density(rho_a, "rarefaction_integral");
  detail::require_positive_density(rho_b, "rarefaction_integral");
  if (rho_a == rho_b) return 0.0;
  const double k1 = params.k1();
  const double k2_sq_over_mu = params.k2() * params.k2() / params.mu();
  auto speed_in_log = [k1, k2_sq_over_mu](double t) {
    const double s = std::exp(t);
    return std::sqrt(k1 / (s * s) + k2_sq_over_mu * s);
  };
  return integrate(speed_in_log, std::log(rho_a), std::log(rho_b), cfg).value;
}

namespace detail {

/// sqrt(K(a, b)), the common factor of both shock curves.
inline double shock_factor(double a, double b, const Params& params) {
  const double ab = a * b;
  const double k2 = params.k2();
  return std::sqrt((params.k1() / ab + k2 * k2 * (a + b) / (2.0 * params.mu())) / ab);
}

inline void require_admissible(CurveFamily family, const State& left, double rho) {
  require_positive_density(left.rho, "wave curve base state");
  require_positive_density(rho, "wave curve");
  const bool compressive = family == CurveFamily::S1 || family == CurveFamily::R2;
  const bool ok = compressive ? rho >= left.rho : rho <= left.rho;
  if (!ok) {
    std::ostringstream msg;
    msg << to_string(family) << " curve through rho=" << left.rho << " is not defined at rho=" << rho;
    throw DomainError(msg.str());
  }
}

}  // namespace detail

/// Velocity on the forward curve of `family` through `left` at density rho.
inline double curve_u(CurveFamily family, const State& left, double rho, const Params& params,
                      const QuadratureConfig& cfg = {}) {
  detail::require_admissible(family, left, rho);
  switch (family) {
    case CurveFamily::R1: return left.u + rarefaction_integral(rho, left.rho, params, cfg);
    case CurveFamily::R2: return left.u + rarefaction_integral(left.rho, rho, params, cfg);
    case CurveFamily::S1:
      return left.u - detail::shock_factor(rho, left.rho, params) * (rho - left.rho);
    case CurveFamily::S2:
      return left.u + detail::shock_factor(rho, left.rho, params) * (rho - left.rho);
  }
  throw DomainError("curve_u: unknown family");
}

/// Speed of the S1 or S2 shock joining `left` to the curve point at rho.
inline double shock_speed(CurveFamily family, const State& left, double rho, const Params& params) {
  if (!is_shock(family)) throw DomainError("shock_speed: family must be S1 or S2");
  detail::require_admissible(family, left, rho);
  const double s = rho * detail::shock_factor(rho, left.rho, params);
  return family == CurveFamily::S1 ? left.u - s : left.u + s;
}

/**
 * @brief Velocity of states that reach `right` through a 2-wave.
 *
 * For rho >= right.rho the 2-wave is a shock, otherwise a rarefaction.
 * The result is strictly increasing in rho.
 */
inline double backward_2_curve_u(const State& right, double rho, const Params& params,
                                 const QuadratureConfig& cfg = {}) {
  detail::require_positive_density(right.rho, "backward 2-curve base state");
  detail::require_positive_density(rho, "backward 2-curve");
  if (rho >= right.rho) {
    return right.u + detail::shock_factor(rho, right.rho, params) * (rho - right.rho);
  }
  return right.u - rarefaction_integral(rho, right.rho, params, cfg);
}

/// Velocity of states reached from `left` through a 1-wave; strictly decreasing in rho.
inline double forward_1_curve_u(const State& left, double rho, const Params& params,
                                const QuadratureConfig& cfg = {}) {
  detail::require_positive_density(left.rho, "forward 1-curve base state");
  detail::require_positive_density(rho, "forward 1-curve");
  return rho > left.rho ? curve_u(CurveFamily::S1, left, rho, params, cfg)
                        : curve_u(CurveFamily::R1, left, rho, params, cfg);
}

namespace detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Step used by the finite-difference shape checks; capped so rho - h stays positive.
inline double shape_step(double rho) { return std::min(1e-6 * std::max(1.0, rho), 0.5 * rho); }

// Increment u(b) - u(a) along the curve. Rarefaction increments are integrated
// directly so that differences do not cancel against quadrature noise.
inline double curve_increment(CurveFamily family, const State& left, double a, double b,
                              const Params& params, const QuadratureConfig& cfg) {
  switch (family) {
    case CurveFamily::R1: return -rarefaction_integral(a, b, params, cfg);
    case CurveFamily::R2: return rarefaction_integral(a, b, params, cfg);
    default: break;
  }
  // The closed-form shock branches extend smoothly across rho_l.
  const double sign = family == CurveFamily::S1 ? -1.0 : 1.0;
  auto u = [&](double rho) { return sign * shock_factor(rho, left.rho, params) * (rho - left.rho); };
  return u(b) - u(a);
}

}  // namespace detail

/// Sign of du/drho along the curve, by centred difference.
inline int curve_slope_sign(CurveFamily family, const State& left, double rho, const Params& params,
                            const QuadratureConfig& cfg = {}) {
  detail::require_admissible(family, left, rho);
  const double h = detail::shape_step(rho);
  return detail::sign_of(detail::curve_increment(family, left, rho - h, rho + h, params, cfg));
}

/// Sign of d^2u/drho^2 along the curve, by centred second difference.
inline int curve_curvature_sign(CurveFamily family, const State& left, double rho,
                                const Params& params, const QuadratureConfig& cfg = {}) {
  detail::require_admissible(family, left, rho);
  const double h = detail::shape_step(rho);
  const double forward = detail::curve_increment(family, left, rho, rho + h, params, cfg);
  const double backward = detail::curve_increment(family, left, rho - h, rho, params, cfg);
  return detail::sign_of(forward - backward);
}

}  // namespace cmgd
