#pragma once

/**
 * @file pressureless.hpp
 * @brief Riemann problem for the transport (pressureless) system
 *   rho_t + (rho u)_x = 0,  (rho u)_t + (rho u^2)_x = 0.
 *
 * The solution is a vacuum fan when u_l < u_r, a contact when u_l == u_r and
 * a delta shock carrying a point mass w(t) = weight_rate * t otherwise.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace cmgd {

/// State of the transport system; rho == 0 is the vacuum.
struct TransportState {
  double rho = 1.0;
  double u = 0.0;

  bool operator==(const TransportState&) const = default;
};

struct DeltaShock {
  double sigma = 0.0;
  double weight_rate = 0.0;
  /// Velocity carried by the point mass; equals sigma.
  double u_delta = 0.0;

  double weight(double t) const { return weight_rate * t; }
  double position(double t) const { return sigma * t; }
};

/// Vacuum region u_l <= xi <= u_r, where the velocity is xi.
struct VacuumFan {
  double u_left = 0.0;
  double u_right = 0.0;
};

struct Contact {
  double speed = 0.0;
};

struct TransportSolution {
  TransportState left;
  TransportState right;
  std::variant<VacuumFan, Contact, DeltaShock> wave;

  bool is_delta() const { return std::holds_alternative<DeltaShock>(wave); }
};

/// Point-mass marker reported by sample_transport at the delta-shock location.
struct DeltaMarker {
  double sigma = 0.0;
  double weight_rate = 0.0;
};

struct TransportSample {
  TransportState state;
  std::optional<DeltaMarker> delta;
};

struct GrhPoint {
  double t = 0.0;
  double x = 0.0;
  double w = 0.0;
  double sigma = 0.0;
};

namespace detail {

inline void require_transport_density(double rho, const char* where) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    std::ostringstream msg;
    msg << where << ": Riemann data density must be positive and finite, got " << rho;
    throw DomainError(msg.str());
  }
}

}  // namespace detail

inline TransportSolution solve_transport(const TransportState& left, const TransportState& right) {
  detail::require_transport_density(left.rho, "solve_transport");
  detail::require_transport_density(right.rho, "solve_transport");

  if (left.u < right.u) return {left, right, VacuumFan{left.u, right.u}};
  if (left.u == right.u) return {left, right, Contact{left.u}};

  DeltaShock d;
  if (left.rho == right.rho) {
    d.sigma = 0.5 * (left.u + right.u);
    d.weight_rate = left.rho * left.u - right.rho * right.u;
  } else {
    const double sl = std::sqrt(left.rho);
    const double sr = std::sqrt(right.rho);
    d.sigma = (sl * left.u + sr * right.u) / (sl + sr);
    d.weight_rate = std::sqrt(left.rho * right.rho) * (left.u - right.u);
  }
  d.u_delta = d.sigma;
  return {left, right, d};
}

/// Entropy inequality u_r < sigma < u_l for a delta shock.
inline bool satisfies_entropy(const TransportSolution& sol) {
  const auto* d = std::get_if<DeltaShock>(&sol.wave);
  return d != nullptr && sol.right.u < d->sigma && d->sigma < sol.left.u;
}

/**
 * @brief Integrate the generalised Rankine-Hugoniot system
 *   x' = sigma,  w' = sigma [rho] - [rho u],  (w sigma)' = sigma [rho u] - [rho u^2]
 * from (x, w) = (0, 0) with the explicit midpoint rule, recovering
 * sigma = (w sigma) / w after every stage.
 *
 * At t = 0 the weight vanishes and sigma is fixed by dividing the two weight
 * equations: sigma must solve
 *   [rho] s^2 - 2 [rho u] s + [rho u^2] = 0,
 * and the entropy condition picks the root between u_r and u_l.
 */
inline std::vector<GrhPoint> grh_integrate(const TransportState& left, const TransportState& right,
                                           double t_end, double dt) {
  detail::require_transport_density(left.rho, "grh_integrate");
  detail::require_transport_density(right.rho, "grh_integrate");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("grh_integrate: time step must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("grh_integrate: t_end must be non-negative");
  if (!(left.u > right.u)) {
    throw DomainError("grh_integrate: a delta shock needs u_left > u_right");
  }

  const double jump_rho = right.rho - left.rho;
  const double jump_m = right.rho * right.u - left.rho * left.u;
  const double jump_mu = right.rho * right.u * right.u - left.rho * left.u * left.u;

  double sigma0 = 0.0;
  if (jump_rho == 0.0) {
    sigma0 = jump_mu / (2.0 * jump_m);
  } else {
    const double disc = left.rho * right.rho * (left.u - right.u) * (left.u - right.u);
    const double r1 = (jump_m + std::sqrt(disc)) / jump_rho;
    const double r2 = (jump_m - std::sqrt(disc)) / jump_rho;
    sigma0 = (r1 > right.u && r1 < left.u) ? r1 : r2;
  }

  struct Y {
    double x, w, m;  // location, weight, weight * sigma
  };
  auto speed = [&](const Y& y) { return y.w > 0.0 ? y.m / y.w : sigma0; };
  auto rhs = [&](const Y& y) {
    const double s = speed(y);
    return Y{s, s * jump_rho - jump_m, s * jump_m - jump_mu};
  };

  std::vector<GrhPoint> out;
  Y y{0.0, 0.0, 0.0};
  double t = 0.0;
  out.push_back({t, y.x, y.w, sigma0});
  while (t < t_end) {
    const double h = std::min(dt, t_end - t);
    const Y k1 = rhs(y);
    const Y mid{y.x + 0.5 * h * k1.x, y.w + 0.5 * h * k1.w, y.m + 0.5 * h * k1.m};
    const Y k2 = rhs(mid);
    y = {y.x + h * k2.x, y.w + h * k2.w, y.m + h * k2.m};
    if (!(y.w > 0.0)) {
      throw DomainError("grh_integrate: weight left the positive cone; data violates the entropy condition");
    }
    // Landing exactly on t_end keeps the final point free of step-count drift.
    t = (t_end - t <= dt) ? t_end : t + h;
    out.push_back({t, y.x, y.w, speed(y)});
  }
  return out;
}

/**
 * @brief Classical part of the transport solution at xi = x/t.
 *
 * On the delta shock itself the returned state has zero density and velocity
 * sigma; the point mass is reported through the marker.
 */
inline TransportSample sample_transport(const TransportSolution& sol, double xi) {
  if (const auto* v = std::get_if<VacuumFan>(&sol.wave)) {
    if (xi < v->u_left) return {sol.left, std::nullopt};
    if (xi > v->u_right) return {sol.right, std::nullopt};
    return {{0.0, xi}, std::nullopt};
  }
  if (const auto* c = std::get_if<Contact>(&sol.wave)) {
    return {xi <= c->speed ? sol.left : sol.right, std::nullopt};
  }
  const auto& d = std::get<DeltaShock>(sol.wave);
  if (xi < d.sigma) return {sol.left, std::nullopt};
  if (xi > d.sigma) return {sol.right, std::nullopt};
  return {{0.0, d.sigma}, DeltaMarker{d.sigma, d.weight_rate}};
}

}  // namespace cmgd
