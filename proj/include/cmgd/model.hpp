#pragma once

/**
 * @file model.hpp
 * @brief Isentropic magnetogasdynamics with Chaplygin pressure.
 *
 * Conservation laws
 *   rho_t + (rho u)_x = 0
 *   (rho u)_t + (p + rho u^2 + B^2 / (2 mu))_x = 0
 * closed by p = -k1 / rho and B = k2 rho.
 */

#include <cmath>
#include <sstream>
#include <utility>

#include "errors.hpp"

namespace cmgd {

/**
 * @brief Model constants: pressure constant k1, magnetic constant k2 and
 * permeability mu. All three are validated once at construction so the
 * point-wise functions below can assume them positive.
 */
class Params {
 public:
  Params(double k1, double k2, double mu) : k1_(k1), k2_(k2), mu_(mu) {
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(mu > 0.0) || !std::isfinite(k1) || !std::isfinite(k2) ||
        !std::isfinite(mu)) {
      std::ostringstream msg;
      msg << "model parameters must be positive and finite (k1=" << k1 << ", k2=" << k2
          << ", mu=" << mu << ")";
      throw DomainError(msg.str());
    }
  }

  double k1() const noexcept { return k1_; }
  double k2() const noexcept { return k2_; }
  double mu() const noexcept { return mu_; }

  bool operator==(const Params&) const = default;

 private:
  double k1_;
  double k2_;
  double mu_;
};

/// Primitive state (density, velocity).
struct State {
  double rho = 1.0;
  double u = 0.0;

  double momentum() const noexcept { return rho * u; }
  bool operator==(const State&) const = default;
};

struct FluxVector {
  double mass_flux = 0.0;
  double momentum_flux = 0.0;
};

struct Eigenvalues {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

namespace detail {

inline void require_positive_density(double rho, const char* where) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    std::ostringstream msg;
    msg << where << ": density must be positive and finite, got " << rho;
    throw DomainError(msg.str());
  }
}

}  // namespace detail

inline void validate(const State& s) { detail::require_positive_density(s.rho, "state"); }

/// Chaplygin pressure -k1/rho.
inline double pressure(double rho, const Params& params) {
  detail::require_positive_density(rho, "pressure");
  return -params.k1() / rho;
}

inline double magnetic_field(double rho, const Params& params) {
  detail::require_positive_density(rho, "magnetic_field");
  return params.k2() * rho;
}

/// Total pressure entering the momentum flux: p + B^2/(2 mu).
inline double total_pressure(double rho, const Params& params) {
  detail::require_positive_density(rho, "total_pressure");
  return -params.k1() / rho + params.k2() * params.k2() * rho * rho / (2.0 * params.mu());
}

/**
 * @brief Magneto-acoustic speed w = sqrt(c^2 + b^2) with c^2 = k1/rho^2
 * (sound) and b^2 = k2^2 rho / mu (Alfven).
 */
inline double magneto_acoustic_speed(double rho, const Params& params) {
  detail::require_positive_density(rho, "magneto_acoustic_speed");
  return std::sqrt(params.k1() / (rho * rho) + params.k2() * params.k2() * rho / params.mu());
}

inline Eigenvalues eigenvalues(const State& s, const Params& params) {
  const double w = magneto_acoustic_speed(s.rho, params);
  return {s.u - w, s.u + w};
}

inline FluxVector flux(const State& s, const Params& params) {
  return {s.rho * s.u, total_pressure(s.rho, params) + s.rho * s.u * s.u};
}

/// Value of grad(lambda_i) . r_i for either family; positive for rho > 0.
inline double genuine_nonlinearity(double rho, const Params& params) {
  const double w = magneto_acoustic_speed(rho, params);
  return 3.0 * params.k2() * params.k2() * rho / (2.0 * params.mu() * w);
}

}  // namespace cmgd
