#pragma once

/**
 * @file exact_riemann.hpp
 * @brief Exact Riemann solver for the Chaplygin magnetogasdynamic system.
 *
 * The intermediate density is the unique root of
 *   F(rho) = u_1(rho; left) - u_2(rho; right),
 * where u_1 follows the composite 1-wave curve out of the left state and u_2
 * the composite 2-wave curve into the right state. F is strictly decreasing,
 * so the wave types follow from comparing the root with the outer densities:
 * a wave is a shock exactly when the intermediate density exceeds the density
 * on its outer side.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "quadrature.hpp"
#include "root_finding.hpp"
#include "wave_curves.hpp"

namespace cmgd {

enum class Region { I, II, III, IV };

inline constexpr std::string_view to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
  }
  return "?";
}

/// Discontinuity moving at `speed` with `left`/`right` the states on either side.
struct Shock {
  CurveFamily family = CurveFamily::S1;
  double speed = 0.0;
  State left;
  State right;
};

/**
 * @brief Centred rarefaction occupying xi_begin <= xi <= xi_end.
 *
 * state_begin and state_end are the edge states at the two ends of the fan.
 * The head is the edge facing the outer constant state: xi_begin for R1,
 * xi_end for R2.
 */
struct Rarefaction {
  CurveFamily family = CurveFamily::R1;
  double xi_begin = 0.0;
  double xi_end = 0.0;
  State state_begin;
  State state_end;

  double head_speed() const { return family == CurveFamily::R1 ? xi_begin : xi_end; }
  double tail_speed() const { return family == CurveFamily::R1 ? xi_end : xi_begin; }
};

using Wave = std::variant<Shock, Rarefaction>;

inline bool is_shock(const Wave& w) { return std::holds_alternative<Shock>(w); }

/// Smallest self-similar coordinate touched by the wave.
inline double lowest_speed(const Wave& w) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Shock>) {
          return x.speed;
        } else {
          return x.xi_begin;
        }
      },
      w);
}

inline double highest_speed(const Wave& w) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Shock>) {
          return x.speed;
        } else {
          return x.xi_end;
        }
      },
      w);
}

/// Shock speed or rarefaction head speed.
inline double characteristic_speed(const Wave& w) {
  if (const auto* s = std::get_if<Shock>(&w)) return s->speed;
  return std::get<Rarefaction>(w).head_speed();
}

struct WaveFan {
  Params params;
  State left;
  Wave wave1;
  State star;
  Wave wave2;
  State right;
  Region region = Region::I;
};

struct Profile {
  std::vector<double> xi_grid;
  std::vector<State> states;
};

/**
 * @brief Smooth compactly supported bump psi(xi) = exp(1 - 1/(1 - r^2)),
 * r = (xi - center)/radius, with unit maximum at the centre.
 */
class TestFunction {
 public:
  TestFunction(double center, double radius) : center_(center), radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center)) {
      throw DomainError("test function: radius must be positive and finite");
    }
  }

  double center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  double support_min() const noexcept { return center_ - radius_; }
  double support_max() const noexcept { return center_ + radius_; }

  double operator()(double xi) const {
    const double r = (xi - center_) / radius_;
    const double q = 1.0 - r * r;
    if (q <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / q);
  }

  double derivative(double xi) const {
    const double r = (xi - center_) / radius_;
    const double q = 1.0 - r * r;
    if (q <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / q) * (-2.0 * r / (q * q)) / radius_;
  }

 private:
  double center_;
  double radius_;
};

struct SolveOptions {
  double tol = 1e-12;
  QuadratureConfig quadrature{};
};

struct WeakResidual {
  double mass = 0.0;
  double momentum = 0.0;
};

/// F(rho*) = u_1(rho*; left) - u_2(rho*; right). Strictly decreasing in rho*.
inline double intermediate_residual(double rho_star, const State& left, const State& right,
                                    const Params& params, const QuadratureConfig& cfg = {}) {
  detail::require_positive_density(rho_star, "intermediate_residual");
  return forward_1_curve_u(left, rho_star, params, cfg) - backward_2_curve_u(right, rho_star, params, cfg);
}

namespace detail {

inline Region classify(bool shock1, bool shock2) {
  if (shock1) return shock2 ? Region::IV : Region::III;
  return shock2 ? Region::II : Region::I;
}

inline Wave make_wave1(const State& left, const State& star, const Params& params) {
  if (star.rho > left.rho) {
    return Shock{CurveFamily::S1, shock_speed(CurveFamily::S1, left, star.rho, params), left, star};
  }
  return Rarefaction{CurveFamily::R1, eigenvalues(left, params).lambda1,
                     eigenvalues(star, params).lambda1, left, star};
}

inline Wave make_wave2(const State& star, const State& right, const Params& params) {
  if (star.rho > right.rho) {
    return Shock{CurveFamily::S2, shock_speed(CurveFamily::S2, star, right.rho, params), star, right};
  }
  return Rarefaction{CurveFamily::R2, eigenvalues(star, params).lambda2,
                     eigenvalues(right, params).lambda2, star, right};
}

inline Bracket bracket_intermediate_density(const State& left, const State& right,
                                            const Params& params, const QuadratureConfig& cfg) {
  auto f = [&](double r) { return intermediate_residual(r, left, right, params, cfg); };
  const double rho_min = std::min(left.rho, right.rho);
  const double rho_max = std::max(left.rho, right.rho);

  double lo = rho_min * 1e-6;
  double f_lo = f(lo);
  const double lo_floor = rho_min * 1e-6 * std::ldexp(1.0, -60);
  while (f_lo < 0.0 && lo > lo_floor) {
    lo *= 0.5;
    f_lo = f(lo);
  }

  double hi = rho_max;
  double f_hi = f(hi);
  const double hi_ceiling = rho_max * std::ldexp(1.0, 60);
  while (f_hi > 0.0 && hi < hi_ceiling) {
    hi *= 2.0;
    f_hi = f(hi);
  }

  if (f_lo < 0.0 || f_hi > 0.0) {
    std::ostringstream msg;
    msg << "no sign change of the intermediate residual in [" << lo << ", " << hi
        << "] (F(lo)=" << f_lo << ", F(hi)=" << f_hi << ")";
    throw BracketingError(msg.str());
  }
  return {lo, hi, f_lo, f_hi};
}

}  // namespace detail

/// Root of the intermediate residual; see solve().
inline double intermediate_density(const State& left, const State& right, const Params& params,
                                   const SolveOptions& opts = {}) {
  const auto& cfg = opts.quadrature;
  auto f = [&](double r) { return intermediate_residual(r, left, right, params, cfg); };

  Bracket b = detail::bracket_intermediate_density(left, right, params, cfg);
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;
  b = bisect_decreasing(f, b, 1e-14);

  // Pick the better end, then polish with secant-slope Newton steps that
  // stay inside the bracket.
  const bool use_lo = std::abs(b.f_lo) < std::abs(b.f_hi);
  double rho = use_lo ? b.lo : b.hi;
  double f_rho = use_lo ? b.f_lo : b.f_hi;
  for (int k = 0; k < 4 && f_rho != 0.0; ++k) {
    const double h = 1e-7 * rho;
    const double slope = (f(rho + h) - f(rho - h)) / (2.0 * h);
    if (!(slope < 0.0)) break;
    const double next = rho - f_rho / slope;
    if (!(next >= b.lo && next <= b.hi)) break;
    const double f_next = f(next);
    if (!(std::abs(f_next) < std::abs(f_rho))) break;
    rho = next;
    f_rho = f_next;
  }

  if (!(std::abs(f_rho) < opts.tol)) {
    std::ostringstream msg;
    msg << "intermediate density " << rho << " leaves residual " << f_rho << " above tolerance "
        << opts.tol;
    throw RootFindError(msg.str());
  }
  return rho;
}

/**
 * @brief Solve the Riemann problem with data (left, right).
 *
 * Identical data return a zero-strength fan (two degenerate rarefactions,
 * region I). Otherwise star.u is taken from the 1-wave curve.
 */
inline WaveFan solve(const State& left, const State& right, const Params& params,
                     const SolveOptions& opts = {}) {
  validate(left);
  validate(right);
  if (!(opts.tol > 0.0)) throw DomainError("solve: tolerance must be positive");
  opts.quadrature.validate();

  if (left == right) {
    return WaveFan{params,
                   left,
                   detail::make_wave1(left, left, params),
                   left,
                   detail::make_wave2(right, right, params),
                   right,
                   Region::I};
  }

  double rho_star = intermediate_density(left, right, params, opts);
  // Data on a single wave curve: a companion wave of rounding-level strength
  // is snapped to exactly zero so its type does not depend on the last ulp.
  for (double nb : {left.rho, right.rho}) {
    if (rho_star != nb && std::abs(rho_star - nb) <= 8.0 * std::numeric_limits<double>::epsilon() * nb &&
        std::abs(intermediate_residual(nb, left, right, params, opts.quadrature)) < opts.tol) {
      rho_star = nb;
    }
  }
  const State star{rho_star, forward_1_curve_u(left, rho_star, params, opts.quadrature)};
  Wave w1 = detail::make_wave1(left, star, params);
  Wave w2 = detail::make_wave2(star, right, params);
  const Region region = detail::classify(is_shock(w1), is_shock(w2));
  return WaveFan{params, left, std::move(w1), star, std::move(w2), right, region};
}

namespace detail {

// State inside a rarefaction at self-similar coordinate xi.
inline State rarefaction_state(const Rarefaction& fan, const Params& params, double xi,
                               const QuadratureConfig& cfg) {
  if (xi <= fan.xi_begin) return fan.state_begin;
  if (xi >= fan.xi_end) return fan.state_end;

  const double mu = params.mu();
  const double k1 = params.k1();
  const double k2_sq = params.k2() * params.k2();
  auto dw = [&](double rho) {
    const double w = magneto_acoustic_speed(rho, params);
    return (-2.0 * k1 / (rho * rho * rho) + k2_sq / mu) / (2.0 * w);
  };

  if (fan.family == CurveFamily::R1) {
    // Curve through the outer (left) state; lambda_1 decreases with rho.
    const State& outer = fan.state_begin;
    auto u_of = [&](double rho) { return outer.u + rarefaction_integral(rho, outer.rho, params, cfg); };
    auto g = [&](double rho) { return u_of(rho) - magneto_acoustic_speed(rho, params) - xi; };
    auto dg = [&](double rho) { return -magneto_acoustic_speed(rho, params) / rho - dw(rho); };
    const double rho = newton_bisect(g, dg, fan.state_end.rho, outer.rho);
    return {rho, u_of(rho)};
  }

  // R2: curve through the outer (right) state; lambda_2 increases with rho.
  const State& outer = fan.state_end;
  auto u_of = [&](double rho) { return outer.u - rarefaction_integral(rho, outer.rho, params, cfg); };
  auto g = [&](double rho) { return u_of(rho) + magneto_acoustic_speed(rho, params) - xi; };
  auto dg = [&](double rho) { return magneto_acoustic_speed(rho, params) / rho + dw(rho); };
  const double rho = newton_bisect(g, dg, fan.state_begin.rho, outer.rho);
  return {rho, u_of(rho)};
}

inline std::optional<State> sample_wave(const Wave& w, const Params& params, double xi,
                                        const QuadratureConfig& cfg) {
  if (const auto* r = std::get_if<Rarefaction>(&w)) {
    if (xi >= r->xi_begin && xi <= r->xi_end) return rarefaction_state(*r, params, xi, cfg);
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * @brief State of the self-similar solution at xi = x/t.
 *
 * A point exactly on a shock takes the state on the shock's left side.
 */
inline State sample(const WaveFan& fan, double xi, const QuadratureConfig& cfg = {}) {
  if (xi <= highest_speed(fan.wave1)) {
    if (auto s = detail::sample_wave(fan.wave1, fan.params, xi, cfg)) return *s;
    return fan.left;
  }
  if (xi <= highest_speed(fan.wave2)) {
    if (auto s = detail::sample_wave(fan.wave2, fan.params, xi, cfg)) return *s;
    return fan.star;
  }
  return fan.right;
}

inline Profile sample_profile(const WaveFan& fan, const std::vector<double>& xi_grid,
                              const QuadratureConfig& cfg = {}) {
  for (std::size_t i = 1; i < xi_grid.size(); ++i) {
    if (!(xi_grid[i] > xi_grid[i - 1])) {
      throw DomainError("sample_profile: xi grid must be strictly increasing");
    }
  }
  Profile out;
  out.xi_grid = xi_grid;
  out.states.reserve(xi_grid.size());
  for (double xi : xi_grid) out.states.push_back(sample(fan, xi, cfg));
  return out;
}

/// Self-similar coordinates where the solution has a jump or a kink.
inline std::vector<double> breakpoints(const WaveFan& fan) {
  std::vector<double> pts{lowest_speed(fan.wave1), highest_speed(fan.wave1), lowest_speed(fan.wave2),
                          highest_speed(fan.wave2)};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/**
 * @brief Residuals of the self-similar weak formulation for test function psi:
 *
 *   mass     = int (xi - u) rho psi' + int rho psi
 *   momentum = int (xi - u) rho u psi' - int (p + B^2/(2 mu)) psi' + int rho u psi
 *
 * Both vanish for an exact solution. Integration is split at every wave
 * speed and fan edge inside the support of psi.
 */
inline WeakResidual weak_residual(const WaveFan& fan, const Params& params, const TestFunction& psi,
                                  const QuadratureConfig& cfg = {}) {
  std::vector<double> cuts{psi.support_min()};
  for (double p : breakpoints(fan)) {
    if (p > psi.support_min() && p < psi.support_max()) cuts.push_back(p);
  }
  cuts.push_back(psi.support_max());

  QuadratureConfig piece_cfg = cfg;
  piece_cfg.max_subdivisions = std::max(cfg.max_subdivisions, 400);

  WeakResidual r;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    auto mass = [&](double xi) {
      const State s = sample(fan, xi, cfg);
      return (xi - s.u) * s.rho * psi.derivative(xi) + s.rho * psi(xi);
    };
    auto momentum = [&](double xi) {
      const State s = sample(fan, xi, cfg);
      const double m = s.rho * s.u;
      return (xi - s.u) * m * psi.derivative(xi) - total_pressure(s.rho, params) * psi.derivative(xi) +
             m * psi(xi);
    };
    // The residuals cancel to zero, so tolerances are taken relative to the
    // size of the integrand rather than of the result.
    auto scaled = [&](auto&& g) {
      QuadratureConfig rough{1e-300, 1e-6, piece_cfg.max_subdivisions};
      const double size = integrate([&](double xi) { return std::abs(g(xi)); }, a, b, rough).value;
      QuadratureConfig c = piece_cfg;
      c.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * size);
      return integrate(g, a, b, c).value;
    };
    r.mass += scaled(mass);
    r.momentum += scaled(momentum);
  }
  return r;
}

/// Rankine-Hugoniot residuals (mass, momentum) of a shock.
inline std::array<double, 2> rankine_hugoniot_residual(const Shock& s, const Params& params) {
  const FluxVector fl = flux(s.left, params);
  const FluxVector fr = flux(s.right, params);
  return {s.speed * (s.right.rho - s.left.rho) - (fr.mass_flux - fl.mass_flux),
          s.speed * (s.right.momentum() - s.left.momentum()) - (fr.momentum_flux - fl.momentum_flux)};
}

/// Lax inequalities for a shock of its own family.
inline bool satisfies_lax(const Shock& s, const Params& params) {
  const Eigenvalues l = eigenvalues(s.left, params);
  const Eigenvalues r = eigenvalues(s.right, params);
  if (s.family == CurveFamily::S1) return r.lambda1 < s.speed && s.speed < l.lambda1;
  return r.lambda2 < s.speed && s.speed < l.lambda2;
}

}  // namespace cmgd
