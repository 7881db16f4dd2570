#pragma once

/**
 * @file fv_oracle.hpp
 * @brief First-order finite-volume scheme with a local Lax-Friedrichs
 * (Rusanov) flux. Used as an oracle for the exact solver, so it shares only
 * the point-wise model functions with it.
 */

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "exact_riemann.hpp"
#include "model.hpp"

namespace cmgd {

class Grid {
 public:
  Grid(double x_min, double x_max, int n_cells) : x_min_(x_min), x_max_(x_max), n_cells_(n_cells) {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
      throw DomainError("grid: need finite x_min < x_max");
    }
    if (n_cells < 2) throw DomainError("grid: need at least two cells");
  }

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  int n_cells() const noexcept { return n_cells_; }
  double dx() const noexcept { return (x_max_ - x_min_) / n_cells_; }
  double center(int i) const noexcept { return x_min_ + (i + 0.5) * dx(); }

 private:
  double x_min_;
  double x_max_;
  int n_cells_;
};

/// Cell averages of density and momentum.
struct DiscreteField {
  Grid grid;
  std::vector<double> rho;
  std::vector<double> momentum;
  double time = 0.0;
  int steps = 0;

  double total_mass() const {
    double s = 0.0;
    for (double r : rho) s += r;
    return s * grid.dx();
  }
  double total_momentum() const {
    double s = 0.0;
    for (double m : momentum) s += m;
    return s * grid.dx();
  }
};

struct FvOptions {
  double cfl = 0.5;
  /// Safety cap on the number of time steps.
  long max_steps = 50'000'000;
};

/// Cell averages of the Riemann initial data; the cell containing x = 0 gets the exact mixture.
inline DiscreteField riemann_initial_field(const State& left, const State& right, const Grid& grid) {
  validate(left);
  validate(right);
  DiscreteField f{grid, {}, {}, 0.0, 0};
  f.rho.resize(grid.n_cells());
  f.momentum.resize(grid.n_cells());
  const double dx = grid.dx();
  for (int i = 0; i < grid.n_cells(); ++i) {
    const double a = grid.x_min() + i * dx;
    const double left_fraction = std::clamp(-a / dx, 0.0, 1.0);
    f.rho[i] = left_fraction * left.rho + (1.0 - left_fraction) * right.rho;
    f.momentum[i] = left_fraction * left.momentum() + (1.0 - left_fraction) * right.momentum();
  }
  return f;
}

namespace detail {

struct Conserved {
  double rho;
  double m;
};

inline FluxVector conserved_flux(const Conserved& q, const Params& params) {
  return flux(State{q.rho, q.m / q.rho}, params);
}

inline double max_speed(const Conserved& q, const Params& params) {
  return std::abs(q.m / q.rho) + magneto_acoustic_speed(q.rho, params);
}

inline FluxVector rusanov_flux(const Conserved& l, const Conserved& r, const Params& params) {
  const FluxVector fl = conserved_flux(l, params);
  const FluxVector fr = conserved_flux(r, params);
  const double a = std::max(max_speed(l, params), max_speed(r, params));
  return {0.5 * (fl.mass_flux + fr.mass_flux) - 0.5 * a * (r.rho - l.rho),
          0.5 * (fl.momentum_flux + fr.momentum_flux) - 0.5 * a * (r.m - l.m)};
}

}  // namespace detail

/**
 * @brief Advance a field to t_end with outflow (zero-gradient) boundaries.
 *
 * dt = cfl * dx / max|lambda|, the last step shortened to land on t_end.
 * A non-positive density aborts with PositivityError.
 */
inline DiscreteField advance(DiscreteField field, const Params& params, double t_end,
                             const FvOptions& opts = {}) {
  if (!(opts.cfl > 0.0 && opts.cfl <= 0.9)) throw DomainError("fv: cfl must lie in (0, 0.9]");
  if (!(t_end >= field.time) || !std::isfinite(t_end)) throw DomainError("fv: t_end must not precede field time");

  const int n = field.grid.n_cells();
  const double dx = field.grid.dx();
  std::vector<FluxVector> face(n + 1);

  while (field.time < t_end) {
    if (field.steps >= opts.max_steps) throw DomainError("fv: step budget exhausted");
    double smax = 0.0;
    for (int i = 0; i < n; ++i) {
      smax = std::max(smax, detail::max_speed({field.rho[i], field.momentum[i]}, params));
    }
    double dt = opts.cfl * dx / smax;
    if (field.time + dt >= t_end) dt = t_end - field.time;

    for (int f = 0; f <= n; ++f) {
      const int il = std::max(f - 1, 0);
      const int ir = std::min(f, n - 1);
      face[f] = detail::rusanov_flux({field.rho[il], field.momentum[il]},
                                     {field.rho[ir], field.momentum[ir]}, params);
    }
    const double r = dt / dx;
    for (int i = 0; i < n; ++i) {
      field.rho[i] -= r * (face[i + 1].mass_flux - face[i].mass_flux);
      field.momentum[i] -= r * (face[i + 1].momentum_flux - face[i].momentum_flux);
      if (!(field.rho[i] > 0.0)) {
        std::ostringstream msg;
        msg << "fv: density " << field.rho[i] << " in cell " << i << " at t=" << field.time + dt;
        throw PositivityError(msg.str(), static_cast<std::size_t>(i), field.time + dt);
      }
    }
    field.time = (field.time + dt >= t_end) ? t_end : field.time + dt;
    ++field.steps;
  }
  return field;
}

inline DiscreteField evolve(const State& left, const State& right, const Params& params, const Grid& grid,
                            double cfl, double t_end) {
  if (!(t_end > 0.0)) throw DomainError("fv: t_end must be positive");
  return advance(riemann_initial_field(left, right, grid), params, t_end, FvOptions{cfl});
}

/// Sum over cells of dx (|rho_i - rho(x_i/t)| + |m_i - m(x_i/t)|) against the exact fan.
inline double l1_distance(const DiscreteField& field, const WaveFan& fan, double t,
                          const QuadratureConfig& cfg = {}) {
  if (!(t > 0.0)) throw DomainError("l1_distance: time must be positive");
  double sum = 0.0;
  for (int i = 0; i < field.grid.n_cells(); ++i) {
    const State s = sample(fan, field.grid.center(i) / t, cfg);
    sum += std::abs(field.rho[i] - s.rho) + std::abs(field.momentum[i] - s.momentum());
  }
  return sum * field.grid.dx();
}

/// Cell-centre sampling of the exact fan at time t, as a field.
inline DiscreteField sample_field(const WaveFan& fan, const Grid& grid, double t,
                                  const QuadratureConfig& cfg = {}) {
  DiscreteField f{grid, std::vector<double>(grid.n_cells()), std::vector<double>(grid.n_cells()), t, 0};
  for (int i = 0; i < grid.n_cells(); ++i) {
    const State s = sample(fan, grid.center(i) / t, cfg);
    f.rho[i] = s.rho;
    f.momentum[i] = s.momentum();
  }
  return f;
}

}  // namespace cmgd
