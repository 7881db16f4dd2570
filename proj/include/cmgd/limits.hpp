#pragma once

/**
 * @file limits.hpp
 * @brief Sweeps of the exact solver along paths (k1, k2) -> (0, 0).
 *
 * For u_l > u_r the two shocks merge into the delta shock of the transport
 * system: k2 rho* converges to
 *   sqrt(2 mu rho_l rho_r (u_l - u_r)^2) / (sqrt(rho_l) + sqrt(rho_r)),
 * the shock speeds and u* converge to the delta-shock speed, and the mass
 * between the shocks per unit time converges to the delta-shock weight rate.
 * For u_l < u_r the intermediate density vanishes and the rarefaction heads
 * converge to u_l and u_r.
 */

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "exact_riemann.hpp"
#include "model.hpp"
#include "pressureless.hpp"
#include "quadrature.hpp"

namespace cmgd {

/**
 * @brief A path eps -> (k1(eps), k2(eps)) approaching (0, 0) as eps -> 0.
 *
 * Built-in paths are powers c * eps^p; both coefficients must be positive and
 * both exponents positive so the path is strictly decreasing to the origin.
 */
class LimitPath {
 public:
  struct Power {
    double coefficient = 1.0;
    double exponent = 1.0;

    double operator()(double eps) const { return coefficient * std::pow(eps, exponent); }
  };

  LimitPath() = default;
  LimitPath(Power k1, Power k2, std::string name = {}) : k1_(k1), k2_(k2), name_(std::move(name)) {
    if (!(k1.coefficient > 0.0) || !(k2.coefficient > 0.0) || !(k1.exponent > 0.0) ||
        !(k2.exponent > 0.0)) {
      throw DomainError("limit path: coefficients and exponents must be positive");
    }
    if (name_.empty()) name_ = describe();
  }

  /// k1 = eps, k2 = eps.
  static LimitPath linear() { return {{1.0, 1.0}, {1.0, 1.0}, "default"}; }

  double k1(double eps) const { return k1_(eps); }
  double k2(double eps) const { return k2_(eps); }
  const Power& k1_law() const { return k1_; }
  const Power& k2_law() const { return k2_; }
  const std::string& name() const { return name_; }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << k1_.coefficient << "*eps^" << k1_.exponent << "," << k2_.coefficient << "*eps^" << k2_.exponent;
    return os.str();
  }

 private:
  Power k1_{};
  Power k2_{};
  std::string name_ = "default";
};

/**
 * @brief One solve along the path.
 *
 * sigma1/sigma2 are shock speeds, or head speeds for rarefactions. mass_rate
 * is the mass per unit time held between the two shocks and is zero unless
 * both waves are shocks.
 */
struct SweepRow {
  double eps = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double rho_star = 0.0;
  double u_star = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double k2_rho_star = 0.0;
  double mass_rate = 0.0;
  double lambda1_star = 0.0;
  double lambda2_star = 0.0;
  Region region = Region::I;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  State left;
  State right;
  LimitPath path;
  double mu = 1.0;
};

struct SweepOptions {
  double mu = 1.0;
  SolveOptions solve{};
  /// Upper bound on worker threads; 0 uses the hardware concurrency.
  unsigned threads = 1;
};

/**
 * @brief Mass per unit time between the shocks, rho* (sigma2 - sigma1).
 *
 * Evaluated through the equivalent Rankine-Hugoniot form
 * rho_l (u_l - sigma1) + rho_r (sigma2 - u_r), which avoids multiplying a
 * huge rho* by a vanishing speed difference near the limit.
 */
inline double mass_between_shocks(const WaveFan& fan) {
  const auto* s1 = std::get_if<Shock>(&fan.wave1);
  const auto* s2 = std::get_if<Shock>(&fan.wave2);
  if (s1 == nullptr || s2 == nullptr) return 0.0;
  return fan.left.rho * (fan.left.u - s1->speed) + fan.right.rho * (s2->speed - fan.right.u);
}

inline SweepRow make_row(double eps, const WaveFan& fan) {
  SweepRow row;
  row.eps = eps;
  row.k1 = fan.params.k1();
  row.k2 = fan.params.k2();
  row.rho_star = fan.star.rho;
  row.u_star = fan.star.u;
  row.sigma1 = characteristic_speed(fan.wave1);
  row.sigma2 = characteristic_speed(fan.wave2);
  row.k2_rho_star = row.k2 * row.rho_star;
  row.mass_rate = mass_between_shocks(fan);
  const Eigenvalues ev = eigenvalues(fan.star, fan.params);
  row.lambda1_star = ev.lambda1;
  row.lambda2_star = ev.lambda2;
  row.region = fan.region;
  return row;
}

inline WaveFan solve_on_path(const State& left, const State& right, const LimitPath& path, double eps,
                             const SweepOptions& opts) {
  try {
    const Params params(path.k1(eps), path.k2(eps), opts.mu);
    return solve(left, right, params, opts.solve);
  } catch (const Error& e) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sweep failed at eps=" << eps << ": " << e.what();
    throw SweepError(msg.str(), eps);
  }
}

/// One row per eps (strictly decreasing, positive); rows are solved concurrently.
inline SweepReport sweep(const State& left, const State& right, const LimitPath& path,
                         const std::vector<double>& eps_list, const SweepOptions& opts = {}) {
  validate(left);
  validate(right);
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0) || !std::isfinite(eps_list[i])) {
      throw DomainError("sweep: eps values must be positive and finite");
    }
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw DomainError("sweep: eps values must be strictly decreasing");
    }
  }

  SweepReport report{{}, left, right, path, opts.mu};
  report.rows.resize(eps_list.size());

  unsigned workers = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, eps_list.size())));

  auto run_row = [&](std::size_t i) {
    report.rows[i] = make_row(eps_list[i], solve_on_path(left, right, path, eps_list[i], opts));
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < eps_list.size(); ++i) run_row(i);
    return report;
  }

  // Strided partition; each row slot is written by exactly one worker.
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < eps_list.size(); i += workers) run_row(i);
    }));
  }
  std::exception_ptr first_error;
  for (auto& job : jobs) {
    try {
      job.get();
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return report;
}

/// Gap sequences are accepted as monotone when each entry is no larger than
/// the previous one, or already at the floating-point floor.
inline constexpr double kGapFloor = 1e-14;

inline bool nonincreasing(const std::vector<double>& v, double floor = kGapFloor) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] > floor) return false;
  }
  return true;
}

struct DeltaLimitTargets {
  double k2_rho_star = 0.0;
  double sigma = 0.0;
  double mass_rate = 0.0;
};

struct DeltaLimitDiagnostics {
  DeltaLimitTargets targets;
  // Per-row gaps, ordered like report.rows.
  std::vector<double> k2_rho_star_gap;
  std::vector<double> sigma1_gap;
  std::vector<double> sigma2_gap;
  std::vector<double> u_star_gap;
  std::vector<double> mass_rate_gap;
  // Gaps at the smallest eps.
  double final_k2_rho_star_gap = 0.0;
  double final_sigma1_gap = 0.0;
  double final_sigma2_gap = 0.0;
  double final_u_star_gap = 0.0;
  double final_mass_rate_gap = 0.0;
  bool k2_rho_star_monotone = false;
  bool sigma1_monotone = false;
  bool sigma2_monotone = false;
  bool u_star_monotone = false;
  bool mass_rate_monotone = false;
  /// rho* nondecreasing as eps decreases.
  bool concentration_monotone = false;
};

/// Limit values for data with u_l > u_r; sigma and the weight rate come from the transport solver.
inline DeltaLimitTargets delta_limit_targets(const State& left, const State& right, double mu) {
  const TransportSolution tr = solve_transport({left.rho, left.u}, {right.rho, right.u});
  const auto* d = std::get_if<DeltaShock>(&tr.wave);
  if (d == nullptr) throw PreconditionError("delta limit needs u_left > u_right");
  const double sl = std::sqrt(left.rho);
  const double sr = std::sqrt(right.rho);
  const double du = left.u - right.u;
  DeltaLimitTargets t;
  t.k2_rho_star = std::sqrt(2.0 * mu * left.rho * right.rho * du * du) / (sl + sr);
  t.sigma = d->sigma;
  t.mass_rate = d->weight_rate;
  return t;
}

inline DeltaLimitDiagnostics check_delta_limit(const SweepReport& report) {
  if (!(report.left.u > report.right.u)) {
    throw PreconditionError("check_delta_limit: data must satisfy u_left > u_right (delta-shock case)");
  }
  if (report.rows.empty()) throw PreconditionError("check_delta_limit: empty sweep");
  if (report.rows.back().region != Region::IV) {
    throw PreconditionError("check_delta_limit: smallest-eps solution is not a two-shock (region IV) fan");
  }

  DeltaLimitDiagnostics d;
  d.targets = delta_limit_targets(report.left, report.right, report.mu);
  for (const SweepRow& r : report.rows) {
    d.k2_rho_star_gap.push_back(std::abs(r.k2_rho_star - d.targets.k2_rho_star));
    d.sigma1_gap.push_back(std::abs(r.sigma1 - d.targets.sigma));
    d.sigma2_gap.push_back(std::abs(r.sigma2 - d.targets.sigma));
    d.u_star_gap.push_back(std::abs(r.u_star - d.targets.sigma));
    d.mass_rate_gap.push_back(std::abs(r.mass_rate - d.targets.mass_rate));
  }
  d.final_k2_rho_star_gap = d.k2_rho_star_gap.back();
  d.final_sigma1_gap = d.sigma1_gap.back();
  d.final_sigma2_gap = d.sigma2_gap.back();
  d.final_u_star_gap = d.u_star_gap.back();
  d.final_mass_rate_gap = d.mass_rate_gap.back();
  d.k2_rho_star_monotone = nonincreasing(d.k2_rho_star_gap);
  d.sigma1_monotone = nonincreasing(d.sigma1_gap);
  d.sigma2_monotone = nonincreasing(d.sigma2_gap);
  d.u_star_monotone = nonincreasing(d.u_star_gap);
  d.mass_rate_monotone = nonincreasing(d.mass_rate_gap);

  d.concentration_monotone = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].rho_star < report.rows[i - 1].rho_star) d.concentration_monotone = false;
  }
  return d;
}

struct VacuumLimitDiagnostics {
  double final_rho_star = 0.0;
  /// |lambda1(left) - u_l| and |lambda2(right) - u_r| at the smallest eps.
  double head1_gap = 0.0;
  double head2_gap = 0.0;
  /// max |u(xi) - xi| over the interior grid at the smallest eps.
  double max_velocity_gap = 0.0;
  std::vector<double> xi_grid;
  std::vector<double> velocity;
  std::vector<double> rho_star;
  /// rho* nonincreasing as eps decreases.
  bool rho_star_monotone = false;
};

/**
 * @brief Vacuum-limit diagnostics; the fan at the smallest eps is sampled at
 * n_xi points strictly inside (u_l, u_r).
 */
inline VacuumLimitDiagnostics check_vacuum_limit(const SweepReport& report, int n_xi = 101,
                                                 const QuadratureConfig& cfg = {}) {
  if (!(report.left.u < report.right.u)) {
    throw PreconditionError("check_vacuum_limit: data must satisfy u_left < u_right (vacuum case)");
  }
  if (report.rows.empty()) throw PreconditionError("check_vacuum_limit: empty sweep");
  if (report.rows.back().region != Region::I) {
    throw PreconditionError("check_vacuum_limit: smallest-eps solution is not a two-rarefaction (region I) fan");
  }
  if (n_xi < 1) throw DomainError("check_vacuum_limit: need at least one sample point");

  VacuumLimitDiagnostics d;
  for (const SweepRow& r : report.rows) d.rho_star.push_back(r.rho_star);
  d.rho_star_monotone = true;
  for (std::size_t i = 1; i < d.rho_star.size(); ++i) {
    if (d.rho_star[i] > d.rho_star[i - 1]) d.rho_star_monotone = false;
  }

  const SweepRow& last = report.rows.back();
  d.final_rho_star = last.rho_star;
  d.head1_gap = std::abs(last.sigma1 - report.left.u);
  d.head2_gap = std::abs(last.sigma2 - report.right.u);

  const Params params(last.k1, last.k2, report.mu);
  const WaveFan fan = solve(report.left, report.right, params);
  const double a = report.left.u;
  const double b = report.right.u;
  for (int j = 1; j <= n_xi; ++j) {
    const double xi = a + (b - a) * j / (n_xi + 1);
    const State s = sample(fan, xi, cfg);
    d.xi_grid.push_back(xi);
    d.velocity.push_back(s.u);
    d.max_velocity_gap = std::max(d.max_velocity_gap, std::abs(s.u - xi));
  }
  return d;
}

/**
 * @brief Closed-form integral of sqrt(A + B/s^2)/s over [rho_star, rho]:
 *
 *   -S(rho) + sqrt(A) ln(S(rho) + sqrt(A)) + sqrt(A) ln(rho)
 *   +S(rho_star) - sqrt(A) ln(S(rho_star) + sqrt(A)) - sqrt(A) ln(rho_star),
 *
 * with S(r) = sqrt(A + B/r^2). Freezing the magnetic coefficient at its
 * largest value on the interval makes this an upper bound for the
 * rarefaction integral.
 */
inline double rarefaction_bound(double rho, double rho_star, double A, double B) {
  if (!(A > 0.0) || !(B >= 0.0) || !std::isfinite(A) || !std::isfinite(B)) {
    throw DomainError("rarefaction_bound: need A > 0 and B >= 0");
  }
  if (!(rho_star > 0.0) || !(rho_star <= rho) || !std::isfinite(rho)) {
    throw DomainError("rarefaction_bound: need 0 < rho_star <= rho");
  }
  if (rho == rho_star) return 0.0;
  const double sa = std::sqrt(A);
  auto antiderivative = [&](double r) {
    const double s = std::sqrt(A + B / (r * r));
    return -s + sa * std::log(s + sa) + sa * std::log(r);
  };
  return antiderivative(rho) - antiderivative(rho_star);
}

}  // namespace cmgd
