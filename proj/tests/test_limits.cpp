#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <cmgd/limits.hpp>

using namespace cmgd;

namespace {

const State kLeftIV{1.0, 1.0};
const State kRightIV{1.0, -1.0};
const std::vector<double> kEps{1e-2, 1e-4, 1e-6, 1e-8, 1e-10};

}  // namespace

TEST(LimitPath, DefaultAndCustom) {
  const LimitPath def = LimitPath::linear();
  EXPECT_EQ(def.k1(1e-3), 1e-3);
  EXPECT_EQ(def.k2(1e-3), 1e-3);
  EXPECT_EQ(def.name(), "default");

  const LimitPath p({2.0, 2.0}, {1.0, 0.5});
  EXPECT_DOUBLE_EQ(p.k1(1e-2), 2e-4);
  EXPECT_DOUBLE_EQ(p.k2(1e-2), 0.1);
  EXPECT_FALSE(p.name().empty());

  EXPECT_THROW(LimitPath({0.0, 1.0}, {1.0, 1.0}), DomainError);
  EXPECT_THROW(LimitPath({1.0, 1.0}, {1.0, 0.0}), DomainError);
}

TEST(LimitPath, StrictlyDecreasingToZero) {
  const LimitPath p({3.0, 1.5}, {0.5, 2.0});
  double prev1 = p.k1(1.0), prev2 = p.k2(1.0);
  for (double eps = 0.5; eps > 1e-12; eps *= 0.5) {
    EXPECT_LT(p.k1(eps), prev1);
    EXPECT_LT(p.k2(eps), prev2);
    EXPECT_GT(p.k1(eps), 0.0);
    prev1 = p.k1(eps);
    prev2 = p.k2(eps);
  }
}

TEST(Sweep, SingleUnitRow) {
  const SweepReport rep = sweep(kLeftIV, kRightIV, LimitPath::linear(), {1.0});
  ASSERT_EQ(rep.rows.size(), 1u);
  const SweepRow& r = rep.rows[0];
  EXPECT_NEAR(r.rho_star, 2.0, 1e-12);
  EXPECT_NEAR(r.sigma1, -1.0, 1e-12);
  EXPECT_NEAR(r.sigma2, 1.0, 1e-12);
  EXPECT_NEAR(r.mass_rate, r.rho_star * (r.sigma2 - r.sigma1), 1e-12);
  EXPECT_EQ(r.region, Region::IV);
}

TEST(Sweep, IdenticalDataGiveZeroMassRate) {
  const SweepReport rep = sweep({1.2, 0.3}, {1.2, 0.3}, LimitPath::linear(), {1.0, 1e-3, 1e-6});
  for (const SweepRow& r : rep.rows) {
    EXPECT_EQ(r.mass_rate, 0.0);
    EXPECT_EQ(r.rho_star, 1.2);
    EXPECT_EQ(r.u_star, 0.3);
  }
}

TEST(Sweep, ConcentrationApproachesTarget) {
  const SweepReport rep = sweep(kLeftIV, kRightIV, LimitPath::linear(), {1e-2, 1e-4, 1e-6, 1e-8});
  EXPECT_NEAR(rep.rows.back().k2_rho_star, std::numbers::sqrt2, 1e-3);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    EXPECT_LT(std::abs(rep.rows[i].k2_rho_star - std::numbers::sqrt2),
              std::abs(rep.rows[i - 1].k2_rho_star - std::numbers::sqrt2));
  }
}

TEST(Sweep, ValidatesEpsList) {
  EXPECT_THROW(sweep(kLeftIV, kRightIV, LimitPath::linear(), {1e-2, 1e-2}), DomainError);
  EXPECT_THROW(sweep(kLeftIV, kRightIV, LimitPath::linear(), {1e-4, 1e-2}), DomainError);
  EXPECT_THROW(sweep(kLeftIV, kRightIV, LimitPath::linear(), {1.0, 0.0}), DomainError);
  EXPECT_THROW(sweep(kLeftIV, kRightIV, LimitPath::linear(), {-1.0}), DomainError);
}

TEST(Sweep, ThreadedMatchesSerial) {
  SweepOptions serial, threaded;
  threaded.threads = 4;
  const auto a = sweep(kLeftIV, {2.0, -0.5}, LimitPath::linear(), kEps, serial);
  const auto b = sweep(kLeftIV, {2.0, -0.5}, LimitPath::linear(), kEps, threaded);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].rho_star, b.rows[i].rho_star);
    EXPECT_EQ(a.rows[i].u_star, b.rows[i].u_star);
    EXPECT_EQ(a.rows[i].eps, kEps[i]);
  }
}

TEST(Sweep, ErrorsCarryTheOffendingEps) {
  SweepOptions opts;
  opts.solve.tol = 0.0;
  try {
    sweep(kLeftIV, {3.0, -2.0}, LimitPath::linear(), {0.5}, opts);
    FAIL() << "expected SweepError";
  } catch (const SweepError& e) {
    EXPECT_EQ(e.eps(), 0.5);
  }
}

TEST(DeltaLimit, SymmetricDataConverge) {
  const SweepReport rep = sweep(kLeftIV, kRightIV, LimitPath::linear(), kEps);
  const DeltaLimitDiagnostics d = check_delta_limit(rep);
  EXPECT_NEAR(d.targets.k2_rho_star, std::numbers::sqrt2, 1e-15);
  EXPECT_EQ(d.targets.sigma, 0.0);
  EXPECT_EQ(d.targets.mass_rate, 2.0);
  EXPECT_LT(d.final_k2_rho_star_gap, 1e-3);
  EXPECT_LT(d.final_sigma1_gap, 1e-3);
  EXPECT_LT(d.final_sigma2_gap, 1e-3);
  EXPECT_LT(d.final_u_star_gap, 1e-3);
  EXPECT_LT(d.final_mass_rate_gap, 1e-3);
  EXPECT_TRUE(d.k2_rho_star_monotone);
  EXPECT_TRUE(d.sigma1_monotone);
  EXPECT_TRUE(d.sigma2_monotone);
  EXPECT_TRUE(d.u_star_monotone);
  EXPECT_TRUE(d.mass_rate_monotone);
  EXPECT_TRUE(d.concentration_monotone);
}

TEST(DeltaLimit, UnequalDensityTargets) {
  const DeltaLimitTargets t = delta_limit_targets({1.0, 1.0}, {4.0, -1.0}, 1.0);
  EXPECT_DOUBLE_EQ(t.sigma, -1.0 / 3.0);
  EXPECT_EQ(t.mass_rate, 4.0);
  EXPECT_DOUBLE_EQ(t.k2_rho_star, std::sqrt(2.0 * 4.0 * 4.0) / 3.0);

  const SweepReport rep = sweep({1.0, 1.0}, {4.0, -1.0}, LimitPath::linear(), kEps);
  const DeltaLimitDiagnostics d = check_delta_limit(rep);
  EXPECT_LT(d.final_sigma1_gap, 1e-3);
  EXPECT_LT(d.final_sigma2_gap, 1e-3);
  EXPECT_LT(d.final_u_star_gap, 1e-3);
  EXPECT_LT(d.final_mass_rate_gap, 1e-2);
  EXPECT_LT(d.final_k2_rho_star_gap, 1e-3);
}

TEST(DeltaLimit, UnitEpsIsFarFromTheLimit) {
  const SweepReport rep = sweep(kLeftIV, kRightIV, LimitPath::linear(), {1.0});
  const DeltaLimitDiagnostics d = check_delta_limit(rep);
  EXPECT_NEAR(d.final_sigma1_gap, 1.0, 1e-12);
  EXPECT_NEAR(d.final_sigma2_gap, 1.0, 1e-12);
  EXPECT_NEAR(d.final_mass_rate_gap, 2.0, 1e-12);
}

TEST(DeltaLimit, TargetsAgreeWithTransportSolver) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> r(0.1, 10.0), u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    State l{r(rng), u(rng)}, rt{r(rng), u(rng)};
    if (l.u <= rt.u) std::swap(l.u, rt.u);
    if (l.u == rt.u) continue;
    const DeltaLimitTargets t = delta_limit_targets(l, rt, 1.0);
    const auto sol = solve_transport({l.rho, l.u}, {rt.rho, rt.u});
    const auto& d = std::get<DeltaShock>(sol.wave);
    EXPECT_NEAR(t.sigma, d.sigma, 1e-12 * (1 + std::abs(d.sigma)));
    EXPECT_NEAR(t.mass_rate, d.weight_rate, 1e-12 * d.weight_rate);
  }
}

TEST(DeltaLimit, Preconditions) {
  const SweepReport vac = sweep({1.0, -1.0}, {1.0, 1.0}, LimitPath::linear(), {1e-2});
  EXPECT_THROW(check_delta_limit(vac), PreconditionError);
  // u_l > u_r but a weak jump at eps = 1 is not yet two shocks.
  const SweepReport weak = sweep({1.0, 0.1}, {4.0, 0.0}, LimitPath::linear(), {1.0});
  ASSERT_NE(weak.rows.back().region, Region::IV);
  EXPECT_THROW(check_delta_limit(weak), PreconditionError);
}

TEST(DeltaLimit, ShockGapClosesWithBoundedMass) {
  const SweepReport rep = sweep({2.0, 0.5}, {0.5, -1.5}, LimitPath::linear(), kEps);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    EXPECT_LT(rep.rows[i].sigma2 - rep.rows[i].sigma1, rep.rows[i - 1].sigma2 - rep.rows[i - 1].sigma1);
    EXPECT_LT(rep.rows[i].k2 * rep.rows[i].rho_star * (rep.rows[i].sigma2 - rep.rows[i].sigma1), 10.0);
  }
  EXPECT_NEAR(rep.rows.back().mass_rate, std::sqrt(2.0 * 0.5) * 2.0, 1e-3);
}

TEST(VacuumLimit, DensityAndHeadSpeeds) {
  const SweepReport rep = sweep({1.0, -1.0}, {1.0, 1.0}, LimitPath::linear(), kEps);
  const VacuumLimitDiagnostics d = check_vacuum_limit(rep);
  EXPECT_LT(d.final_rho_star, 1e-3);
  EXPECT_LT(d.head1_gap, 1e-3);
  EXPECT_LT(d.head2_gap, 1e-3);
  EXPECT_TRUE(d.rho_star_monotone);
  EXPECT_EQ(d.xi_grid.size(), 101u);
  for (double xi : d.xi_grid) {
    EXPECT_GT(xi, -1.0);
    EXPECT_LT(xi, 1.0);
  }
}

TEST(VacuumLimit, UnitEpsStarIsBoundedAwayFromZero) {
  const SweepReport rep = sweep({1.0, -1.0}, {1.0, 1.0}, LimitPath::linear(), {1.0});
  EXPECT_GT(rep.rows[0].rho_star, 0.1);
  EXPECT_EQ(rep.rows[0].region, Region::I);
}

TEST(VacuumLimit, Preconditions) {
  const SweepReport iv = sweep(kLeftIV, kRightIV, LimitPath::linear(), {1e-2});
  EXPECT_THROW(check_vacuum_limit(iv), PreconditionError);
  const SweepReport same = sweep({1.0, 0.5}, {2.0, 0.5}, LimitPath::linear(), {1e-2});
  EXPECT_THROW(check_vacuum_limit(same), PreconditionError);
  EXPECT_THROW(check_delta_limit(same), PreconditionError);
}

TEST(VacuumLimit, OtherPathsAlsoEmptyTheMiddle) {
  for (const LimitPath& path : {LimitPath({1.0, 2.0}, {1.0, 1.0}), LimitPath({1.0, 1.0}, {1.0, 2.0})}) {
    const SweepReport rep = sweep({1.0, -1.0}, {1.0, 1.0}, path, {1e-1, 1e-2, 1e-3, 1e-4});
    const VacuumLimitDiagnostics d = check_vacuum_limit(rep);
    EXPECT_TRUE(d.rho_star_monotone) << path.name();
    EXPECT_LT(d.final_rho_star, rep.rows.front().rho_star) << path.name();
  }
}

TEST(RarefactionBound, Examples) {
  EXPECT_EQ(rarefaction_bound(1.7, 1.7, 1.0, 1.0), 0.0);
  EXPECT_NEAR(rarefaction_bound(std::numbers::e, 1.0, 1.0, 0.0), 1.0, 1e-15);
  // 40-digit reference for the integral of sqrt(1 + 1/s^2)/s over [1, 2].
  EXPECT_NEAR(rarefaction_bound(2.0, 1.0, 1.0, 1.0), 0.85844146178246751786, 1e-12);
  EXPECT_NEAR(rarefaction_bound(2.0, 1.0, 1.0, 1.0),
              integrate([](double s) { return std::sqrt(1.0 + 1.0 / (s * s)) / s; }, 1.0, 2.0).value, 1e-12);
  EXPECT_THROW(rarefaction_bound(1.0, 2.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(rarefaction_bound(2.0, 1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(rarefaction_bound(2.0, 1.0, 1.0, -1.0), DomainError);
}

// With the magnetic coefficient frozen at its largest value the bound dominates
// the rarefaction integral from rho* up to rho_l.
TEST(RarefactionBound, DominatesTheRarefactionIntegral) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Params p(0.1 + 9.9 * unit(rng), 0.1 + 9.9 * unit(rng), 0.1 + 9.9 * unit(rng));
    const double rho_l = 0.1 + 9.9 * unit(rng);
    const double rho_star = rho_l * std::pow(10.0, -6.0 * unit(rng));
    const double A = p.k2() * p.k2() * rho_l / p.mu();
    const double bound = rarefaction_bound(rho_l, rho_star, A, p.k1());
    const double value = rarefaction_integral(rho_star, rho_l, p);
    EXPECT_LE(value, bound * (1 + 1e-12));
  }
}

TEST(Monotone, FloorAcceptsRoundingNoise) {
  EXPECT_TRUE(nonincreasing({1.0, 0.5, 0.5, 0.1}));
  EXPECT_FALSE(nonincreasing({1.0, 0.5, 0.6}));
  EXPECT_TRUE(nonincreasing({0.0, 3e-15, 0.0}));
  EXPECT_FALSE(nonincreasing({0.0, 1e-10}));
}
