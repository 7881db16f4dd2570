#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include <cmgd/model.hpp>

using namespace cmgd;

namespace {

const Params kUnit{1.0, 1.0, 1.0};

}  // namespace

TEST(Params, RejectsNonPositiveOrNonFinite) {
  EXPECT_THROW(Params(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(Params(1.0, -1.0, 1.0), DomainError);
  EXPECT_THROW(Params(1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(Params(std::nan(""), 1.0, 1.0), DomainError);
  EXPECT_THROW(Params(1.0, std::numeric_limits<double>::infinity(), 1.0), DomainError);
  EXPECT_NO_THROW(Params(1e-30, 1e-30, 1e-30));
}

TEST(Pressure, Examples) {
  EXPECT_EQ(pressure(1.0, Params(1, 1, 1)), -1.0);
  EXPECT_EQ(pressure(2.0, Params(3, 1, 1)), -1.5);
  EXPECT_EQ(pressure(0.25, Params(1, 1, 1)), -4.0);
  EXPECT_THROW(pressure(0.0, kUnit), DomainError);
  EXPECT_THROW(pressure(-1.0, kUnit), DomainError);
}

TEST(MagneticField, Examples) {
  EXPECT_EQ(magnetic_field(2.0, Params(1, 0.5, 1)), 1.0);
  EXPECT_EQ(magnetic_field(1.0, Params(1, 1, 1)), 1.0);
  EXPECT_EQ(magnetic_field(3.0, Params(1, 2, 1)), 6.0);
  EXPECT_THROW(magnetic_field(0.0, kUnit), DomainError);
}

TEST(MagnetoAcousticSpeed, Examples) {
  EXPECT_NEAR(magneto_acoustic_speed(1.0, kUnit), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(magneto_acoustic_speed(4.0, kUnit), 2.0155644371, 1e-10);
  EXPECT_NEAR(magneto_acoustic_speed(1.0, Params(4, 3, 1)), 3.6055512755, 1e-10);
  EXPECT_THROW(magneto_acoustic_speed(-2.0, kUnit), DomainError);
}

TEST(MagnetoAcousticSpeed, SoundAndAlfvenParts) {
  const Params p(2.0, 0.7, 1.3);
  const double rho = 1.9;
  const double c2 = p.k1() / (rho * rho);
  const double b = magnetic_field(rho, p);
  const double b2 = b * b / (p.mu() * rho);
  EXPECT_NEAR(magneto_acoustic_speed(rho, p), std::sqrt(c2 + b2), 1e-15);
}

TEST(Eigenvalues, Examples) {
  const Eigenvalues e0 = eigenvalues({1.0, 0.0}, kUnit);
  EXPECT_NEAR(e0.lambda1, -std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(e0.lambda2, std::sqrt(2.0), 1e-15);
  const Eigenvalues e5 = eigenvalues({1.0, 5.0}, kUnit);
  EXPECT_NEAR(e5.lambda1, 5.0 - std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(e5.lambda2, 5.0 + std::sqrt(2.0), 1e-14);
  const Eigenvalues e2 = eigenvalues({2.0, 0.0}, kUnit);
  EXPECT_EQ(e2.lambda1, -1.5);
  EXPECT_EQ(e2.lambda2, 1.5);
}

TEST(Flux, Examples) {
  const FluxVector a = flux({1.0, 0.0}, kUnit);
  EXPECT_EQ(a.mass_flux, 0.0);
  EXPECT_EQ(a.momentum_flux, -0.5);
  const FluxVector b = flux({1.0, 2.0}, kUnit);
  EXPECT_EQ(b.mass_flux, 2.0);
  EXPECT_EQ(b.momentum_flux, 3.5);
  const FluxVector c = flux({2.0, 1.0}, Params(2, 1, 2));
  EXPECT_EQ(c.mass_flux, 2.0);
  EXPECT_EQ(c.momentum_flux, 2.0);
  EXPECT_THROW(flux({0.0, 1.0}, kUnit), DomainError);
}

TEST(Flux, MomentumFluxMatchesPressurePlusMagneticTerm) {
  const Params p(0.3, 1.7, 0.9);
  for (double rho : {0.1, 0.5, 1.0, 3.0, 20.0}) {
    const State s{rho, -0.8};
    const double b = magnetic_field(rho, p);
    const double expected = pressure(rho, p) + rho * s.u * s.u + b * b / (2.0 * p.mu());
    EXPECT_NEAR(flux(s, p).momentum_flux, expected, 1e-14 * (1.0 + std::abs(expected)));
  }
}

class ModelProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20241016};
  std::uniform_real_distribution<double> log_rho{std::log(0.05), std::log(20.0)};
  std::uniform_real_distribution<double> vel{-5.0, 5.0};
  std::uniform_real_distribution<double> log_par{std::log(0.1), std::log(10.0)};

  Params random_params() { return {std::exp(log_par(rng)), std::exp(log_par(rng)), std::exp(log_par(rng))}; }
  State random_state() { return {std::exp(log_rho(rng)), vel(rng)}; }
};

TEST_F(ModelProperties, StrictHyperbolicity) {
  for (int i = 0; i < 500; ++i) {
    const Params p = random_params();
    const State s = random_state();
    const Eigenvalues e = eigenvalues(s, p);
    EXPECT_LT(e.lambda1, e.lambda2);
    EXPECT_NEAR(e.lambda2 - e.lambda1, 2.0 * magneto_acoustic_speed(s.rho, p), 1e-12 * (e.lambda2 - e.lambda1));
  }
}

TEST_F(ModelProperties, GalileanShiftIsExact) {
  for (int i = 0; i < 200; ++i) {
    const Params p = random_params();
    const State s = random_state();
    const double a = vel(rng);
    const Eigenvalues e = eigenvalues(s, p);
    const Eigenvalues es = eigenvalues({s.rho, s.u + a}, p);
    const double w = magneto_acoustic_speed(s.rho, p);
    EXPECT_EQ(es.lambda1, (s.u + a) - w);
    EXPECT_EQ(es.lambda2, (s.u + a) + w);
    EXPECT_NEAR(es.lambda1 - e.lambda1, a, 1e-12 * (1.0 + std::abs(a) + w));
  }
}

// Eigenvalues of the finite-difference Jacobian of the flux in conserved variables (rho, m).
TEST_F(ModelProperties, FluxJacobianEigenvalues) {
  for (int i = 0; i < 200; ++i) {
    const Params p = random_params();
    const State s = random_state();
    const double rho = s.rho;
    const double m = s.momentum();
    auto f = [&](double r, double mm) { return flux({r, mm / r}, p); };
    const double hr = 1e-6 * rho;
    const double hm = 1e-6 * std::max(1.0, std::abs(m));
    const FluxVector fr_p = f(rho + hr, m), fr_m = f(rho - hr, m);
    const FluxVector fm_p = f(rho, m + hm), fm_m = f(rho, m - hm);
    const double a11 = (fr_p.mass_flux - fr_m.mass_flux) / (2 * hr);
    const double a12 = (fm_p.mass_flux - fm_m.mass_flux) / (2 * hm);
    const double a21 = (fr_p.momentum_flux - fr_m.momentum_flux) / (2 * hr);
    const double a22 = (fm_p.momentum_flux - fm_m.momentum_flux) / (2 * hm);
    const double tr = a11 + a22;
    const double det = a11 * a22 - a12 * a21;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const Eigenvalues e = eigenvalues(s, p);
    const double scale = 1.0 + std::abs(e.lambda1) + std::abs(e.lambda2);
    EXPECT_NEAR(tr / 2.0 - disc, e.lambda1, 1e-6 * scale);
    EXPECT_NEAR(tr / 2.0 + disc, e.lambda2, 1e-6 * scale);
  }
}

// Along r_i the eigenvalue derivative has the sign of 3 k2^2 rho / (2 mu w) > 0.
TEST_F(ModelProperties, GenuineNonlinearity) {
  for (int i = 0; i < 200; ++i) {
    const Params p = random_params();
    const State s = random_state();
    const double w = magneto_acoustic_speed(s.rho, p);
    const double g = genuine_nonlinearity(s.rho, p);
    EXPECT_GT(g, 0.0);
    EXPECT_NEAR(g, 3.0 * p.k2() * p.k2() * s.rho / (2.0 * p.mu() * w), 1e-12 * g);

    // r_1 = (-rho, w), r_2 = (rho, w) in (rho, u) coordinates.
    const double h = 1e-6;
    for (int sign : {1, -1}) {
      auto lam = [&](double t) {
        const State q{s.rho - sign * t * s.rho, s.u + t * w};
        const Eigenvalues e = eigenvalues(q, p);
        return sign > 0 ? e.lambda1 : e.lambda2;
      };
      const double d = (lam(h) - lam(-h)) / (2 * h);
      EXPECT_GT(d, 0.0);
      EXPECT_NEAR(d, g, 1e-5 * (1.0 + std::abs(g)));
    }
  }
}
