#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "symred/error.hpp"
#include "symred/maxwell_field.hpp"

using namespace symred;

namespace {

const GridSpec kGrid{16, 2.0 * std::numbers::pi};
const double kVolume = std::pow(2.0 * std::numbers::pi, 3);

double max_diff(const VectorField& a, const VectorField& b) { return (a - b).max_abs(); }

double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace

TEST(Maxwell, GridValidation) {
  EXPECT_NO_THROW(kGrid.validate());
  EXPECT_THROW((GridSpec{12, 1.0}.validate()), ConfigurationError);
  EXPECT_THROW((GridSpec{4, 1.0}.validate()), ConfigurationError);
  EXPECT_THROW((GridSpec{16, 0.0}.validate()), ConfigurationError);
}

TEST(Maxwell, SpectralRoundTrip) {
  const FieldState s = random_solenoidal_state(kGrid, 3);
  EXPECT_LE(max_diff(inverse(forward(s.b)), s.b), 1e-13);
}

TEST(Maxwell, CurlOfShearWave) {
  const auto f = sample_field(kGrid, [](const Vec3& x) { return Vec3(0, 0, std::cos(x[0])); });
  const auto expect = sample_field(kGrid, [](const Vec3& x) { return Vec3(0, std::sin(x[0]), 0); });
  EXPECT_LE(max_diff(curl(f), expect), 1e-13);
}

TEST(Maxwell, ConstantFieldsHaveNoDerivatives) {
  const auto f = sample_field(kGrid, [](const Vec3&) { return Vec3(1.0, -2.0, 0.5); });
  EXPECT_LE(curl(f).max_abs(), 1e-14);
  EXPECT_LE(max_abs(div(f)), 1e-14);
}

TEST(Maxwell, VectorCalculusIdentities) {
  const auto phi = sample_scalar(kGrid, [](const Vec3& x) { return std::sin(x[0] + 2 * x[1]) * std::cos(x[2]); });
  EXPECT_LE(curl(gradient(phi)).max_abs(), 1e-12);
  const FieldState s = random_solenoidal_state(kGrid, 5);
  const auto p = sample_field(kGrid, [](const Vec3& x) {
    return Vec3(std::sin(x[1]), std::cos(x[0] - x[2]), std::sin(2 * x[0]));
  });
  EXPECT_LE(max_abs(div(curl(p))), 1e-12);
  EXPECT_LE(max_abs(div(s.e)), 1e-12);
  EXPECT_LE(max_abs(div(s.b)), 1e-12);
  // div grad = laplacian, and laplacian of sin(x+2y)cos z = -6 phi.
  EXPECT_LE(max_diff(div(gradient(phi)), laplacian(phi)), 1e-11);
  ScalarField expect = phi;
  for (double& v : expect.data) v *= -6.0;
  EXPECT_LE(max_diff(laplacian(phi), expect), 1e-11);
}

TEST(Maxwell, InverseCurl) {
  const auto b = sample_field(kGrid, [](const Vec3& x) { return Vec3(0, std::sin(x[0]), 0); });
  const auto a = inverse_curl(b);
  const auto expect = sample_field(kGrid, [](const Vec3& x) { return Vec3(0, 0, std::cos(x[0])); });
  EXPECT_LE(max_diff(a, expect), 1e-13);
  const FieldState s = random_solenoidal_state(kGrid, 7);
  const auto ab = inverse_curl(s.b);
  EXPECT_LE(max_diff(curl(ab), s.b), 1e-11);
  EXPECT_LE(max_abs(div(ab)), 1e-12);
}

TEST(Maxwell, InverseCurlRejectsFieldsOutsideRange) {
  const auto constant = sample_field(kGrid, [](const Vec3&) { return Vec3(0, 0, 1); });
  EXPECT_THROW(inverse_curl(constant), NotInRangeError);
  const auto grad = gradient(sample_scalar(kGrid, [](const Vec3& x) { return std::sin(x[0]); }));
  try {
    inverse_curl(grad);
    FAIL() << "gradient field accepted";
  } catch (const NotInRangeError& e) {
    EXPECT_NEAR(e.defect(), 1.0, 1e-12);
  }
  const auto nyquist = sample_field(kGrid, [](const Vec3& x) { return Vec3(0, std::cos(8.0 * x[0]), 0); });
  EXPECT_THROW(inverse_curl(nyquist), NotInRangeError);
}

TEST(Maxwell, PoissonSolve) {
  const auto phi = sample_scalar(kGrid, [](const Vec3& x) { return std::sin(x[0]) * std::cos(x[1]); });
  ScalarField rho = phi;
  for (double& v : rho.data) v *= -2.0;
  EXPECT_LE(max_diff(solve_poisson(rho), phi), 1e-13);
  ScalarField shifted = rho;
  for (double& v : shifted.data) v += 1.0;
  EXPECT_THROW(solve_poisson(shifted), NotInRangeError);
}

TEST(Maxwell, PlaneWaveEnergy) {
  const FieldState s = plane_wave(kGrid);
  EXPECT_NEAR(energy(s), 0.5 * kVolume, 1e-10);
  EXPECT_NEAR(helicity_hamiltonian(s), 0.0, 1e-10);
}

TEST(Maxwell, BeltramiHelicity) {
  const FieldState s = beltrami_state(kGrid);
  EXPECT_LE(max_diff(curl(s.b), s.b), 1e-12);
  EXPECT_NEAR(helicity_hamiltonian(s), 0.5 * kVolume, 1e-10);
  EXPECT_NEAR(helicity_hamiltonian(s), energy(s), 1e-10);
}

TEST(Maxwell, MomentumMapsAgainstPoissonOracle) {
  const auto phi = sample_scalar(kGrid, [](const Vec3& x) { return std::cos(x[0] - x[2]) + std::sin(x[1]); });
  const FieldState sol = random_solenoidal_state(kGrid, 9);
  FieldState s(sol.e + gradient(phi), sol.b);
  ChargeDensity charge(kGrid);
  charge.rho = laplacian(phi);
  const MomentumMaps l = momentum_maps(s, charge);
  EXPECT_LE(l.div_e_residual, 1e-11);
  EXPECT_LE(l.div_b_residual, 1e-12);
  EXPECT_LE(max_diff(l.div_e, charge.rho), 1e-11);
  ChargeDensity bad(kGrid);
  for (double& v : bad.rho.data) v = 1.0;
  EXPECT_THROW(bad.check(), NotInRangeError);
}

TEST(Maxwell, GaugeActionShiftsMomentumMaps) {
  const FieldState s = random_solenoidal_state(kGrid, 11);
  const auto psi = sample_scalar(kGrid, [](const Vec3& x) { return std::sin(2 * x[0]) * std::cos(x[1]); });
  const auto chi = sample_scalar(kGrid, [](const Vec3& x) { return std::cos(x[2] + x[1]); });
  const ChargeDensity none(kGrid);
  const MomentumMaps before = momentum_maps(s, none);
  const MomentumMaps after = momentum_maps(gauge_transform(s, psi, chi), none);
  ScalarField d_e = after.div_e;
  ScalarField d_b = after.minus_div_b;
  for (std::size_t i = 0; i < d_e.data.size(); ++i) {
    d_e.data[i] -= before.div_e.data[i];
    d_b.data[i] -= before.minus_div_b.data[i];
  }
  ScalarField minus_lap_psi = laplacian(psi);
  for (double& v : minus_lap_psi.data) v = -v;
  EXPECT_LE(max_diff(d_e, laplacian(chi)), 1e-11);
  EXPECT_LE(max_diff(d_b, minus_lap_psi), 1e-11);
}

TEST(Maxwell, PotentialRepresentationIdentities) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const FieldState s = random_solenoidal_state(kGrid, seed);
    const PotentialState p = potential_representation(s);
    EXPECT_LE(max_diff(curl(p.a), s.b), 1e-10);
    EXPECT_LE(max_diff(curl(p.s), -1.0 * s.e), 1e-10);
    EXPECT_LE(momentum_map(p).div_y_residual, 1e-11);
    EXPECT_NEAR(canonical_potential_hamiltonian(p), energy(s), 1e-10 * std::max(1.0, energy(s)));
    EXPECT_NEAR(helicity_potential_hamiltonian(p), helicity_hamiltonian(s),
                1e-10 * std::max(1.0, std::abs(helicity_hamiltonian(s))));
  }
  FieldState charged = random_solenoidal_state(kGrid, 4);
  charged.b += gradient(sample_scalar(kGrid, [](const Vec3& x) { return std::sin(x[2]); }));
  EXPECT_THROW(potential_representation(charged), NotInRangeError);
}

TEST(Maxwell, StructuresGiveTheSameRightHandSide) {
  for (std::uint64_t seed : {5u, 6u}) {
    const FieldState s = random_solenoidal_state(kGrid, seed);
    const FieldState c = maxwell_rhs(s, MaxwellStructure::canonical);
    const FieldState h = maxwell_rhs(s, MaxwellStructure::helicity);
    const double scale = std::max(1.0, std::max(s.e.max_abs(), s.b.max_abs()));
    EXPECT_LE(max_diff(c.e, h.e) / scale, 1e-12);
    EXPECT_LE(max_diff(c.b, h.b) / scale, 1e-12);
    EXPECT_LE(max_diff(h.e, curl(s.b)) / scale, 1e-12);
    EXPECT_LE(max_diff(h.b, -1.0 * curl(s.e)) / scale, 1e-12);
  }
  EXPECT_THROW(parse_structure("lagrangian"), ConfigurationError);
}

TEST(Maxwell, PlaneWaveOnePeriod) {
  const double period = 2.0 * std::numbers::pi;
  for (auto structure : {MaxwellStructure::canonical, MaxwellStructure::helicity}) {
    const auto r = evolve(plane_wave(kGrid), period, 0.01, structure, {.diagnostic_stride = 50});
    EXPECT_LE(max_diff(r.final_state.e, plane_wave_at(kGrid, period).e), 1e-8);
    EXPECT_LE(max_diff(r.final_state.b, plane_wave_at(kGrid, period).b), 1e-8);
    EXPECT_DOUBLE_EQ(r.times.back(), period);
    double drift = 0.0;
    for (double e : r.energy) drift = std::max(drift, std::abs(e - r.energy.front()) / r.energy.front());
    EXPECT_LE(drift, 1e-10);
    for (double d : r.div_b) EXPECT_LE(d, 1e-12);
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(Maxwell, PlaneWaveHalfPeriodMatchesExactSolution) {
  const auto r = evolve(plane_wave(kGrid, 0.5), 1.3, 0.01, MaxwellStructure::canonical);
  const FieldState exact = plane_wave_at(kGrid, 1.3, 0.5);
  EXPECT_LE(max_diff(r.final_state.e, exact.e), 1e-9);
  EXPECT_LE(max_diff(r.final_state.b, exact.b), 1e-9);
}

TEST(Maxwell, RandomStateConservesInvariants) {
  const auto r = evolve(random_solenoidal_state(kGrid, 13), 0.5, 0.005, MaxwellStructure::helicity,
                        {.diagnostic_stride = 10, .snapshot_stride = 25});
  EXPECT_EQ(r.steps, 100);
  EXPECT_EQ(r.times.size(), 11u);
  EXPECT_EQ(r.snapshots.size(), 5u);
  const double e0 = r.energy.front();
  const double h0 = r.helicity.front();
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    EXPECT_NEAR(r.energy[i], e0, 1e-8 * e0);
    EXPECT_NEAR(r.helicity[i], h0, 1e-8 * std::max(1.0, std::abs(h0)));
    EXPECT_LE(r.div_e[i], 1e-10);
    EXPECT_LE(r.div_b[i], 1e-10);
  }
}

TEST(Maxwell, ConstantFieldsAreStatic) {
  FieldState s(sample_field(kGrid, [](const Vec3&) { return Vec3(1, 2, 3); }),
               sample_field(kGrid, [](const Vec3&) { return Vec3(-1, 0, 0.5); }));
  const auto r = evolve(s, 1.0, 0.1, MaxwellStructure::helicity);
  EXPECT_LE(max_diff(r.final_state.e, s.e), 1e-14);
  EXPECT_LE(max_diff(r.final_state.b, s.b), 1e-14);
  EXPECT_TRUE(r.snapshots.empty());
}

TEST(Maxwell, HugeStepDiverges) {
  EXPECT_THROW(evolve(random_solenoidal_state(kGrid, 1), 5000.0, 50.0, MaxwellStructure::helicity),
               DivergenceError);
}
