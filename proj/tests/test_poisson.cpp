#include <gtest/gtest.h>

#include <memory>

#include "oracles.hpp"
#include "symred/error.hpp"
#include "symred/poisson.hpp"
#include "symred/potentials.hpp"
#include "symred/sampling.hpp"

using namespace symred;

namespace {

std::shared_ptr<const GaugePotential> share(GaugePotential p) {
  return std::make_shared<const GaugePotential>(std::move(p));
}

std::shared_ptr<const CurvatureField> field_of(const std::shared_ptr<const GaugePotential>& p) {
  return std::make_shared<const CurvatureField>(CurvatureField::from_potential(p));
}

PhasePoint internal_point(int n, std::uint64_t seed) {
  Rng rng(seed);
  return PhasePoint(rng.uniform_vector(3, -0.8, 0.8), rng.uniform_vector(3, -1, 1),
                    rng.uniform_vector(n, -1, 1), rng.uniform_vector(n, -1, 1));
}

constexpr int kP1 = 3;
constexpr int kP2 = 4;
constexpr int kP3 = 5;

}  // namespace

TEST(Poisson, CanonicalBlock) {
  const MatX pi = bivector(BracketSpec::canonical(), PhasePoint(Vec3(0.1, 0.2, 0.3), Vec3(1, 2, 3)));
  MatX expect = MatX::Zero(6, 6);
  expect.topRightCorner(3, 3).setIdentity();
  expect.bottomLeftCorner(3, 3) = -Mat3::Identity();
  EXPECT_EQ(pi, expect);
}

TEST(Poisson, MagneticUniformField) {
  const auto spec = BracketSpec::magnetic(field_of(share(uniform_b_potential(1.5))));
  const MatX pi = bivector(spec, PhasePoint(Vec3(0.2, -0.4, 0.1), Vec3(1, 0, 0)));
  EXPECT_DOUBLE_EQ(pi(kP1, kP2), 1.5);
  EXPECT_DOUBLE_EQ(pi(kP2, kP1), -1.5);
  EXPECT_EQ(pi(kP1, kP3), 0.0);
  EXPECT_EQ(pi(0, kP1), 1.0);
  EXPECT_EQ(spec.active_dim(), 6);
}

TEST(Poisson, CanonicalizedLiePoissonBlock) {
  const auto spec = BracketSpec::canonicalized_ym(StructureConstants::so3());
  const PhasePoint x(Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3(0.3, -0.7, 0.9));
  const MatX pi = bivector(spec, x);
  const int y = 9;
  EXPECT_DOUBLE_EQ(pi(y + 0, y + 1), 0.9);
  EXPECT_DOUBLE_EQ(pi(y + 1, y + 2), 0.3);
  EXPECT_DOUBLE_EQ(pi(y + 2, y + 0), -0.7);
  EXPECT_EQ(pi.block(y, 6, 3, 3), Mat3::Identity().eval());
  EXPECT_EQ(pi.block(kP1, kP1, 3, 3).cwiseAbs().maxCoeff(), 0.0);
  const auto names = spec.coordinate_names();
  ASSERT_EQ(names.size(), 12u);
  EXPECT_EQ(names[3], "pt1");
  EXPECT_EQ(names[6], "u1");
  EXPECT_EQ(names[11], "y3");
}

TEST(Poisson, BivectorExactlyAntisymmetric) {
  const auto pot = share(random_trig_potential(StructureConstants::so3(), 2));
  const auto spec = BracketSpec::extended_ym(field_of(pot), pot);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const MatX pi = bivector(spec, internal_point(3, s));
    EXPECT_EQ((pi + pi.transpose()).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Poisson, LeftInvariantFrameMatchesClosedForm) {
  const auto so3 = StructureConstants::so3();
  EXPECT_LE((left_invariant_frame(so3, VecX::Zero(3)) - MatX::Identity(3, 3)).cwiseAbs().maxCoeff(),
            0.0);
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Vec3 u = rng.uniform_vector(3, -1.5, 1.5);
    EXPECT_LE((left_invariant_frame(so3, u) - oracle::so3_frame(u)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_EQ(left_invariant_frame(StructureConstants::abelian(2), VecX::Ones(2)), MatX::Identity(2, 2));
}

TEST(Poisson, HeisenbergFrameIsUnipotent) {
  // ad_u is nilpotent of order 2: frame = I + ad_u / 2.
  const auto h = StructureConstants::heisenberg();
  const Vec3 u(0.4, -1.1, 2.0);
  const MatX expect = MatX::Identity(3, 3) + 0.5 * h.ad(u);
  EXPECT_LE((left_invariant_frame(h, u) - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Poisson, CoordinateBracketsReproduceTable) {
  const auto pot = share(random_trig_potential(StructureConstants::so3(), 7));
  const auto spec = BracketSpec::extended_ym(field_of(pot), pot);
  const PhasePoint x = internal_point(3, 4);
  const MatX pi = bivector(spec, x);
  for (int a = 0; a < spec.active_dim(); ++a)
    for (int b = 0; b < spec.active_dim(); ++b)
      EXPECT_EQ(bracket(spec, Observable::coordinate(a), Observable::coordinate(b), x), pi(a, b));
}

TEST(Poisson, LeibnizRule) {
  const auto pot = share(random_trig_potential(StructureConstants::so3(), 8));
  const auto spec = BracketSpec::extended_ym(field_of(pot), pot);
  const Observable f([](const PhasePoint& x) { return std::sin(x.q()[0]) * x.p()[1] + x.y()[2]; });
  const Observable g([](const PhasePoint& x) { return x.p().squaredNorm() + x.u()[0] * x.y()[1]; });
  const Observable h([](const PhasePoint& x) { return std::cos(x.q()[2] + x.u()[2]); });
  for (std::uint64_t s = 0; s < 5; ++s) {
    const PhasePoint x = internal_point(3, s);
    const double lhs = bracket(spec, f, g * h, x);
    const double rhs = bracket(spec, f, g, x) * h(x) + g(x) * bracket(spec, f, h, x);
    EXPECT_NEAR(lhs, rhs, 1e-8);
  }
}

TEST(Poisson, NestedCyclicSumIsMinusJacobiator) {
  const auto field = std::make_shared<const CurvatureField>(f12_q3_curvature(StructureConstants::abelian(1)));
  const auto spec = BracketSpec::magnetic(field);
  const PhasePoint x(Vec3(0.1, 0.2, 0.3), Vec3(0.5, -0.5, 0.2));
  EXPECT_NEAR(jacobiator(spec, kP1, kP2, kP3, x), 1.0, 1e-9);
  EXPECT_NEAR(oracle::nested_jacobiator(spec, kP1, kP2, kP3, x), -1.0, 1e-8);
  const auto worst = max_jacobiator(spec, x);
  EXPECT_NEAR(worst.value, 1.0, 1e-9);
  EXPECT_EQ(worst.triple, (std::array<int, 3>{kP1, kP2, kP3}));
}

TEST(Poisson, ExtendedBracketSatisfiesJacobi) {
  for (const auto& alg : {StructureConstants::abelian(1), StructureConstants::so3(),
                          StructureConstants::heisenberg()}) {
    const auto pot = share(random_trig_potential(alg, 41));
    const auto spec = BracketSpec::extended_ym(field_of(pot), pot);
    const PhasePoint x = internal_point(alg.dim(), 5);
    EXPECT_LE(max_jacobiator(spec, x).value, 1e-7);
    EXPECT_NEAR(oracle::nested_jacobiator(spec, kP1, 6, 6 + alg.dim(), x), 0.0, 1e-6) << to_string(spec.kind());
  }
}

TEST(Poisson, ReducedMatchesExtendedMomentumBlock) {
  Rng rng(3);
  const auto alg = StructureConstants::abelian(2);
  const auto pot = share(random_trig_potential(alg, 13));
  const auto field = field_of(pot);
  const VecX e = rng.uniform_vector(2, -1, 1);
  const auto reduced = BracketSpec::reduced_ym(field, DualElement{e});
  const auto extended = BracketSpec::extended_ym(field, pot);
  const Vec3 q(0.2, 0.3, -0.1);
  const Vec3 p(0.5, 0.1, 0.9);
  const MatX r = bivector(reduced, PhasePoint(q, p));
  const MatX x = bivector(extended, PhasePoint(q, p, VecX::Zero(2), e));
  EXPECT_LE((r - x.topLeftCorner(6, 6)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Poisson, MinimalCouplingUniformField) {
  const auto pot = uniform_b_potential(2.0);
  const PhasePoint x(Vec3(0.5, 0.0, 0.0), Vec3(0.1, 0.2, 0.3));
  const PhasePoint c = minimal_coupling(x, pot, 1.5);
  EXPECT_EQ(c.q(), x.q());
  EXPECT_NEAR(c.p()[0], 0.1, 1e-15);
  EXPECT_NEAR(c.p()[1], 0.2 + 1.5 * 2.0 * 0.5, 1e-15);
  EXPECT_NEAR(c.p()[2], 0.3, 1e-15);
  const PhasePoint back = inverse_minimal_coupling(c, pot, 1.5);
  EXPECT_LE((back.p() - x.p()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Poisson, MinimalCouplingRoundTripWithInternalVariables) {
  const auto pot = random_trig_potential(StructureConstants::so3(), 17);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PhasePoint x = internal_point(3, s);
    const PhasePoint c = minimal_coupling(x, pot);
    const VecX shift = pot.value(x.q()).transpose() * x.y();
    EXPECT_LE((c.p() - x.p() - shift).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(c.y(), x.y());
    EXPECT_EQ(c.u(), x.u());
    EXPECT_LE((inverse_minimal_coupling(c, pot).coordinates() - x.coordinates()).cwiseAbs().maxCoeff(),
              1e-14);
  }
}

TEST(Poisson, CanonicalizationResidualVanishesForDerivedFields) {
  for (const auto& alg : {StructureConstants::abelian(1), StructureConstants::so3(),
                          StructureConstants::heisenberg()}) {
    const auto pot = share(random_trig_potential(alg, 23));
    const auto sample = sample_phase_points(29, 20, alg.dim());
    EXPECT_LE(canonicalization_residual(pot, field_of(pot), sample), 1e-12);
  }
}

TEST(Poisson, CanonicalizationResidualTracksPerturbation) {
  const auto alg = StructureConstants::so3();
  const auto pot = share(random_trig_potential(alg, 23));
  const auto sample = sample_phase_points(31, 50, 3);
  double prev = 0.0;
  for (double delta : {1e-2, 1e-3}) {
    const auto field = std::make_shared<const CurvatureField>(
        CurvatureField::from_potential(pot).plus(f12_q3_curvature(alg, delta, 0)));
    const double r = canonicalization_residual(pot, field, sample);
    EXPECT_GE(r, 0.5 * delta);
    EXPECT_LE(r, 2.0 * delta);
    if (prev > 0.0) EXPECT_NEAR(prev / r, 10.0, 1e-6);
    prev = r;
  }
}

TEST(Poisson, SamplingIsSeeded) {
  const auto a = sample_phase_points(5, 8, 2);
  const auto b = sample_phase_points(5, 8, 2);
  const auto c = sample_phase_points(6, 8, 2);
  ASSERT_EQ(a.size(), 8u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].coordinates(), b[i].coordinates());
  EXPECT_NE(a[0].coordinates(), c[0].coordinates());
  for (const auto& x : a) EXPECT_TRUE(DomainBox{}.contains(x.q()));
}

TEST(Poisson, FormulaStrings) {
  const auto spec = BracketSpec::canonicalized_ym(StructureConstants::so3());
  EXPECT_FALSE(bracket_entry_formula(spec, 9, 10).empty());
  EXPECT_THROW(bracket_entry_formula(spec, 0, 12), ShapeError);
}

TEST(Poisson, Errors) {
  const auto so3 = StructureConstants::so3();
  const auto so3_pot = share(random_trig_potential(so3, 1));
  const auto so3_field = field_of(so3_pot);
  EXPECT_THROW(BracketSpec::magnetic(so3_field), ConfigurationError);
  EXPECT_THROW(BracketSpec::extended_ym(so3_field, nullptr), MissingPotentialError);
  EXPECT_THROW(BracketSpec::extended_ym(so3_field, share(uniform_b_potential(1.0))), ConfigurationError);
  try {
    BracketSpec::reduced_ym(so3_field, DualElement{Vec3(0, 0, 1)});
    FAIL() << "gate accepted a non-invariant dual element";
  } catch (const InvarianceError& e) {
    EXPECT_EQ(e.s(), 0);
    EXPECT_EQ(e.k(), 1);
    EXPECT_EQ(e.residual(), 1.0);
  }
  EXPECT_NO_THROW(BracketSpec::reduced_ym(so3_field, DualElement{VecX::Zero(3)}));
  EXPECT_THROW(PhasePoint(Vec3::Zero(), Vec3::Zero(), VecX::Zero(2), VecX::Zero(3)), ShapeError);
  EXPECT_THROW(bivector(BracketSpec::canonicalized_ym(so3), PhasePoint()), ConfigurationError);
  EXPECT_THROW(minimal_coupling(PhasePoint(), *so3_pot), ConfigurationError);
  const Observable bad([](const PhasePoint& x) { return 1.0 / (x.q()[0] - x.q()[0]); });
  EXPECT_THROW(bad.gradient(PhasePoint(), 6), NumericalError);
}
