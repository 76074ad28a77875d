#include <atlas/orbit.hpp>

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <vector>

using namespace atlas;

namespace {

std::vector<Characteristic> acceptance_characteristics() {
  std::vector<Characteristic> out;
  out.push_back(characteristic_from_theta(make_theta(2, {})));
  out.push_back(characteristic_from_theta(make_theta(3, {})));
  out.push_back(characteristic_from_theta(make_theta(3, {1})));
  out.push_back(characteristic_from_theta(make_theta(4, {})));
  out.push_back(characteristic_from_theta(make_theta(4, {1})));
  return out;
}

int nplus_dim(const Characteristic& ch) {
  int m = 0;
  for (int i = 0; i < ch.n; ++i)
    for (int j = 0; j < ch.n; ++j)
      if (ch.block_of[i] < ch.block_of[j]) ++m;
  return m;
}

}  // namespace

TEST(Characteristic, CanonicalValues) {
  const Characteristic c2 = characteristic_from_theta(make_theta(2, {}));
  EXPECT_NEAR(c2.h(0), 1.0, 1e-14);
  EXPECT_NEAR(c2.h(1), -1.0, 1e-14);

  const Characteristic c31 = characteristic_from_theta(make_theta(3, {1}));
  EXPECT_NEAR(c31.h(0), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(c31.h(1), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(c31.h(2), -4.0 / 3.0, 1e-14);
  EXPECT_EQ(c31.theta.ks, (std::vector<int>{1}));
  EXPECT_EQ(c31.block_sizes, (std::vector<int>{2, 1}));
}

TEST(Characteristic, ThetaReadOffEqualities) {
  rvec h(3);
  h << 1.0, 1.0, -2.0;
  const Characteristic ch = make_characteristic(h);
  EXPECT_EQ(ch.theta.ks, (std::vector<int>{1}));
  rvec bad(3);
  bad << 1.0, -2.0, 1.0;
  EXPECT_THROW(make_characteristic(bad), contract_error);
  rvec nottraceless(2);
  nottraceless << 1.0, 1.0;
  EXPECT_THROW(make_characteristic(nottraceless), contract_error);
}

TEST(ParabolicSplit, SumsAndGrading) {
  const Characteristic ch = characteristic_from_theta(make_theta(4, {1}));
  auto rng = sample_rng(42, "parabolic", 0);
  const cmat z = gaussian_traceless(rng, 4);
  const ParabolicSplit s = parabolic_split(ch, z);
  EXPECT_LE((s.nminus + s.zero + s.nplus - z).norm(), 1e-14);
  const cmat z2 = gaussian_traceless(rng, 4);
  const ParabolicSplit s2 = parabolic_split(ch, z2);
  // Bracket grading.
  EXPECT_LE(nminus_part(ch, comm(s.nplus, s2.nplus)).norm() +
                centralizer_part(ch, comm(s.nplus, s2.nplus)).norm(),
            1e-12);
  EXPECT_LE(nminus_part(ch, comm(s.zero, s2.nplus)).norm() +
                centralizer_part(ch, comm(s.zero, s2.nplus)).norm(),
            1e-12);
  // ad(H0) eigenvalues: positive on n+, zero on z, negative on n-.
  const cmat adp = comm(ch.h0, s.nplus);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(s.nplus(i, j)) > 1e-12)
        EXPECT_GT((adp(i, j) / s.nplus(i, j)).real(), 0.5);
  EXPECT_LE(comm(ch.h0, s.zero).norm(), 1e-12);
}

TEST(ParabolicSplit, KillingOrthogonality) {
  const AlgebraCtx ctx = make_algebra(3);
  const Characteristic ch = characteristic_from_theta(make_theta(3, {1}));
  auto rng = sample_rng(42, "parabolic_orth", 0);
  const cmat a = gaussian_traceless(rng, 3);
  const cmat b = gaussian_traceless(rng, 3);
  const ParabolicSplit sa = parabolic_split(ch, a);
  const ParabolicSplit sb = parabolic_split(ch, b);
  EXPECT_NEAR(std::abs(killing(ctx, sa.nplus, sb.nplus)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(killing(ctx, sa.nplus, sb.zero)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(killing(ctx, sa.nminus, sb.nminus)), 0.0, 1e-12);
}

TEST(Factorize, RoundTripOnRandomOrbitPoints) {
  for (const Characteristic& ch : acceptance_characteristics()) {
    for (int s = 0; s < 100; ++s) {
      auto rng = sample_rng(42, "factorize_roundtrip",
                            static_cast<unsigned>(s + 1000 * ch.n + ch.theta.ks.size()));
      const cmat y = sample_orbit_point(rng, ch, 2.0);
      const OrbitPoint pt = factorize(ch, y);
      const double scale = 1.0 + y.norm();
      EXPECT_LE((recompose(ch, pt.k, pt.x) - y).norm(), 1e-10 * scale);
      EXPECT_LE((pt.k.adjoint() * pt.k - cmat::Identity(ch.n, ch.n)).norm(), 1e-12);
      EXPECT_NEAR(std::abs(pt.k.determinant() - cplx(1, 0)), 0.0, 1e-10);
      EXPECT_LE((pt.x - nplus_part(ch, pt.x)).norm(), 1e-12 * scale);
    }
  }
}

TEST(Factorize, HermitianPointsHaveZeroNilpotentPart) {
  const Characteristic ch = characteristic_from_theta(make_theta(3, {1}));
  for (int s = 0; s < 20; ++s) {
    auto rng = sample_rng(42, "factorize_hermitian", static_cast<unsigned>(s));
    const cmat u = haar_su(rng, 3);
    const cmat x = u * ch.h0 * u.adjoint();
    const OrbitPoint pt = factorize(ch, x);
    EXPECT_LE(pt.x.norm(), 1e-9);
    EXPECT_LE((project_pi(ch, x) - x).norm(), 1e-9);
  }
}

TEST(Factorize, RejectsWrongSpectrum) {
  const Characteristic ch = characteristic_from_theta(make_theta(2, {}));
  cmat y(2, 2);
  y << 5.0, 0.0, 0.0, -5.0;
  EXPECT_THROW(factorize(ch, y), contract_error);
}

TEST(Factorize, RejectsDefectiveWithinBlock) {
  const Characteristic ch = characteristic_from_theta(make_theta(3, {1}));
  cmat y = ch.h0;
  y(0, 1) = 1.0;  // nilpotent inside the first block: right spectrum, defective
  EXPECT_THROW(factorize(ch, y), numerical_error);
}

TEST(Factorize, FibreAffinity) {
  const Characteristic ch = characteristic_from_theta(make_theta(4, {1}));
  for (int s = 0; s < 25; ++s) {
    auto rng = sample_rng(42, "fibre_affinity", static_cast<unsigned>(s));
    const cmat nn = nplus_part(ch, gaussian_traceless(rng, 4));
    const cmat g = nn.exp();
    const cmat moved = g * ch.h0 * g.inverse() - ch.h0;
    EXPECT_LE((moved - nplus_part(ch, moved)).norm(), 1e-9 * (1.0 + moved.norm()));
  }
}

TEST(ProjectPi, UnitaryEquivariance) {
  const Characteristic ch = characteristic_from_theta(make_theta(3, {}));
  for (int s = 0; s < 50; ++s) {
    auto rng = sample_rng(42, "pi_equivariance", static_cast<unsigned>(s));
    const cmat y = sample_orbit_point(rng, ch, 2.0);
    const cmat u = haar_su(rng, 3);
    const cmat lhs = project_pi(ch, u * y * u.adjoint());
    const cmat rhs = u * project_pi(ch, y) * u.adjoint();
    EXPECT_LE((lhs - rhs).norm(), 1e-8 * (1.0 + y.norm()));
  }
}

TEST(FlagVelocity, OriginFormulaAndTangency) {
  const Characteristic ch = characteristic_from_theta(make_theta(3, {1}));
  const AlgebraCtx ctx = make_algebra(3);
  auto rng = sample_rng(42, "flag_velocity", 0);
  const cmat z = gaussian_traceless(rng, 3);
  const cmat v = flag_velocity(ch, z, ch.h0);
  const ParabolicSplit s = parabolic_split(ch, z);
  const cmat expect = comm(ch.h0, s.nminus) + comm(ch.h0, s.nminus).adjoint();
  EXPECT_LE((v - expect).norm(), 1e-10);
  // Tangency: v = [x, A] for an anti-Hermitian A (here A from the n- part).
  EXPECT_LE((v - v.adjoint()).norm(), 1e-12);
  // Central directions have zero velocity.
  EXPECT_LE(flag_velocity(ch, centralizer_part(ch, z), ch.h0).norm(), 1e-12);
  // Finite-difference cross-check: velocity of t -> pi(act(exp(tZ), x)).
  const double h = 1e-5;
  const cmat gp = (h * z).exp();
  const cmat gm = (-h * z).exp();
  const cmat fd =
      (project_pi(ch, act(gp, ch.h0)) - project_pi(ch, act(gm, ch.h0))) / (2 * h);
  EXPECT_LE((fd - v).norm(), 1e-4 * (1.0 + v.norm()));
}

TEST(KksForm, KnownValueAndAntisymmetry) {
  const AlgebraCtx ctx = make_algebra(2);
  const Characteristic ch = characteristic_from_theta(make_theta(2, {}));
  const cmat e12 = unit_matrix(2, 0, 1);
  const cmat e21 = unit_matrix(2, 1, 0);
  const double v = kks_form(ctx, ch.h0, e21, e12);
  EXPECT_NEAR(std::abs(v), 8.0, 1e-12);
  EXPECT_NEAR(v, ctx.calibrated_sign * -8.0, 1e-12);
  EXPECT_NEAR(kks_form(ctx, ch.h0, e12, e21), -v, 1e-12);
  // Vanishes on commuting directions.
  auto rng = sample_rng(42, "kks_zero", 0);
  const cmat y = sample_orbit_point(rng, ch, 1.0);
  cmat z1 = y * y;
  z1 -= (z1.trace() / 2.0) * cmat::Identity(2, 2);
  const cmat z2 = gaussian_traceless(rng, 2);
  EXPECT_NEAR(kks_form(ctx, y, z1, z2), 0.0, 1e-10);
}

TEST(KksForm, NondegenerateGramAtOrigin) {
  for (const Characteristic& ch : acceptance_characteristics()) {
    const AlgebraCtx ctx = make_algebra(ch.n);
    const int rd = ctx.real_dim();
    rmat gram(rd, rd);
    for (int p = 0; p < rd; ++p)
      for (int q = 0; q < rd; ++q)
        gram(p, q) =
            kks_form(ctx, ch.h0, ctx.realified_copy(p), ctx.realified_copy(q));
    Eigen::JacobiSVD<rmat> svd(gram);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
    EXPECT_EQ(rank, 4 * nplus_dim(ch)) << "n=" << ch.n;
  }
}

TEST(SampleOrbitPoint, SpectrumMatchesCharacteristic) {
  const Characteristic ch = characteristic_from_theta(make_theta(4, {1}));
  for (int s = 0; s < 25; ++s) {
    auto rng = sample_rng(42, "sample_spectrum", static_cast<unsigned>(s));
    const cmat y = sample_orbit_point(rng, ch, 2.0);
    Eigen::ComplexEigenSolver<cmat> es(y);
    std::vector<double> re;
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(es.eigenvalues()(i).imag(), 0.0, 1e-8);
      re.push_back(es.eigenvalues()(i).real());
    }
    std::sort(re.rbegin(), re.rend());
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(re[i], ch.h(i), 1e-8);
  }
}
