#include <atlas/repmodel.hpp>

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "test_support.hpp"

using namespace atlas;

namespace {

const std::vector<std::pair<int, int>>& model_configs() {
  static const std::vector<std::pair<int, int>> configs = {
      {2, 1}, {3, 1}, {3, 2}, {4, 2}};
  return configs;
}

cvec basis_vector(const ExteriorRep& rep, int index) {
  cvec v = cvec::Zero(rep.dim);
  v(index) = 1.0;
  return v;
}

int index_of(const ExteriorRep& rep, const std::vector<int>& set) {
  int mask = 0;
  for (int s : set) mask |= 1 << s;
  return rep.index_of_mask[mask];
}

cmat random_group_element(std::mt19937_64& rng, int n, double radius = 1.0) {
  return gaussian_traceless_clipped(rng, n, radius).exp();
}

RepElement random_orbit_element(std::mt19937_64& rng, const ExteriorRep& rep,
                                double radius = 1.0) {
  return act_element(rep, random_group_element(rng, rep.n, radius),
                     origin_element(rep));
}

std::vector<cplx> sorted_spectrum(const cmat& m) {
  Eigen::ComplexEigenSolver<cmat> es(m);
  std::vector<cplx> ev(es.eigenvalues().data(),
                       es.eigenvalues().data() + m.rows());
  std::sort(ev.begin(), ev.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}

}  // namespace

TEST(Basis, LexOrderAndMaskIndex) {
  for (const auto& [n, k] : model_configs()) {
    const ExteriorRep rep = make_exterior_rep(n, k);
    // Binomial coefficient by direct product formula.
    long expected = 1;
    for (int i = 0; i < k; ++i) expected = expected * (n - i) / (i + 1);
    EXPECT_EQ(rep.dim, expected);
    for (int i = 0; i < k; ++i) EXPECT_EQ(rep.sets[0][i], i);
    for (int idx = 0; idx + 1 < rep.dim; ++idx)
      EXPECT_TRUE(std::lexicographical_compare(
          rep.sets[idx].begin(), rep.sets[idx].end(),
          rep.sets[idx + 1].begin(), rep.sets[idx + 1].end()));
    for (int idx = 0; idx < rep.dim; ++idx)
      EXPECT_EQ(index_of(rep, rep.sets[idx]), idx);
  }
  EXPECT_THROW(make_exterior_rep(3, 3), contract_error);
  EXPECT_THROW(make_exterior_rep(3, 0), contract_error);
}

TEST(Action, WedgeExamplesWithSigns) {
  const ExteriorRep rep = make_exterior_rep(3, 2);
  const int e12 = index_of(rep, {0, 1});
  const int e13 = index_of(rep, {0, 2});
  const int e23 = index_of(rep, {1, 2});

  // Raising e_2 to e_1 inside e_2 ^ e_3 keeps the slot order.
  const cmat raise = rep_algebra(rep, unit_matrix(3, 0, 1));
  EXPECT_LT((raise * basis_vector(rep, e23) - basis_vector(rep, e13)).norm(),
            1e-14);
  EXPECT_LT((raise * basis_vector(rep, e13)).norm(), 1e-14);

  // Lowering e_1 to e_3 inside e_1 ^ e_2 lands in e_3 ^ e_2, one transposition
  // away from the ordered basis vector.
  const cmat lower = rep_algebra(rep, unit_matrix(3, 2, 0));
  EXPECT_LT((lower * basis_vector(rep, e12) + basis_vector(rep, e23)).norm(),
            1e-14);
}

TEST(Action, DerivationRespectsBrackets) {
  for (const auto& [n, k] : model_configs()) {
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(23, "rep_bracket", n * 10 + k);
    for (int s = 0; s < 10; ++s) {
      const cmat x = gaussian_traceless(rng, n);
      const cmat y = gaussian_traceless(rng, n);
      const cmat lhs = rep_algebra(rep, comm(x, y));
      const cmat rhs = comm(rep_algebra(rep, x), rep_algebra(rep, y));
      EXPECT_LT((lhs - rhs).norm(), 1e-9 * (1.0 + rhs.norm()));
    }
  }
}

TEST(Action, WeightsOfDiagonalDirections) {
  for (const auto& [n, k] : model_configs()) {
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(29, "rep_weights", n * 10 + k);
    rvec h = rvec::Zero(n);
    for (int i = 0; i < n; ++i)
      h(i) = std::normal_distribution<double>()(rng);
    h.array() -= h.mean();
    const cmat rho = rep_algebra(rep, h.cast<cplx>().asDiagonal());
    for (int idx = 0; idx < rep.dim; ++idx) {
      double weight = 0.0;
      for (int s : rep.sets[idx]) weight += h(s);
      EXPECT_LT((rho * basis_vector(rep, idx) -
                 weight * basis_vector(rep, idx))
                    .norm(),
                1e-12);
    }
    // Strictly upper directions annihilate the leading basis vector.
    const cvec v0 = origin_element(rep).v;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        EXPECT_LT((rep_algebra(rep, unit_matrix(n, i, j)) * v0).norm(), 1e-14);
  }
}

TEST(Action, CompatibleWithAdjointsAndExponentials) {
  for (const auto& [n, k] : model_configs()) {
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(31, "rep_group", n * 10 + k);
    EXPECT_LT(
        (rep_group(rep, cmat::Identity(n, n)) - cmat::Identity(rep.dim, rep.dim))
            .norm(),
        1e-14);
    for (int s = 0; s < 5; ++s) {
      const cmat x = gaussian_traceless_clipped(rng, n, 1.0);
      EXPECT_LT((rep_algebra(rep, x.adjoint()) - rep_algebra(rep, x).adjoint())
                    .norm(),
                1e-12 * (1.0 + x.norm()));
      const cmat a = gaussian_su(rng, n);
      const cmat rho_a = rep_algebra(rep, a);
      EXPECT_LT((rho_a + rho_a.adjoint()).norm(), 1e-12 * (1.0 + a.norm()));

      const cmat via_group = rep_group(rep, x.exp());
      const cmat via_algebra = rep_algebra(rep, x).exp();
      EXPECT_LT((via_group - via_algebra).norm(),
                1e-9 * (1.0 + via_algebra.norm()));

      const cmat g = random_group_element(rng, n);
      const cmat h = random_group_element(rng, n);
      EXPECT_LT((rep_group(rep, g * h) - rep_group(rep, g) * rep_group(rep, h))
                    .norm(),
                1e-9 * (1.0 + rep_group(rep, g * h).norm()));
    }
  }
}

TEST(Dual, PairingInvarianceAndLowestWeightCovector) {
  for (const auto& [n, k] : model_configs()) {
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(37, "rep_dual", n * 10 + k);
    const RepElement origin = origin_element(rep);

    // Infinitesimal invariance of the pairing.
    for (int s = 0; s < 5; ++s) {
      const cmat x = gaussian_traceless(rng, n);
      const cvec v = gaussian_complex(rng, rep.dim, 1);
      const cvec eps = gaussian_complex(rng, rep.dim, 1);
      const cplx leak = eval_covector(dual_action(rep, x) * eps, v) +
                        eval_covector(eps, rep_algebra(rep, x) * v);
      EXPECT_LT(std::abs(leak), 1e-10 * (1.0 + x.norm()));

      const cmat g = random_group_element(rng, n);
      const RepElement moved = act_element(rep, g, RepElement{v, eps});
      EXPECT_LT(std::abs(eval_covector(moved.eps, moved.v) -
                         eval_covector(eps, v)),
                1e-9 * (1.0 + std::abs(eval_covector(eps, v))));
    }

    // Strictly lower directions annihilate the origin covector.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        EXPECT_LT(
            (dual_action(rep, unit_matrix(n, j, i)) * origin.eps).norm(),
            1e-14);

    // Diagonal directions act by minus the weight of the leading vector.
    rvec h = rvec::Zero(n);
    for (int i = 0; i < n; ++i)
      h(i) = std::normal_distribution<double>()(rng);
    h.array() -= h.mean();
    double mu_h = 0.0;
    for (int i = 0; i < k; ++i) mu_h += h(i);
    EXPECT_LT((dual_action(rep, h.cast<cplx>().asDiagonal()) * origin.eps +
               mu_h * origin.eps)
                  .norm(),
              1e-12);
  }

  // Explicit rank-two example for the lowest-weight property.
  const ExteriorRep rep2 = make_exterior_rep(2, 1);
  EXPECT_LT((dual_action(rep2, unit_matrix(2, 1, 0)) *
             origin_element(rep2).eps)
                .norm(),
            1e-14);
}

TEST(Moment, OriginGoesToFundamentalElement) {
  // Rank-two case against the hand-solved value: the pairing functional is
  // Z -> Z_11, and the unique traceless solution of 4 tr(M Z) = Z_11 over the
  // basis {E_12, E_21, H} is diag(1/8, -1/8).
  const AlgebraCtx ctx2 = make_algebra(2);
  const ExteriorRep rep2 = make_exterior_rep(2, 1);
  const cmat m2 = moment_rep(ctx2, rep2, origin_element(rep2));
  cmat oracle = cmat::Zero(2, 2);
  oracle(0, 0) = 0.125;
  oracle(1, 1) = -0.125;
  EXPECT_LT((m2 - oracle).norm(), 1e-10);
  for (const cmat& b : ctx2.basis)
    EXPECT_LT(std::abs(killing(ctx2, oracle, b) - b(0, 0)), 1e-12);

  for (const auto& [n, k] : model_configs()) {
    const AlgebraCtx ctx = make_algebra(n);
    const ExteriorRep rep = make_exterior_rep(n, k);
    const cmat m = moment_rep(ctx, rep, origin_element(rep));
    EXPECT_LT((m - fundamental_h(ctx, k)).norm(), 1e-10);
  }
}

TEST(Moment, LinearInTheTensor) {
  const AlgebraCtx ctx = make_algebra(3);
  const ExteriorRep rep = make_exterior_rep(3, 2);
  auto rng = sample_rng(41, "rep_linear", 0);
  RepElement zero;
  zero.v = cvec::Zero(rep.dim);
  zero.eps = gaussian_complex(rng, rep.dim, 1);
  EXPECT_LT(moment_rep(ctx, rep, zero).norm(), 1e-12);

  const RepElement el = random_orbit_element(rng, rep);
  RepElement scaled;
  scaled.v = cplx(2.0, -1.0) * el.v;
  scaled.eps = el.eps;
  EXPECT_LT((moment_rep(ctx, rep, scaled) -
             cplx(2.0, -1.0) * moment_rep(ctx, rep, el))
                .norm(),
            1e-9);
}

TEST(Moment, EquivariantUnderTheGroup) {
  for (const auto& [n, k] :
       std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 2}}) {
    const AlgebraCtx ctx = make_algebra(n);
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(43, "rep_equivariance", n * 10 + k);
    for (int s = 0; s < 30; ++s) {
      const RepElement el = random_orbit_element(rng, rep, 0.7);
      const cmat g = random_group_element(rng, n, 0.7);
      const cmat lhs = moment_rep(ctx, rep, act_element(rep, g, el));
      const cmat rhs = g * moment_rep(ctx, rep, el) * g.inverse();
      EXPECT_LT((lhs - rhs).norm(), 1e-8 * (1.0 + rhs.norm()));
    }
  }
}

TEST(Moment, OrbitTranslatesKeepTheSpectrum) {
  for (const auto& [n, k] : model_configs()) {
    const AlgebraCtx ctx = make_algebra(n);
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(47, "rep_spectrum", n * 10 + k);
    const std::vector<cplx> reference =
        sorted_spectrum(fundamental_h(ctx, k));
    for (int s = 0; s < 50; ++s) {
      const cmat m = moment_rep(ctx, rep, random_orbit_element(rng, rep));
      const std::vector<cplx> spec = sorted_spectrum(m);
      double dist = 0.0;
      for (std::size_t i = 0; i < spec.size(); ++i)
        dist = std::max(dist, std::abs(spec[i] - reference[i]));
      EXPECT_LT(dist, 1e-7);
    }
  }
}

TEST(Moment, CentralizerDirectionsFixTheOrigin) {
  for (const auto& [n, k] : model_configs()) {
    const AlgebraCtx ctx = make_algebra(n);
    const ExteriorRep rep = make_exterior_rep(n, k);
    const Characteristic ch = mu_characteristic(ctx, rep);
    const RepElement origin = origin_element(rep);
    for (const cmat& b : ctx.basis) {
      const cmat z = centralizer_part(ch, b);
      if (z.norm() == 0.0) continue;
      const cmat drift = (rep_algebra(rep, z) * origin.v) *
                             origin.eps.transpose() +
                         origin.v * (dual_action(rep, z) * origin.eps).transpose();
      EXPECT_LT(drift.norm(), 1e-10);
    }
    // A lower cross-block direction moves the origin.
    const cmat out = unit_matrix(n, k, 0);
    const cmat drift = (rep_algebra(rep, out) * origin.v) *
                           origin.eps.transpose() +
                       origin.v * (dual_action(rep, out) * origin.eps).transpose();
    EXPECT_GT(drift.norm(), 0.9);
  }
}

TEST(Moment, OrbitElementsStayRankOneAndTransversal) {
  for (const auto& [n, k] : model_configs()) {
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(53, "rep_rank", n * 10 + k);
    for (int s = 0; s < 10; ++s) {
      const RepElement el = random_orbit_element(rng, rep);
      const Eigen::JacobiSVD<cmat> svd(tensor_endo(rep, el));
      if (rep.dim > 1)
        EXPECT_LT(svd.singularValues()(1),
                  1e-10 * svd.singularValues()(0));
      EXPECT_LT(std::abs(eval_covector(el.eps, el.v) - cplx(1.0, 0.0)), 1e-9);
    }
  }
}

TEST(Height, ExpressionsAgreeAndPairWithTheMoment) {
  for (const auto& [n, k] : model_configs()) {
    const AlgebraCtx ctx = make_algebra(n);
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(59, "rep_height", n * 10 + k);
    for (int s = 0; s < 10; ++s) {
      const RepElement el = random_orbit_element(rng, rep);
      const cmat m = moment_rep(ctx, rep, el);
      const cmat h_herm = gaussian_hermitian_traceless(rng, n);
      const cmat h_any = gaussian_traceless(rng, n);
      for (const cmat& h : {h_herm, h_any}) {
        const cplx height = height_rep(rep, el, h);
        EXPECT_LT(std::abs(height - killing(ctx, m, h)),
                  1e-9 * (1.0 + std::abs(height)));
      }
    }
    // The origin height against the fundamental element is its self-pairing.
    const cplx self = height_rep(rep, origin_element(rep),
                                 fundamental_h(ctx, k));
    EXPECT_LT(std::abs(self - killing(ctx, fundamental_h(ctx, k),
                                      fundamental_h(ctx, k))),
              1e-12);
  }
}

TEST(Phi, LinePairsRoundTripOnTheOrbit) {
  for (const auto& [n, k] : model_configs()) {
    const ExteriorRep rep = make_exterior_rep(n, k);
    auto rng = sample_rng(61, "rep_phi", n * 10 + k);
    for (int s = 0; s < 30; ++s) {
      const RepElement el = random_orbit_element(rng, rep);
      const RepElement back = phi_inv(rep, phi(rep, el));
      EXPECT_LT((tensor_endo(rep, back) - tensor_endo(rep, el)).norm(),
                1e-9 * (1.0 + tensor_endo(rep, el).norm()));
      EXPECT_LT(std::abs(eval_covector(back.eps, back.v) - cplx(1.0, 0.0)),
                1e-12);
    }
  }

  const ExteriorRep rep = make_exterior_rep(2, 1);
  RepLines crossed;
  crossed.v = basis_vector(rep, 0);
  crossed.eps = basis_vector(rep, 1);
  EXPECT_THROW(phi_inv(rep, crossed), contract_error);

  const RepElement rescaled = phi_inv(
      rep, RepLines{basis_vector(rep, 0), basis_vector(rep, 0)}, 2.5);
  EXPECT_LT(std::abs(eval_covector(rescaled.eps, rescaled.v) - cplx(2.5, 0.0)),
            1e-12);

  RepElement degenerate;
  degenerate.v = cvec::Zero(rep.dim);
  degenerate.eps = basis_vector(rep, 0);
  EXPECT_THROW(phi(rep, degenerate), contract_error);
}

TEST(Cotangent, GroupTranslatesSplitIntoBaseAndMomentum) {
  for (const auto& [n, k] : model_configs()) {
    const AlgebraCtx ctx = make_algebra(n);
    const ExteriorRep rep = make_exterior_rep(n, k);
    const Characteristic ch = mu_characteristic(ctx, rep);
    const cmat h_mu = fundamental_h(ctx, k);
    auto rng = sample_rng(67, "rep_cotangent", n * 10 + k);

    const CotangentPoint at_id =
        rep_to_cotangent(ctx, rep, cmat::Identity(n, n));
    EXPECT_LT((at_id.base - h_mu).norm(), 1e-12);
    EXPECT_LT(at_id.w.norm(), 1e-12);

    const cmat u = haar_su(rng, n);
    const CotangentPoint rotated = rep_to_cotangent(ctx, rep, u);
    EXPECT_LT((rotated.base - frame_push(u, h_mu)).norm(), 1e-9);
    EXPECT_LT(rotated.w.norm(), 1e-9);

    for (int s = 0; s < 50; ++s) {
      const cmat g = random_group_element(rng, n);
      const CotangentPoint xi = rep_to_cotangent(ctx, rep, g);
      validate_cotangent(ch, xi);
      const CotangentPoint split = iota(ch, g * h_mu * g.inverse());
      EXPECT_LT((xi.base - split.base).norm(), 1e-8 * (1.0 + split.base.norm()));
      EXPECT_LT((xi.w - split.w).norm(), 1e-8 * (1.0 + split.w.norm()));
    }

    // The cotangent moment of the translate matches the model moment.
    const cmat g = random_group_element(rng, n);
    const cmat via_rep =
        moment_rep(ctx, rep, act_element(rep, g, origin_element(rep)));
    const cmat via_bundle = mu(ctx, ch, rep_to_cotangent(ctx, rep, g));
    EXPECT_LT((via_rep - via_bundle).norm(), 1e-7 * (1.0 + via_rep.norm()));
  }
}
