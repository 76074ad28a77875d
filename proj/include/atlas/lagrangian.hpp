#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include <atlas/flagprod.hpp>
#include <atlas/liealg.hpp>
#include <atlas/orbit.hpp>
#include <atlas/repmodel.hpp>
#include <atlas/rng.hpp>

// Riemannian and symplectic structure of the flag orbit: the invariant metric
// built from the root weights, its complex structure and Kaehler form, the
// flip onto the dual orbit, and the graph submanifolds of unitary twists of
// that flip, certified Lagrangean by residual checks.

namespace atlas {

// Real basis of the compact form su(n).
inline std::vector<cmat> unitary_algebra_basis(int n) {
  std::vector<cmat> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      basis.push_back(unit_matrix(n, i, j) - unit_matrix(n, j, i));
      basis.push_back(cplx(0.0, 1.0) *
                      (unit_matrix(n, i, j) + unit_matrix(n, j, i)));
    }
  for (int l = 0; l + 1 < n; ++l)
    basis.push_back(cplx(0.0, 1.0) *
                    (unit_matrix(n, l, l) - unit_matrix(n, l + 1, l + 1)));
  return basis;
}

// Real dimension of the flag orbit of the characteristic.
inline int flag_real_dim(const Characteristic& ch) {
  int fixed = 0;
  for (int b : ch.block_sizes) fixed += b * b;
  return ch.n * ch.n - fixed;
}

namespace detail {

// Pull a tangent vector at x back to the origin frame and check that it is
// Hermitian and supported off the diagonal blocks, i.e. of the form [x, A]
// with A anti-Hermitian.
inline cmat pulled_tangent(const Characteristic& ch, const cmat& u,
                           const cmat& v) {
  require_square(v, ch.n, "tangent vector");
  if ((v - v.adjoint()).norm() > 1e-8 * (1.0 + v.norm()))
    throw contract_error("tangent: not Hermitian, not tangent to the orbit");
  const cmat rep = frame_pull(u, v);
  if (centralizer_part(ch, rep).norm() > 1e-8 * (1.0 + rep.norm()))
    throw contract_error("tangent: diagonal-block residual, not tangent");
  return rep;
}

}  // namespace detail

// Invariant metric with the root weights on the off-diagonal blocks: in the
// frame of x the value is sum Re(v_ij conj(w_ij)) / (h_i - h_j) over the
// upper cross-block entries. Independent of the frame choice because the
// blocks only mix under block-diagonal unitaries.
inline double borel_metric(const Characteristic& ch, const cmat& x,
                           const cmat& v, const cmat& w) {
  const cmat u = flag_frame(ch, x);
  const cmat vr = detail::pulled_tangent(ch, u, v);
  const cmat wr = detail::pulled_tangent(ch, u, w);
  double sum = 0.0;
  for (int i = 0; i < ch.n; ++i)
    for (int j = 0; j < ch.n; ++j)
      if (ch.block_of[i] < ch.block_of[j])
        sum += std::real(vr(i, j) * std::conj(wr(i, j))) / (ch.h(i) - ch.h(j));
  return sum;
}

// Invariant complex structure: multiply the upper cross-block entries of the
// frame representative by i and restore Hermitian symmetry.
inline cmat complex_structure(const Characteristic& ch, const cmat& x,
                              const cmat& v) {
  const cmat u = flag_frame(ch, x);
  const cmat vr = detail::pulled_tangent(ch, u, v);
  const cmat upper = cplx(0.0, 1.0) * nplus_part(ch, vr);
  return frame_push(u, upper + cmat(upper.adjoint()));
}

// Kaehler form of the metric: (v, J w). Antisymmetry is a consequence of the
// compatibility of J with the metric and is asserted on every call.
inline double kaehler_form(const Characteristic& ch, const cmat& x,
                           const cmat& v, const cmat& w) {
  const double vw = borel_metric(ch, x, v, complex_structure(ch, x, w));
  const double wv = borel_metric(ch, x, w, complex_structure(ch, x, v));
  if (std::abs(vw + wv) > 1e-10 * (1.0 + std::abs(vw) + std::abs(wv)))
    throw numerical_error("kaehler form: antisymmetry violated");
  return vw;
}

// Flip onto the dual orbit: x = Ad(u)H0 goes to Ad(u)(-H0). The result is
// frame independent (it equals -x), which doubles as the consistency check.
inline cmat r_w0_map(const Characteristic& ch, const cmat& x) {
  const cmat u = flag_frame(ch, x);
  const cmat out = frame_push(u, cmat(-ch.h0));
  if ((out + x).norm() > 1e-9 * (1.0 + x.norm()))
    throw numerical_error("dual flip: frame ambiguity violated");
  return out;
}

// A twisted flip k1 . flip . k2, optionally with a torus factor between the
// flip and k1. All unitary, so the composite is x -> -Ad(k1 m k2) x.
struct GraphSpec {
  cmat k1;
  cmat k2;
  cmat m;  // diagonal unitary; size 0 means absent
};

inline GraphSpec make_graph_spec(const cmat& k1, const cmat& k2,
                                 const cmat& m = cmat()) {
  const int n = static_cast<int>(k1.rows());
  require_square(k1, n, "graph spec k1");
  require_square(k2, n, "graph spec k2");
  auto check_unitary = [n](const cmat& k, const char* what) {
    if ((k.adjoint() * k - cmat::Identity(n, n)).norm() > 1e-12 * n)
      throw contract_error(std::string(what) + ": not unitary");
  };
  check_unitary(k1, "graph spec k1");
  check_unitary(k2, "graph spec k2");
  for (const cmat* k : {&k1, &k2})
    if (std::abs(k->determinant() - cplx(1.0, 0.0)) > 1e-9)
      throw contract_error("graph spec: factor not unimodular");
  if (m.size() > 0) {
    require_square(m, n, "graph spec m");
    check_unitary(m, "graph spec m");
    cmat diag_only = m;
    diag_only.diagonal().setZero();
    if (diag_only.norm() > 1e-12)
      throw contract_error("graph spec m: not a torus element");
  }
  return GraphSpec{k1, k2, m};
}

inline GraphSpec identity_graph_spec(int n) {
  return GraphSpec{cmat::Identity(n, n), cmat::Identity(n, n), cmat()};
}

inline cmat graph_unitary(const GraphSpec& spec) {
  const cmat mid = spec.m.size() > 0 ? spec.m : cmat(cmat::Identity(
                                           spec.k1.rows(), spec.k1.cols()));
  return spec.k1 * mid * spec.k2;
}

inline cmat graph_map(const GraphSpec& spec, const cmat& x) {
  const cmat q = graph_unitary(spec);
  return -frame_push(q, x);
}

// Tangent sample of the orbit at x: the induced vectors [x, A] over the
// compact basis, with the span checked against the orbit dimension.
struct MetricSample {
  cmat x;
  std::vector<cmat> tangent_basis;
};

namespace detail {

inline int realified_rank(const std::vector<cmat>& vs, double threshold) {
  if (vs.empty()) return 0;
  const int cols = static_cast<int>(vs[0].size()) * 2;
  rmat stacked(vs.size(), cols);
  for (std::size_t r = 0; r < vs.size(); ++r)
    for (int e = 0; e < vs[r].size(); ++e) {
      stacked(r, 2 * e) = std::real(vs[r].data()[e]);
      stacked(r, 2 * e + 1) = std::imag(vs[r].data()[e]);
    }
  Eigen::ColPivHouseholderQR<rmat> qr(stacked);
  qr.setThreshold(threshold);
  return static_cast<int>(qr.rank());
}

}  // namespace detail

inline MetricSample metric_sample(const Characteristic& ch, const cmat& x) {
  MetricSample sample;
  sample.x = x;
  for (const cmat& a : unitary_algebra_basis(ch.n))
    sample.tangent_basis.push_back(comm(x, a));
  if (detail::realified_rank(sample.tangent_basis, 1e-9) != flag_real_dim(ch))
    throw numerical_error("metric sample: tangent basis rank deficiency");
  return sample;
}

// Tangent pairs of the graph of the twisted flip at x: the compact direction
// A moves x along [x, A] and the image along the induced field of Ad(q)A.
inline std::vector<std::pair<cmat, cmat>> graph_tangent_basis(
    const Characteristic& ch, const GraphSpec& spec, const cmat& x) {
  const cmat q = graph_unitary(spec);
  const cmat y = graph_map(spec, x);
  std::vector<std::pair<cmat, cmat>> pairs;
  std::vector<cmat> joint;
  for (const cmat& a : unitary_algebra_basis(ch.n)) {
    const cmat moved = frame_push(q, a);
    pairs.emplace_back(comm(x, a), comm(y, moved));
    cmat stacked(ch.n, 2 * ch.n);
    stacked << pairs.back().first, pairs.back().second;
    joint.push_back(stacked);
  }
  if (detail::realified_rank(joint, 1e-9) != flag_real_dim(ch))
    throw numerical_error("graph tangents: rank deficiency");
  return pairs;
}

// Largest violation of the Lagrangean condition on the graph: the product
// form evaluates pairs of graph tangents as the sum of the form at x and the
// form of the dual orbit at the image.
inline double lagrangian_residual(const Characteristic& ch,
                                  const GraphSpec& spec, int samples,
                                  std::uint64_t seed) {
  const Characteristic dual = dual_characteristic(ch);
  auto rng = sample_rng(seed, "lagrangian_residual", 0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const cmat x = frame_push(haar_su(rng, ch.n), ch.h0);
    const cmat y = graph_map(spec, x);
    const auto pairs = graph_tangent_basis(ch, spec, x);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        const double value =
            kaehler_form(ch, x, pairs[i].first, pairs[j].first) +
            kaehler_form(dual, y, pairs[i].second, pairs[j].second);
        worst = std::max(worst, std::abs(value));
      }
  }
  return worst;
}

// Largest violation of anti-holomorphy of the flip. The flip is linear, so
// its differential is again v -> -v and the condition reduces to the complex
// structures at x and -x being opposite on shared tangents.
inline double antiholomorphy_residual(const Characteristic& ch, int samples,
                                      std::uint64_t seed) {
  const Characteristic dual = dual_characteristic(ch);
  auto rng = sample_rng(seed, "antiholomorphy_residual", 0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const cmat x = frame_push(haar_su(rng, ch.n), ch.h0);
    const cmat flipped = r_w0_map(ch, x);
    for (const cmat& a : unitary_algebra_basis(ch.n)) {
      const cmat v = comm(x, a);
      const cmat mismatch = complex_structure(ch, x, v) +
                            complex_structure(dual, flipped, v);
      worst = std::max(worst, mismatch.norm());
    }
  }
  return worst;
}

// Largest violation of the isometry property of the flip between the metric
// of the orbit and the metric of the dual orbit.
inline double isometry_residual(const Characteristic& ch, int samples,
                                std::uint64_t seed) {
  const Characteristic dual = dual_characteristic(ch);
  auto rng = sample_rng(seed, "isometry_residual", 0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const cmat x = frame_push(haar_su(rng, ch.n), ch.h0);
    const cmat flipped = r_w0_map(ch, x);
    for (int t = 0; t < 5; ++t) {
      const cmat v = comm(x, gaussian_su(rng, ch.n));
      const cmat w = comm(x, gaussian_su(rng, ch.n));
      const double here = borel_metric(ch, x, v, w);
      const double there = borel_metric(dual, flipped, -v, -w);
      worst = std::max(worst, std::abs(there - here));
    }
  }
  return worst;
}

// Membership of a rank-one element in the graph of the (torus-twisted) flip
// inside the exterior-power model: the covector must be proportional to the
// conjugate coefficients of the vector, after undoing the torus factor.
inline bool graph_rep_membership(const ExteriorRep& rep, const RepElement& el,
                                 const cmat& m = cmat(), double tol = 1e-8) {
  require(el.v.size() == rep.dim && el.eps.size() == rep.dim,
          "graph membership: element size mismatch");
  require(el.v.norm() > 0.0 && el.eps.norm() > 0.0,
          "graph membership: element has a vanishing factor");
  cvec target = el.v.conjugate();
  if (m.size() > 0) {
    require_square(m, rep.n, "graph membership m");
    cmat off = m;
    off.diagonal().setZero();
    require(off.norm() <= 1e-12 &&
                (m.adjoint() * m - cmat::Identity(rep.n, rep.n)).norm() <=
                    1e-12 * rep.n,
            "graph membership: m must be a torus element");
    target = dual_group(rep, m) * target;
  }
  // Projective comparison of eps against the target covector.
  const cplx overlap = target.adjoint() * el.eps;
  const cvec residual = el.eps - target * (overlap / target.squaredNorm());
  return residual.norm() <= tol * el.eps.norm();
}

}  // namespace atlas
