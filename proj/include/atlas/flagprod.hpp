#pragma once

#include <utility>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <atlas/liealg.hpp>
#include <atlas/orbit.hpp>

// Product-of-flags picture of the orbit. A flag is a nested chain of
// subspaces with dimensions given by the block structure; the orbit embeds
// into the product of the flag of a characteristic and the flag of its dual
// as the set of pairwise transversal pairs.

namespace atlas {

struct NestedFlag {
  std::vector<cmat> subspaces;  // n x d_i, orthonormal columns, d increasing
};

struct FlagPair {
  NestedFlag first;
  NestedFlag second;
};

// Proper prefix sums of the block sizes: the dimensions of the chain.
inline std::vector<int> flag_dims(const Characteristic& ch) {
  std::vector<int> dims;
  int acc = 0;
  for (std::size_t b = 0; b + 1 < ch.block_sizes.size(); ++b) {
    acc += ch.block_sizes[b];
    dims.push_back(acc);
  }
  return dims;
}

// Characteristic of the dual flag: eigenvalues negated and reversed, so the
// block sizes appear in the opposite order.
inline Characteristic dual_characteristic(const Characteristic& ch) {
  rvec h(ch.n);
  for (int i = 0; i < ch.n; ++i) h(i) = -ch.h(ch.n - 1 - i);
  return make_characteristic(h);
}

inline void validate_flag(const Characteristic& ch, const NestedFlag& f) {
  const std::vector<int> dims = flag_dims(ch);
  require(f.subspaces.size() == dims.size(), "flag: wrong chain length");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const cmat& v = f.subspaces[i];
    require(v.rows() == ch.n && v.cols() == dims[i], "flag: wrong shape");
    if ((v.adjoint() * v - cmat::Identity(dims[i], dims[i])).norm() > 1e-10)
      throw contract_error("flag: columns not orthonormal");
    if (i > 0) {
      const cmat& prev = f.subspaces[i - 1];
      if ((prev - v * (v.adjoint() * prev)).norm() > 1e-9)
        throw contract_error("flag: chain not nested");
    }
  }
}

namespace detail {

inline cmat orthonormalize(const cmat& m) {
  Eigen::HouseholderQR<cmat> qr(m);
  return qr.householderQ() * cmat::Identity(m.rows(), m.cols());
}

// Flag whose chain is spanned by the leading columns of the frame.
inline NestedFlag flag_from_frame(const std::vector<int>& dims,
                                  const cmat& frame) {
  NestedFlag f;
  for (int d : dims)
    f.subspaces.push_back(orthonormalize(frame.leftCols(d)));
  return f;
}

}  // namespace detail

inline NestedFlag flag_action(const cmat& g, const NestedFlag& f) {
  NestedFlag out;
  for (const cmat& v : f.subspaces)
    out.subspaces.push_back(detail::orthonormalize(g * v));
  return out;
}

// Orthogonal projector onto a subspace, for frame-independent comparisons.
inline cmat subspace_projector(const cmat& v) { return v * v.adjoint(); }

inline double flag_distance(const NestedFlag& a, const NestedFlag& b) {
  require(a.subspaces.size() == b.subspaces.size(),
          "flag_distance: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.subspaces.size(); ++i)
    d = std::max(d, (subspace_projector(a.subspaces[i]) -
                     subspace_projector(b.subspaces[i]))
                        .norm());
  return d;
}

// The pair (g x0, g w0 y0): the coordinate flag and the reversed coordinate
// flag, both moved by g and re-orthonormalized.
inline FlagPair embed(const Characteristic& ch, const cmat& g) {
  require_square(g, ch.n, "embed");
  if (std::abs(g.determinant() - cplx(1.0, 0.0)) > 1e-6)
    throw contract_error("embed: determinant is not 1");
  const Characteristic dual = dual_characteristic(ch);
  cmat reversed = cmat::Zero(ch.n, ch.n);
  for (int i = 0; i < ch.n; ++i) reversed(ch.n - 1 - i, i) = 1.0;
  FlagPair p;
  p.first = detail::flag_from_frame(flag_dims(ch), g);
  p.second = detail::flag_from_frame(flag_dims(dual), g * reversed);
  return p;
}

// True iff every pair of complementary-dimension subspaces meets only at the
// origin: the concatenated frame must have smallest singular value >= 1e-8.
inline bool transversal(const FlagPair& p) {
  const std::size_t r = p.first.subspaces.size();
  require(p.second.subspaces.size() == r, "transversal: shape mismatch");
  for (std::size_t i = 0; i < r; ++i) {
    const cmat& v = p.first.subspaces[i];
    const cmat& w = p.second.subspaces[r - 1 - i];
    const int n = static_cast<int>(v.rows());
    require(v.cols() + w.cols() == n, "transversal: dimension mismatch");
    cmat joined(n, n);
    joined.leftCols(v.cols()) = v;
    joined.rightCols(w.cols()) = w;
    Eigen::JacobiSVD<cmat> svd(joined);
    if (svd.singularValues()(n - 1) < 1e-8) return false;
  }
  return true;
}

// Eigenspace-chain pair of an orbit point: sums of eigenspaces in decreasing
// eigenvalue order for the first factor and increasing order for the second.
inline FlagPair orbit_to_pair(const Characteristic& ch, const cmat& y) {
  const Characteristic dual = dual_characteristic(ch);
  FlagPair p;
  p.first = detail::flag_from_frame(flag_dims(ch), factorize(ch, y).k);
  p.second = detail::flag_from_frame(flag_dims(dual),
                                     factorize(dual, (-y).eval()).k);
  return p;
}

// Unique trace-zero matrix with +1-eigenline xi and -1-eigenline eta, scaled
// so the pair determinant is 1.
inline cmat pair_to_matrix_sl2(const cvec& xi, const cvec& eta) {
  require(xi.size() == 2 && eta.size() == 2, "pair_to_matrix_sl2: need C^2");
  const cplx x = xi(0), yc = xi(1), z = eta(0), w = eta(1);
  const cplx det = x * w - yc * z;
  if (std::abs(det) < 1e-8 * (xi.norm() * eta.norm()))
    throw contract_error("pair_to_matrix_sl2: not transversal");
  cmat m(2, 2);
  m << w * x + yc * z, -2.0 * x * z, 2.0 * yc * w, -(w * x + yc * z);
  return m / det;
}

// Hermitian matrix with +1-eigenline xi on the unit sphere. Note the +1
// eigenvalue: the displayed formula attaches xi to +1, and we follow the
// formula.
inline cmat hermitian_of_line_sl2(const cvec& xi) {
  require(xi.size() == 2, "hermitian_of_line_sl2: need C^2");
  const double nrm = xi.norm();
  require(nrm > 1e-12, "hermitian_of_line_sl2: zero vector");
  const cplx x = xi(0) / nrm, y = xi(1) / nrm;
  cmat m(2, 2);
  m << x * std::conj(x) - y * std::conj(y), 2.0 * x * std::conj(y),
      2.0 * std::conj(x) * y, -x * std::conj(x) + y * std::conj(y);
  return m;
}

// Complex structure on the tangent space of the flag at a Hermitian flag
// point: in the frame of x, multiply the lower part by -i and re-Hermitize.
inline cmat flag_complex_structure(const Characteristic& ch, const cmat& x,
                                   const cmat& v) {
  const cmat u = flag_frame(ch, x);
  const cmat low = cplx(0.0, -1.0) * nminus_part(ch, frame_pull(u, v));
  return frame_push(u, low + low.adjoint());
}

// Largest deviation, over a realified algebra basis, between the two routes
// around the square: multiply the generator by i and push, or push and apply
// the product complex structure. Theory predicts zero.
inline double product_complex_structure_residual(const AlgebraCtx& ctx,
                                                 const Characteristic& ch,
                                                 const cmat& y) {
  const Characteristic dual = dual_characteristic(ch);
  const cmat x1 = project_pi(ch, y);
  const cmat x2 = project_pi(dual, (-y).eval());
  double worst = 0.0;
  for (int p = 0; p < ctx.real_dim(); ++p) {
    const cmat z = ctx.realified_copy(p);
    const cmat iz = cplx(0.0, 1.0) * z;
    const cmat r1 = flag_velocity(ch, iz, x1) +
                    flag_complex_structure(ch, x1, flag_velocity(ch, z, x1));
    const cmat r2 =
        flag_velocity(dual, iz, x2) +
        flag_complex_structure(dual, x2, flag_velocity(dual, z, x2));
    worst = std::max(worst,
                     std::sqrt(r1.squaredNorm() + r2.squaredNorm()));
  }
  return worst;
}

}  // namespace atlas
