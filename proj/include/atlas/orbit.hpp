#pragma once

// Adjoint orbit O(H0) = Ad(G)H0 of a characteristic element of sl(n, C):
// block structure of the parabolic, factorization Y = k (H0 + X) k* onto
// Ad(K)(H0 + n+), the fibration pi onto the flag Ad(K)H0, induced flag
// velocities, and the orbit symplectic form.

#include <atlas/liealg.hpp>
#include <atlas/rng.hpp>
#include <atlas/types.hpp>
#include <atlas/weyl.hpp>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <vector>

namespace atlas {

// Diagonal characteristic element: h decreasing, traceless; theta lists the
// simple roots annihilated by it (equal adjacent entries).
struct Characteristic {
  int n = 0;
  rvec h;                        // descending
  cmat h0;                       // diag(h)
  std::vector<int> block_of;     // index -> block id
  std::vector<int> block_sizes;
  ThetaSet theta;

  int blocks() const { return static_cast<int>(block_sizes.size()); }
  double gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i)
      if (block_of[i] != block_of[i + 1]) g = std::min(g, h(i) - h(i + 1));
    return g;
  }
};

inline Characteristic make_characteristic(const rvec& h, double equal_tol = 1e-12) {
  Characteristic ch;
  ch.n = static_cast<int>(h.size());
  require(ch.n >= 2, "make_characteristic: need n >= 2");
  require(std::abs(h.sum()) <= 1e-9 * (1.0 + h.norm()),
          "make_characteristic: h must be traceless");
  ch.h = h;
  ch.h0 = cmat::Zero(ch.n, ch.n);
  for (int i = 0; i < ch.n; ++i) ch.h0(i, i) = h(i);
  ch.block_of.resize(ch.n);
  std::vector<int> ks;
  int block = 0;
  ch.block_of[0] = 0;
  for (int i = 1; i < ch.n; ++i) {
    const double d = h(i - 1) - h(i);
    require(d >= -equal_tol, "make_characteristic: h must be non-increasing");
    if (d <= equal_tol * (1.0 + h.norm())) {
      ks.push_back(i);  // alpha_{i,i+1} in 1-based labels
    } else {
      ++block;
    }
    ch.block_of[i] = block;
  }
  ch.block_sizes.assign(block + 1, 0);
  for (int i = 0; i < ch.n; ++i) ++ch.block_sizes[ch.block_of[i]];
  ch.theta = make_theta(ch.n, ks);
  return ch;
}

// Canonical characteristic for a theta-set: block values 2(r-1), 2(r-2), ...,
// 0 shifted to zero trace. Adjacent distinct values stay 2 apart.
inline Characteristic characteristic_from_theta(const ThetaSet& theta) {
  const int n = theta.n;
  std::vector<int> block_of(n);
  int block = 0;
  for (int i = 1; i < n; ++i) {
    if (!theta.contains(i)) ++block;
    block_of[i] = block;
  }
  const int r = block + 1;
  rvec h(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    h(i) = 2.0 * (r - 1 - block_of[i]);
    mean += h(i);
  }
  mean /= n;
  for (int i = 0; i < n; ++i) h(i) -= mean;
  return make_characteristic(h);
}

// Entry (i,j) lies in n+ iff block(i) < block(j), in n- iff >, else in z.
inline cmat nplus_part(const Characteristic& ch, const cmat& m) {
  cmat r = cmat::Zero(ch.n, ch.n);
  for (int i = 0; i < ch.n; ++i)
    for (int j = 0; j < ch.n; ++j)
      if (ch.block_of[i] < ch.block_of[j]) r(i, j) = m(i, j);
  return r;
}

inline cmat nminus_part(const Characteristic& ch, const cmat& m) {
  cmat r = cmat::Zero(ch.n, ch.n);
  for (int i = 0; i < ch.n; ++i)
    for (int j = 0; j < ch.n; ++j)
      if (ch.block_of[i] > ch.block_of[j]) r(i, j) = m(i, j);
  return r;
}

inline cmat centralizer_part(const Characteristic& ch, const cmat& m) {
  cmat r = cmat::Zero(ch.n, ch.n);
  for (int i = 0; i < ch.n; ++i)
    for (int j = 0; j < ch.n; ++j)
      if (ch.block_of[i] == ch.block_of[j]) r(i, j) = m(i, j);
  return r;
}

struct ParabolicSplit {
  cmat nminus, zero, nplus;
};

inline ParabolicSplit parabolic_split(const Characteristic& ch, const cmat& z) {
  require_square(z, ch.n, "parabolic_split");
  return ParabolicSplit{nminus_part(ch, z), centralizer_part(ch, z),
                        nplus_part(ch, z)};
}

// Y = k (H0 + X) k*, k in SU(n), X in n+.
struct OrbitPoint {
  cmat y;
  cmat k;
  cmat x;
};

namespace detail {

// Swaps adjacent diagonal entries p, p+1 of the upper-triangular t by a
// unitary similarity, updating the accumulated frame u.
inline void schur_swap(cmat& t, cmat& u, int p) {
  const cplx a = t(p, p), b = t(p, p + 1), c = t(p + 1, p + 1);
  // Eigenvector of [[a,b],[0,c]] for eigenvalue c.
  Eigen::Vector2cd v(b, c - a);
  const double nv = v.norm();
  if (nv < 1e-300) return;  // already effectively swapped (a == c, b == 0)
  v /= nv;
  cmat g(2, 2);
  g << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  t.block(p, 0, 2, t.cols()) = g.adjoint() * t.block(p, 0, 2, t.cols());
  t.block(0, p, t.rows(), 2) = t.block(0, p, t.rows(), 2) * g;
  u.block(0, p, u.rows(), 2) = u.block(0, p, u.rows(), 2) * g;
  t(p + 1, p) = 0.0;  // exact zero by construction
}

}  // namespace detail

// Grouped ordered Schur factorization onto Ad(K)(H0 + n+). Eigenvalues are
// matched to the blocks of H0, reordered to chamber order by unitary swaps,
// and the within-block strictly-upper residual must vanish (diagonalizable
// input); k is det-corrected into SU(n).
inline OrbitPoint factorize(const Characteristic& ch, const cmat& y) {
  require_square(y, ch.n, "factorize");
  const int n = ch.n;
  const double scale = std::max(1.0, y.norm());
  const double group_tol = 1e-6 * scale;

  Eigen::ComplexSchur<cmat> schur(y);
  if (schur.info() != Eigen::Success)
    throw numerical_error("factorize: Schur iteration failed");
  cmat t = schur.matrixT();
  cmat u = schur.matrixU();

  // Match each eigenvalue to a block of H0.
  std::vector<int> block(n);
  std::vector<int> remaining(ch.blocks(), 0);
  for (int i = 0; i < n; ++i) remaining[ch.block_of[i]] += 1;
  std::vector<double> block_value(ch.blocks());
  for (int i = 0; i < n; ++i) block_value[ch.block_of[i]] = ch.h(i);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_d = group_tol;
    for (int b = 0; b < ch.blocks(); ++b) {
      const double d = std::abs(t(i, i) - cplx(block_value[b], 0.0));
      if (d <= best_d && remaining[b] > 0) {
        best = b;
        best_d = d;
      }
    }
    if (best < 0) throw contract_error("factorize: not on orbit (spectrum)");
    block[i] = best;
    remaining[best] -= 1;
  }

  // Bubble the diagonal into block order.
  for (bool moved = true; moved;) {
    moved = false;
    for (int p = 0; p + 1 < n; ++p)
      if (block[p] > block[p + 1]) {
        detail::schur_swap(t, u, p);
        std::swap(block[p], block[p + 1]);
        moved = true;
      }
  }

  double diag_residual = 0.0;
  double within_residual = 0.0;
  for (int i = 0; i < n; ++i) {
    diag_residual = std::max(diag_residual, std::abs(t(i, i) - cplx(ch.h(i), 0.0)));
    for (int j = i + 1; j < n; ++j)
      if (ch.block_of[i] == ch.block_of[j])
        within_residual = std::max(within_residual, std::abs(t(i, j)));
  }
  if (diag_residual > group_tol)
    throw contract_error("factorize: not on orbit (spectrum)");
  if (within_residual > 1e-8 * scale)
    throw numerical_error("factorize: defective input");

  // det correction: scale the last column by a unit phase (a gauge inside the
  // last block), keeping u t u* fixed.
  const cplx det = u.determinant();
  const cplx phase = std::conj(det) / std::abs(det);
  u.col(n - 1) *= phase;
  t.col(n - 1) *= phase;
  t.row(n - 1) *= std::conj(phase);

  OrbitPoint pt;
  pt.y = y;
  pt.k = u;
  pt.x = nplus_part(ch, t);
  return pt;
}

inline cmat recompose(const Characteristic& ch, const cmat& k, const cmat& x) {
  require_square(k, ch.n, "recompose");
  require((k.adjoint() * k - cmat::Identity(ch.n, ch.n)).norm() < 1e-8,
          "recompose: k not unitary");
  require((x - nplus_part(ch, x)).norm() < 1e-9 * (1.0 + x.norm()),
          "recompose: x not in n+");
  return frame_push(k, ch.h0 + x);
}

// Fibration onto the flag: pi(Y) = Ad(k)H0.
inline cmat project_pi(const Characteristic& ch, const cmat& y) {
  const OrbitPoint pt = factorize(ch, y);
  return frame_push(pt.k, ch.h0);
}

// Frame of a flag point x = u H0 u* with descending eigenvalues; checks the
// spectrum against the characteristic.
inline cmat flag_frame(const Characteristic& ch, const cmat& x,
                       double tol = 1e-7) {
  const EighDescending ed = eigh_descending(x);
  const double scale = std::max(1.0, x.norm());
  for (int i = 0; i < ch.n; ++i)
    if (std::abs(ed.vals(i) - ch.h(i)) > tol * scale)
      throw contract_error("flag_frame: not a flag point of this orbit");
  return ed.u;
}

// Velocity at the flag point x of the induced field of Z in g: the image of
// [x, Z] under d(pi). In the frame of x this is [H0, Z^-] + ([H0, Z^-])*.
inline cmat flag_velocity(const Characteristic& ch, const cmat& z, const cmat& x) {
  const cmat u = flag_frame(ch, x);
  const cmat zf = frame_pull(u, z);
  const cmat lower = nminus_part(ch, zf);
  const cmat v = ch.h0 * lower - lower * ch.h0;
  return frame_push(u, v + v.adjoint());
}

// Orbit symplectic form on induced tangents [Y, Z1], [Y, Z2]. The sign
// convention lives in ctx.calibrated_sign.
inline double kks_form(const AlgebraCtx& ctx, const cmat& y, const cmat& z1,
                       const cmat& z2) {
  return ctx.calibrated_sign * killing_re(ctx, y, comm(z1, z2));
}

// Y = g H0 g^-1 for g = exp(Z), Z Gaussian with |Z| <= radius.
inline cmat sample_orbit_point(std::mt19937_64& rng, const Characteristic& ch,
                               double radius = 2.0) {
  const cmat g = gaussian_traceless_clipped(rng, ch.n, radius).exp();
  return g * ch.h0 * g.inverse();
}

}  // namespace atlas
