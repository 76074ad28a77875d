#pragma once

// sl(n, C) as a real Lie algebra: ordered basis, root data, Killing form and
// its Gram solves, Cartan and Iwasawa decompositions, fundamental coweights.
//
// Basis order: E_ij for i != j (row-major over pairs), then H_i = E_ii -
// E_{i+1,i+1}. The realified basis appends i*b after the complex basis b.
// Induced vector fields follow A~(x) = [x, A]; see types.hpp act().

#include <atlas/types.hpp>

#include <Eigen/LU>

#include <functional>
#include <utility>
#include <vector>

namespace atlas {

// Root alpha_{ij}(H) = H_ii - H_jj, i != j. Positive iff i < j.
struct Root {
  int i = 0;
  int j = 0;
  bool positive() const { return i < j; }
};

inline cmat unit_matrix(int n, int i, int j) {
  cmat e = cmat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

struct AlgebraCtx {
  int n = 0;
  std::vector<cmat> basis;         // complex basis of sl(n,C), size n^2-1
  std::vector<Root> roots;         // all ordered pairs (i,j), i != j
  std::vector<Root> simple_roots;  // (i, i+1), i = 1..n-1 (0-based: (i,i+1))
  rmat killing_gram;               // Re<.,.> on the realified basis {b, ib}
  std::vector<cmat> fundamental_h; // H_{mu_k}, k = 1..n-1

  // Orientation of the orbit symplectic form relative to the canonical
  // cotangent form. Frozen from the sl(2) finite-difference calibration;
  // recomputed and checked by the cotangent tests and the verify harness.
  double calibrated_sign = 1.0;

  Eigen::PartialPivLU<rmat> gram_lu;       // cached factor of killing_gram
  Eigen::PartialPivLU<Eigen::MatrixXcd> cgram_lu;  // complex Gram factor

  int dim() const { return n * n - 1; }        // complex dimension
  int real_dim() const { return 2 * dim(); }   // realified dimension

  const cmat& realified(int p, cmat& scratch) const {
    // p < dim(): b_p; else i * b_{p-dim()} materialized into scratch.
    if (p < dim()) return basis[p];
    scratch = cplx(0.0, 1.0) * basis[p - dim()];
    return scratch;
  }

  cmat realified_copy(int p) const {
    cmat scratch;
    return realified(p, scratch);
  }
};

// Complex-bilinear Killing form of sl(n,C): B(X,Y) = 2n tr(XY). The real
// pairing used by moment-map solves is Re of this.
inline cplx killing(const AlgebraCtx& ctx, const cmat& x, const cmat& y) {
  return 2.0 * static_cast<double>(ctx.n) * (x * y).trace();
}

inline double killing_re(const AlgebraCtx& ctx, const cmat& x, const cmat& y) {
  return killing(ctx, x, y).real();
}

// Coordinates of a traceless matrix over the complex basis: off-diagonal
// entries directly, diagonal via partial sums against H_i.
inline cvec basis_coords(const AlgebraCtx& ctx, const cmat& m) {
  require_square(m, ctx.n, "basis_coords");
  if (std::abs(m.trace()) > 1e-9 * (1.0 + m.norm()))
    throw contract_error("basis_coords: matrix is not traceless");
  cvec c(ctx.dim());
  int p = 0;
  for (int i = 0; i < ctx.n; ++i)
    for (int j = 0; j < ctx.n; ++j)
      if (i != j) c(p++) = m(i, j);
  cplx partial = 0.0;
  for (int i = 0; i + 1 < ctx.n; ++i) {
    partial += m(i, i);
    c(p++) = partial;
  }
  return c;
}

inline cmat from_basis_coords(const AlgebraCtx& ctx, const cvec& c) {
  cmat m = cmat::Zero(ctx.n, ctx.n);
  for (int p = 0; p < ctx.dim(); ++p) m += c(p) * ctx.basis[p];
  return m;
}

inline AlgebraCtx make_algebra(int n) {
  require(n >= 2, "make_algebra: need n >= 2");
  AlgebraCtx ctx;
  ctx.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        ctx.basis.push_back(unit_matrix(n, i, j));
        ctx.roots.push_back(Root{i, j});
      }
  for (int i = 0; i + 1 < n; ++i) {
    ctx.basis.push_back(unit_matrix(n, i, i) - unit_matrix(n, i + 1, i + 1));
    ctx.simple_roots.push_back(Root{i, i + 1});
  }

  const int rd = ctx.real_dim();
  ctx.killing_gram = rmat(rd, rd);
  for (int p = 0; p < rd; ++p) {
    const cmat bp = ctx.realified_copy(p);
    for (int q = p; q < rd; ++q) {
      const double v = killing_re(ctx, bp, ctx.realified_copy(q));
      ctx.killing_gram(p, q) = v;
      ctx.killing_gram(q, p) = v;
    }
  }
  ctx.gram_lu.compute(ctx.killing_gram);

  Eigen::MatrixXcd cgram(ctx.dim(), ctx.dim());
  for (int p = 0; p < ctx.dim(); ++p)
    for (int q = 0; q < ctx.dim(); ++q)
      cgram(p, q) = killing(ctx, ctx.basis[p], ctx.basis[q]);
  ctx.cgram_lu.compute(cgram);

  // H_{mu_k}: the real diagonal traceless H with <H, D> = sum_{i<=k} D_ii for
  // every real diagonal traceless D, solved on the H_i basis.
  {
    const int r = n - 1;
    rmat gram(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        gram(i, j) = killing_re(ctx, ctx.basis[ctx.dim() - r + i],
                                ctx.basis[ctx.dim() - r + j]);
    Eigen::PartialPivLU<rmat> lu(gram);
    for (int k = 1; k <= r; ++k) {
      rvec rhs = rvec::Zero(r);
      rhs(k - 1) = 1.0;  // mu_k(H_i) = [i == k]
      const rvec x = lu.solve(rhs);
      cmat h = cmat::Zero(n, n);
      for (int i = 0; i < r; ++i) h += cplx(x(i), 0.0) * ctx.basis[ctx.dim() - r + i];
      ctx.fundamental_h.push_back(h);
    }
  }
  return ctx;
}

inline const cmat& fundamental_h(const AlgebraCtx& ctx, int k) {
  require(k >= 1 && k <= ctx.n - 1, "fundamental_h: need 1 <= k <= n-1");
  return ctx.fundamental_h[k - 1];
}

// Z = A + X with A anti-Hermitian (su(n)) and X Hermitian; both traceless.
struct CartanSplit {
  cmat a;  // (Z - Z*)/2
  cmat x;  // (Z + Z*)/2
};

inline CartanSplit cartan_split(const AlgebraCtx& ctx, const cmat& z) {
  require_square(z, ctx.n, "cartan_split");
  return CartanSplit{antihermitian_part(z), hermitian_part(z)};
}

// g = k a n with k in SU(n), a positive diagonal, n unit upper triangular.
struct IwasawaFactors {
  cmat k;
  cmat a;
  cmat n;
};

inline IwasawaFactors iwasawa(const AlgebraCtx& ctx, const cmat& g) {
  require_square(g, ctx.n, "iwasawa");
  if (std::abs(g.determinant() - cplx(1.0, 0.0)) > 1e-8)
    throw contract_error("iwasawa: not in SL(n,C)");
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  cmat phase = cmat::Identity(ctx.n, ctx.n);
  for (int i = 0; i < ctx.n; ++i) {
    const cplx d = r(i, i);
    if (std::abs(d) < 1e-14)
      throw numerical_error("iwasawa: singular triangular factor");
    phase(i, i) = d / std::abs(d);
  }
  IwasawaFactors f;
  f.k = q * phase;
  cmat upper = phase.adjoint() * r;  // positive diagonal
  f.a = cmat::Zero(ctx.n, ctx.n);
  for (int i = 0; i < ctx.n; ++i) f.a(i, i) = upper(i, i).real();
  f.n = f.a.inverse() * upper;
  return f;
}

// Real root-plane basis of u_alpha for a positive root alpha = (i,j), i < j:
// A_alpha = E_ij - E_ji, Z_alpha = i(E_ij + E_ji).
struct WeylBasisVectors {
  cmat a;
  cmat z;
};

inline WeylBasisVectors weyl_basis_vectors(const AlgebraCtx& ctx, const Root& alpha) {
  require(alpha.i >= 0 && alpha.j >= 0 && alpha.i < ctx.n && alpha.j < ctx.n &&
              alpha.i != alpha.j,
          "weyl_basis_vectors: bad root");
  const cmat eij = unit_matrix(ctx.n, alpha.i, alpha.j);
  const cmat eji = unit_matrix(ctx.n, alpha.j, alpha.i);
  return WeylBasisVectors{eij - eji, cplx(0.0, 1.0) * (eij + eji)};
}

// Unique matrix m with Re<m, W> = f(W) for all W, via the realified Gram.
inline cmat solve_real_functional(const AlgebraCtx& ctx,
                                  const std::function<double(const cmat&)>& f) {
  rvec rhs(ctx.real_dim());
  for (int p = 0; p < ctx.real_dim(); ++p) rhs(p) = f(ctx.realified_copy(p));
  const rvec x = ctx.gram_lu.solve(rhs);
  cmat m = cmat::Zero(ctx.n, ctx.n);
  for (int p = 0; p < ctx.real_dim(); ++p) m += cplx(x(p), 0.0) * ctx.realified_copy(p);
  return m;
}

// Unique matrix m with <m, b> = f(b) for the complex basis, complex-linearly.
inline cmat solve_complex_functional(const AlgebraCtx& ctx,
                                     const std::function<cplx(const cmat&)>& f) {
  cvec rhs(ctx.dim());
  for (int p = 0; p < ctx.dim(); ++p) rhs(p) = f(ctx.basis[p]);
  const cvec x = ctx.cgram_lu.solve(rhs);
  return from_basis_coords(ctx, x);
}

}  // namespace atlas
