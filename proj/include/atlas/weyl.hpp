#pragma once

// Weyl group of sl(n, C) as permutations of {0..n-1}, with SU(n)
// representatives (sign-corrected permutation matrices) and the right action
// on regular orbit points of the maximal flag.

#include <atlas/liealg.hpp>
#include <atlas/types.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <vector>

namespace atlas {

// w maps i to perm[i], 0-based.
struct WeylElement {
  std::vector<int> perm;

  int n() const { return static_cast<int>(perm.size()); }
  int operator()(int i) const { return perm[i]; }
};

inline WeylElement weyl_identity(int n) {
  WeylElement w;
  w.perm.resize(n);
  std::iota(w.perm.begin(), w.perm.end(), 0);
  return w;
}

inline WeylElement weyl_compose(const WeylElement& a, const WeylElement& b) {
  require(a.n() == b.n(), "weyl_compose: size mismatch");
  WeylElement c;
  c.perm.resize(a.n());
  for (int i = 0; i < a.n(); ++i) c.perm[i] = a(b(i));
  return c;
}

inline WeylElement weyl_inverse(const WeylElement& w) {
  WeylElement inv;
  inv.perm.resize(w.n());
  for (int i = 0; i < w.n(); ++i) inv.perm[w(i)] = i;
  return inv;
}

// Longest element of A_{n-1}: i -> n-1-i.
inline WeylElement principal_involution(int n) {
  WeylElement w;
  w.perm.resize(n);
  for (int i = 0; i < n; ++i) w.perm[i] = n - 1 - i;
  return w;
}

// Subset of simple roots, stored as 1-based indices k meaning alpha_{k,k+1}.
struct ThetaSet {
  int n = 0;
  std::vector<int> ks;  // sorted, values in [1, n-1]

  bool contains(int k) const {
    return std::binary_search(ks.begin(), ks.end(), k);
  }
};

inline ThetaSet make_theta(int n, std::vector<int> ks) {
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (int k : ks)
    require(k >= 1 && k <= n - 1, "make_theta: index out of range");
  return ThetaSet{n, std::move(ks)};
}

// Theta* = -w0(Theta): k -> n-k.
inline ThetaSet dual_theta(const ThetaSet& theta) {
  std::vector<int> ks;
  for (int k : theta.ks) ks.push_back(theta.n - k);
  return make_theta(theta.n, std::move(ks));
}

namespace detail {
inline bool lex_less(const cmat& a, const cmat& b) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const double x = a(i, j).real(), y = b(i, j).real();
      if (x != y) return x < y;
    }
  return false;
}
}  // namespace detail

// SU(n) representative: permutation matrix (column i has 1 in row w(i)); if
// the determinant is -1, one column is negated, choosing the lexicographically
// smallest corrected matrix. Conjugation of diagonals ignores the signs.
inline cmat representative(const WeylElement& w) {
  const int n = w.n();
  cmat p = cmat::Zero(n, n);
  for (int i = 0; i < n; ++i) p(w(i), i) = 1.0;
  if (std::abs(p.determinant() - cplx(1.0, 0.0)) < 1e-9) return p;
  cmat best;
  for (int j = 0; j < n; ++j) {
    cmat cand = p;
    cand.col(j) *= -1.0;
    if (best.size() == 0 || detail::lex_less(cand, best)) best = cand;
  }
  return best;
}

// Unitary diagonalizer with descending eigenvalues: x = u diag(vals) u*.
struct EighDescending {
  cmat u;
  rvec vals;
};

inline EighDescending eigh_descending(const cmat& x) {
  if ((x - x.adjoint()).norm() > 1e-9 * (1.0 + x.norm()))
    throw contract_error("eigh_descending: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitian_part(x));
  if (es.info() != Eigen::Success)
    throw numerical_error("eigh_descending: eigensolver failed");
  EighDescending r;
  const int n = static_cast<int>(x.rows());
  r.u = cmat(n, n);
  r.vals = rvec(n);
  for (int i = 0; i < n; ++i) {
    r.u.col(i) = es.eigenvectors().col(n - 1 - i);
    r.vals(i) = es.eigenvalues()(n - 1 - i);
  }
  return r;
}

// Right action on a regular maximal-flag orbit point x = u H0 u*: permutes the
// eigenvalues over the fixed eigenspace frame. Independent of the phase
// choices in u because diagonal matrices commute.
inline cmat right_action(const cmat& x, const WeylElement& w) {
  const EighDescending ed = eigh_descending(x);
  const int n = ed.vals.size();
  require(n == w.n(), "right_action: size mismatch");
  const double scale = std::max(1.0, x.norm());
  for (int i = 0; i + 1 < n; ++i)
    if (ed.vals(i) - ed.vals(i + 1) <= 1e-6 * scale)
      throw contract_error("right_action: not a regular orbit point");
  const cmat wt = representative(w);
  cmat d = cmat::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = ed.vals(i);
  return frame_push(ed.u, frame_push(wt, d));
}

}  // namespace atlas
