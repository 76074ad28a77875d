#pragma once

#include <functional>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <atlas/cotangent.hpp>
#include <atlas/liealg.hpp>
#include <atlas/orbit.hpp>

// Exterior-power model of the minimal-type orbit. The k-th exterior power of
// the defining representation carries the algebra by derivations and the
// group by compound matrices; rank-one tensors v (x) eps with eps(v) != 0
// realize the orbit of the fundamental element H_mu, with a moment map given
// by pairing against the algebra action.

namespace atlas {

struct ExteriorRep {
  int n = 0;
  int k = 0;
  int dim = 0;                          // binomial(n, k)
  std::vector<std::vector<int>> sets;   // lex-ordered k-subsets of {0..n-1}
  std::vector<int> index_of_mask;       // bitmask -> basis index, else -1
};

inline ExteriorRep make_exterior_rep(int n, int k) {
  require(n >= 2, "exterior rep: need n >= 2");
  require(k >= 1 && k <= n - 1, "exterior rep: need 1 <= k <= n-1");
  require(n <= 20, "exterior rep: n too large for bitmask indexing");
  ExteriorRep rep;
  rep.n = n;
  rep.k = k;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  rep.index_of_mask.assign(std::size_t(1) << n, -1);
  while (true) {
    int mask = 0;
    for (int s : cur) mask |= 1 << s;
    rep.index_of_mask[mask] = static_cast<int>(rep.sets.size());
    rep.sets.push_back(cur);
    // Advance to the next k-subset in lexicographic order.
    int p = k - 1;
    while (p >= 0 && cur[p] == n - k + p) --p;
    if (p < 0) break;
    ++cur[p];
    for (int q = p + 1; q < k; ++q) cur[q] = cur[q - 1] + 1;
  }
  rep.dim = static_cast<int>(rep.sets.size());
  return rep;
}

// A rank-one point of the model: a vector v in the exterior power and a
// covector eps, stored as its coefficients against the dual basis. The
// pairing eps(v) is bilinear (no conjugation).
struct RepElement {
  cvec v;
  cvec eps;
};

inline cplx eval_covector(const cvec& eps, const cvec& v) {
  return eps.cwiseProduct(v).sum();
}

// Highest-weight vector e_1 ^ ... ^ e_k paired with its own coefficient
// functional. The covector is a lowest-weight vector of the dual power, and
// the tensor maps to the fundamental element under the moment map.
inline RepElement origin_element(const ExteriorRep& rep) {
  RepElement el;
  el.v = cvec::Zero(rep.dim);
  el.eps = cvec::Zero(rep.dim);
  el.v(0) = 1.0;
  el.eps(0) = 1.0;
  return el;
}

namespace detail {

// Sign of the permutation sorting `word`, or 0 if entries repeat; `word` is
// sorted in place. Quadratic, but k is tiny.
inline int sort_sign(std::vector<int>& word) {
  int sign = 1;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j)
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] == word[i + 1]) return 0;
  return sign;
}

inline cmat minor_matrix(const cmat& g, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
  cmat m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = g(rows[i], cols[j]);
  return m;
}

}  // namespace detail

// Derivation action on the exterior power: x acts on each wedge slot in turn.
inline cmat rep_algebra(const ExteriorRep& rep, const cmat& x) {
  require_square(x, rep.n, "rep_algebra");
  require(std::abs(x.trace()) <= 1e-8 * (1.0 + x.norm()),
          "rep_algebra: matrix must be traceless");
  cmat rho = cmat::Zero(rep.dim, rep.dim);
  std::vector<int> word(rep.k);
  for (int col = 0; col < rep.dim; ++col) {
    const std::vector<int>& s = rep.sets[col];
    for (int p = 0; p < rep.k; ++p) {
      for (int t = 0; t < rep.n; ++t) {
        const cplx c = x(t, s[p]);
        if (c == cplx(0.0, 0.0)) continue;
        word = s;
        word[p] = t;
        const int sign = detail::sort_sign(word);
        if (sign == 0) continue;
        int mask = 0;
        for (int e : word) mask |= 1 << e;
        rho(rep.index_of_mask[mask], col) += double(sign) * c;
      }
    }
  }
  return rho;
}

// Compound matrix: entry (S, T) is the minor det g[S, T]. Restricted to
// unimodular g so that the dual action below can invert.
inline cmat rep_group(const ExteriorRep& rep, const cmat& g) {
  require_square(g, rep.n, "rep_group");
  if (std::abs(g.determinant() - cplx(1.0, 0.0)) > 1e-6)
    throw contract_error("rep_group: not in SL(n,C)");
  cmat rho(rep.dim, rep.dim);
  for (int row = 0; row < rep.dim; ++row)
    for (int col = 0; col < rep.dim; ++col)
      rho(row, col) =
          detail::minor_matrix(g, rep.sets[row], rep.sets[col]).determinant();
  return rho;
}

// Action on covector coefficients: minus transpose for the algebra, inverse
// transpose for the group, so that eps(v) is invariant.
inline cmat dual_action(const ExteriorRep& rep, const cmat& x) {
  return -rep_algebra(rep, x).transpose();
}

inline cmat dual_group(const ExteriorRep& rep, const cmat& g) {
  return rep_group(rep, g.inverse()).transpose();
}

inline RepElement act_element(const ExteriorRep& rep, const cmat& g,
                              const RepElement& el) {
  RepElement out;
  out.v = rep_group(rep, g) * el.v;
  out.eps = dual_group(rep, g) * el.eps;
  return out;
}

// The tensor v (x) eps as an endomorphism of the exterior power.
inline cmat tensor_endo(const ExteriorRep& rep, const RepElement& el) {
  require(el.v.size() == rep.dim && el.eps.size() == rep.dim,
          "tensor_endo: element size mismatch");
  return el.v * el.eps.transpose();
}

// Moment map of the model: the unique traceless M with <M, Z> = eps(rho(Z)v)
// for the complex pairing. Cross-checked against the least-squares projection
// of the tensor endomorphism onto the image of the algebra action, which is
// the same matrix up to the ratio between the pairing and the representation
// trace form.
inline cmat moment_rep(const AlgebraCtx& ctx, const ExteriorRep& rep,
                       const RepElement& el) {
  require(ctx.n == rep.n, "moment_rep: context dimension mismatch");
  require(el.v.size() == rep.dim && el.eps.size() == rep.dim,
          "moment_rep: element size mismatch");
  const cmat m = solve_complex_functional(ctx, [&](const cmat& z) {
    return eval_covector(el.eps, rep_algebra(rep, z) * el.v);
  });

  // Independent route: project v (x) eps onto the span of the basis action
  // matrices. The span is closed under adjoints, so the least-squares
  // projection agrees with the trace-form projection.
  cmat images(rep.dim * rep.dim, ctx.dim());
  for (int p = 0; p < ctx.dim(); ++p) {
    const cmat rho = rep_algebra(rep, ctx.basis[p]);
    images.col(p) = Eigen::Map<const cvec>(rho.data(), rho.size());
  }
  const cmat endo = tensor_endo(rep, el);
  const cvec target = Eigen::Map<const cvec>(endo.data(), endo.size());
  const cvec coords = images.colPivHouseholderQr().solve(target);
  const cmat m_proj = from_basis_coords(ctx, coords);

  // Ratio between tr(rho(X) rho(Y)) and the pairing <X, Y>, measured on a
  // diagonal element with nonzero self-pairing.
  cmat probe = cmat::Zero(ctx.n, ctx.n);
  probe(0, 0) = 1.0;
  probe(1, 1) = -1.0;
  const cmat rho_probe = rep_algebra(rep, probe);
  const cplx ratio =
      (rho_probe * rho_probe).trace() / killing(ctx, probe, probe);
  if ((m - ratio * m_proj).norm() > 1e-9 * (1.0 + m.norm()))
    throw numerical_error("moment: pairing and projection routes disagree");
  return m;
}

// Height of an element against a traceless H, computed both as the covector
// pairing eps(rho(H)v) and as the trace of the tensor endomorphism against
// the action of H. The two expressions must agree.
inline cplx height_rep(const ExteriorRep& rep, const RepElement& el,
                       const cmat& h) {
  require(el.v.size() == rep.dim && el.eps.size() == rep.dim,
          "height_rep: element size mismatch");
  const cmat rho = rep_algebra(rep, h);
  const cplx direct = eval_covector(el.eps, rho * el.v);
  const cplx traced = (tensor_endo(rep, el) * rho).trace();
  if (std::abs(direct - traced) > 1e-10 * (1.0 + std::abs(direct)))
    throw numerical_error("height: pairing and trace expressions disagree");
  return direct;
}

// The pair of lines spanned by v and eps, as unit representatives. Together
// with phi_inv this identifies the rank-one locus with pairs of projective
// points in the power and its dual that pair nontrivially.
struct RepLines {
  cvec v;
  cvec eps;
};

inline RepLines phi(const ExteriorRep& rep, const RepElement& el) {
  require(el.v.size() == rep.dim && el.eps.size() == rep.dim,
          "phi: element size mismatch");
  require(el.v.norm() > 0.0 && el.eps.norm() > 0.0,
          "phi: element has a vanishing factor");
  return RepLines{el.v / el.v.norm(), el.eps / el.eps.norm()};
}

inline RepElement phi_inv(const ExteriorRep& rep, const RepLines& lines,
                          double normalization = 1.0) {
  require(lines.v.size() == rep.dim && lines.eps.size() == rep.dim,
          "phi_inv: line size mismatch");
  const cplx s = eval_covector(lines.eps, lines.v);
  if (std::abs(s) <= 1e-8 * lines.v.norm() * lines.eps.norm())
    throw contract_error("phi_inv: non-transversal pair, not in the orbit image");
  RepElement el;
  el.v = lines.v;
  el.eps = lines.eps * (cplx(normalization, 0.0) / s);
  return el;
}

// Characteristic of the fundamental element realized by the model.
inline Characteristic mu_characteristic(const AlgebraCtx& ctx,
                                        const ExteriorRep& rep) {
  require(ctx.n == rep.n, "mu_characteristic: context dimension mismatch");
  return make_characteristic(fundamental_h(ctx, rep.k).diagonal().real());
}

// Horizontal-plus-vertical splitting of a group translate of the fundamental
// element, read off from the Iwasawa factorization: the unitary factor moves
// the base point, the triangular factor contributes a nilpotent momentum.
inline CotangentPoint rep_to_cotangent(const AlgebraCtx& ctx,
                                       const ExteriorRep& rep, const cmat& g) {
  const Characteristic ch = mu_characteristic(ctx, rep);
  const cmat h_mu = fundamental_h(ctx, rep.k);
  const IwasawaFactors f = iwasawa(ctx, g);
  const cmat p = f.a * f.n;
  const cmat x = p * h_mu * p.inverse() - h_mu;
  if ((x - nplus_part(ch, x)).norm() > 1e-9 * (1.0 + x.norm()))
    throw numerical_error("rep_to_cotangent: triangular part left the nilradical");
  CotangentPoint xi;
  xi.base = frame_push(f.k, h_mu);
  xi.w = frame_push(f.k, x);
  return xi;
}

}  // namespace atlas
