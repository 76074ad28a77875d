#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include <atlas/liealg.hpp>
#include <atlas/orbit.hpp>

// Cotangent-bundle model of the adjoint orbit. A point is a pair
// (base, w): base = Ad(k)H0 is a flag point and w in Ad(k)n+ encodes the
// covector v -> Re<w, rep(v)> against the n- representatives of tangents.
// The diffeomorphism with the orbit is iota (split a point into flag part
// plus nilpotent momentum) with inverse mu (the moment map), and the group
// acts through the generator fields assembled in theta_field.

namespace atlas {

struct CotangentPoint {
  cmat base;
  cmat w;
};

struct TangentOfCotangent {
  cmat dbase;
  cmat dw;
};

namespace detail {

inline CotangentPoint add_scaled(const CotangentPoint& p, double s,
                                 const TangentOfCotangent& v) {
  return {p.base + s * v.dbase, p.w + s * v.dw};
}

// Complex positions (i, j) of the strict upper block triangle, row-major.
inline std::vector<std::pair<int, int>> upper_positions(
    const Characteristic& ch) {
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < ch.n; ++i)
    for (int j = 0; j < ch.n; ++j)
      if (ch.block_of[i] < ch.block_of[j]) pos.emplace_back(i, j);
  return pos;
}

// Real basis of n+ (unit, then i*unit) and the matching n- representatives.
inline cmat nplus_unit(int n, const std::pair<int, int>& p, int half) {
  cmat m = unit_matrix(n, p.first, p.second);
  if (half == 1) m *= cplx(0.0, 1.0);
  return m;
}

inline cmat nminus_unit(int n, const std::pair<int, int>& p, int half) {
  cmat m = unit_matrix(n, p.second, p.first);
  if (half == 1) m *= cplx(0.0, 1.0);
  return m;
}

}  // namespace detail

// Splits an orbit point into flag part and nilpotent momentum. Rejects
// matrices off the orbit (factorize checks the spectrum).
inline CotangentPoint iota(const Characteristic& ch, const cmat& y) {
  const OrbitPoint pt = factorize(ch, y);
  const cmat base = frame_push(pt.k, ch.h0);
  return {base, y - base};
}

// Zero covector over a given flag point.
inline CotangentPoint zero_covector(const Characteristic& ch, const cmat& x) {
  flag_frame(ch, x);
  return {x, cmat::Zero(ch.n, ch.n)};
}

// Checks that base is a flag point and w lies in Ad(frame)n+.
inline void validate_cotangent(const Characteristic& ch,
                               const CotangentPoint& xi, double tol = 1e-8) {
  const cmat u = flag_frame(ch, xi.base);
  const cmat wf = frame_pull(u, xi.w);
  if ((wf - nplus_part(ch, wf)).norm() > tol * (1.0 + xi.w.norm()))
    throw contract_error("cotangent point: momentum not in Ad(k)n+");
}

// n- representative of a tangent of the flag at base. In the frame of base a
// tangent is [H0, r] + ([H0, r])* for a unique r in n-; this inverts that.
inline cmat tangent_rep(const Characteristic& ch, const cmat& base,
                        const cmat& dbase) {
  const cmat u = flag_frame(ch, base);
  const cmat vf = frame_pull(u, dbase);
  cmat rep = cmat::Zero(ch.n, ch.n);
  for (int i = 0; i < ch.n; ++i)
    for (int j = 0; j < ch.n; ++j)
      if (ch.block_of[i] > ch.block_of[j])
        rep(i, j) = vf(i, j) / cplx(ch.h(i) - ch.h(j), 0.0);
  return frame_push(u, rep);
}

// Value of the covector on a tangent of the flag at xi.base.
inline double covector_apply(const AlgebraCtx& ctx, const Characteristic& ch,
                             const CotangentPoint& xi, const cmat& dbase) {
  return killing_re(ctx, xi.w, tangent_rep(ch, xi.base, dbase));
}

// Hamiltonian of the field induced by z: the covector applied to the induced
// flag velocity, plus the height function of the Hermitian part.
inline double energy(const AlgebraCtx& ctx, const Characteristic& ch,
                     const cmat& z, const CotangentPoint& xi) {
  const double from_covector =
      covector_apply(ctx, ch, xi, flag_velocity(ch, z, xi.base));
  const CartanSplit split = cartan_split(ctx, z);
  return from_covector + killing_re(ctx, xi.base, split.x);
}

// Moment map: reconstructs the orbit point whose pairing with every algebra
// direction reproduces the energies, then checks it lies on the orbit.
inline cmat mu(const AlgebraCtx& ctx, const Characteristic& ch,
               const CotangentPoint& xi) {
  const cmat m = solve_real_functional(
      ctx, [&](const cmat& b) { return energy(ctx, ch, b, xi); });
  try {
    factorize(ch, m);
  } catch (const std::exception&) {
    throw numerical_error("mu: reconstructed point is off the orbit");
  }
  return m;
}

// Derivative of iota along the induced orbit field of z at y.
inline TangentOfCotangent d_iota(const Characteristic& ch, const cmat& y,
                                 const cmat& z) {
  const cmat base = project_pi(ch, y);
  const cmat fv = flag_velocity(ch, z, base);
  return {fv, comm(y, z) - fv};
}

// Fiber translation rate balancing the height function of x (Hermitian):
// solves Re<dw, rep(v)> = -Re<v, x> over a real tangent basis v at the
// origin frame. The unique solution is 2 [H0, x^+].
inline cmat vertical_rate(const AlgebraCtx& ctx, const Characteristic& ch,
                          const cmat& xf) {
  const auto pos = detail::upper_positions(ch);
  const int m = static_cast<int>(pos.size());
  rmat gram(2 * m, 2 * m);
  rvec rhs(2 * m);
  for (int b = 0; b < 2 * m; ++b) {
    const cmat rep = detail::nminus_unit(ch.n, pos[b % m], b / m);
    const cmat hv = comm(ch.h0, rep);
    const cmat v = hv + hv.adjoint();
    rhs(b) = -killing_re(ctx, v, xf);
    for (int a = 0; a < 2 * m; ++a)
      gram(b, a) =
          killing_re(ctx, detail::nplus_unit(ch.n, pos[a % m], a / m), rep);
  }
  const rvec sol = gram.partialPivLu().solve(rhs);
  cmat dw = cmat::Zero(ch.n, ch.n);
  for (int a = 0; a < 2 * m; ++a)
    dw += sol(a) * detail::nplus_unit(ch.n, pos[a % m], a / m);
  return dw;
}

enum class ThetaVariant {
  full,           // lift plus vertical: generator of the bundle action
  opposite,       // lift minus vertical: generator of the second action
  lift_only,      // cotangent lift of the flag action alone
  vertical_only,  // fiber translation alone
};

// Generator field at xi of the one-parameter group of z. The evaluation
// tolerates small drift off the bundle (frame_tol) so that integrator stage
// points remain usable; validity of end points is enforced elsewhere.
inline TangentOfCotangent theta_field(const AlgebraCtx& ctx,
                                      const Characteristic& ch, const cmat& z,
                                      const CotangentPoint& xi,
                                      ThetaVariant variant = ThetaVariant::full,
                                      double frame_tol = 1e-2) {
  const cmat u = flag_frame(ch, hermitian_part(xi.base), frame_tol);
  const cmat zf = frame_pull(u, z);
  const cmat wf = nplus_part(ch, frame_pull(u, xi.w));
  const cmat zm = nminus_part(ch, zf);

  cmat dbase_f = cmat::Zero(ch.n, ch.n);
  cmat dw_f = cmat::Zero(ch.n, ch.n);
  if (variant != ThetaVariant::vertical_only) {
    const cmat hv = comm(ch.h0, zm);
    dbase_f = hv + hv.adjoint();
    // Cotangent lift: rotate with the moving frame (generator a), then keep
    // the n+ component of the transported momentum.
    const cmat a = zm - zm.adjoint();
    const cmat moved = comm(wf, zf) + comm(a, wf);
    dw_f += nplus_part(ch, moved) - comm(a, wf);
  }
  if (variant != ThetaVariant::lift_only) {
    const double sign = variant == ThetaVariant::opposite ? -1.0 : 1.0;
    dw_f += sign * vertical_rate(ctx, ch, hermitian_part(zf));
  }
  return {frame_push(u, dbase_f), frame_push(u, dw_f)};
}

inline TangentOfCotangent lifted_field(const AlgebraCtx& ctx,
                                       const Characteristic& ch, const cmat& z,
                                       const CotangentPoint& xi) {
  return theta_field(ctx, ch, z, xi, ThetaVariant::lift_only);
}

inline TangentOfCotangent vertical_field(const AlgebraCtx& ctx,
                                         const Characteristic& ch,
                                         const cmat& z,
                                         const CotangentPoint& xi) {
  return theta_field(ctx, ch, z, xi, ThetaVariant::vertical_only);
}

// Classical fourth-order integration of the generator field, renormalizing
// onto the bundle after every step. Throws if the spectrum drifts.
inline CotangentPoint flow(const AlgebraCtx& ctx, const Characteristic& ch,
                           const cmat& z, const CotangentPoint& xi, double t,
                           double dt = 1e-3,
                           ThetaVariant variant = ThetaVariant::full) {
  require(std::abs(t) <= 10.0, "flow: |t| too large");
  require(dt > 0.0, "flow: dt must be positive");
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / dt)));
  const double h = t / steps;
  const double scale = std::max(1.0, ch.h0.norm());
  CotangentPoint cur = xi;
  for (int s = 0; s < steps; ++s) {
    const auto field = [&](const CotangentPoint& p) {
      return theta_field(ctx, ch, z, p, variant);
    };
    const TangentOfCotangent k1 = field(cur);
    const TangentOfCotangent k2 = field(detail::add_scaled(cur, h / 2.0, k1));
    const TangentOfCotangent k3 = field(detail::add_scaled(cur, h / 2.0, k2));
    const TangentOfCotangent k4 = field(detail::add_scaled(cur, h, k3));
    cur.base += (h / 6.0) * (k1.dbase + 2.0 * k2.dbase + 2.0 * k3.dbase +
                             k4.dbase);
    cur.w += (h / 6.0) * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);

    const EighDescending ed = eigh_descending(hermitian_part(cur.base));
    for (int i = 0; i < ch.n; ++i)
      if (std::abs(ed.vals(i) - ch.h(i)) > 1e-6 * scale)
        throw numerical_error("flow: integration diverged");
    cur.base = frame_push(ed.u, ch.h0);
    cur.w = frame_push(ed.u, nplus_part(ch, frame_pull(ed.u, cur.w)));
  }
  return cur;
}

// Residual of the equivariance cocycle for the word g = exp(z1)...exp(zm):
// compares the moment image of the flowed point with the transported moment
// image. Vanishes when the integrated action matches the adjoint action.
inline double cocycle_residual(const AlgebraCtx& ctx, const Characteristic& ch,
                               const std::vector<cmat>& word,
                               const CotangentPoint& xi, double dt = 1e-3) {
  CotangentPoint cur = xi;
  cmat g = cmat::Identity(ch.n, ch.n);
  for (const cmat& z : word) {
    cur = flow(ctx, ch, z, cur, 1.0, dt);
    g = g * z.exp();
  }
  const cmat lhs = mu(ctx, ch, cur);
  const cmat rhs = act(g, mu(ctx, ch, xi));
  return (lhs - rhs).norm();
}

namespace detail {

// Exponential chart of the bundle around xi. Coordinates are (u, w) with u
// the frame rotation angles along m_b = r_b* - r_b (r_b the n- units) and w
// the momentum offsets along the n+ units, both in the frame of xi.base.
struct CotangentChart {
  const Characteristic* ch;
  cmat u0;
  cmat w0f;
  std::vector<std::pair<int, int>> pos;
  int m;

  CotangentChart(const Characteristic& c, const CotangentPoint& xi)
      : ch(&c),
        u0(flag_frame(c, xi.base)),
        w0f(frame_pull(u0, xi.w)),
        pos(upper_positions(c)),
        m(static_cast<int>(pos.size())) {}

  int dim() const { return 4 * m; }

  cmat rotation_generator(const rvec& c) const {
    cmat a = cmat::Zero(ch->n, ch->n);
    for (int b = 0; b < 2 * m; ++b) {
      const cmat r = nminus_unit(ch->n, pos[b % m], b / m);
      a += c(b) * (r.adjoint() - r);
    }
    return a;
  }

  CotangentPoint at(const rvec& c) const {
    const cmat e = rotation_generator(c).exp();
    cmat inner = w0f;
    for (int a = 0; a < 2 * m; ++a)
      inner += c(2 * m + a) * nplus_unit(ch->n, pos[a % m], a / m);
    const cmat k = u0 * e;
    return {frame_push(k, ch->h0), frame_push(k, inner)};
  }

  // Chart coordinates of a tangent at the center. The frame part is read
  // from the n- representative of dbase; the momentum part is what remains
  // of dw after removing the induced rotation of w0.
  rvec coords_of(const TangentOfCotangent& v) const {
    rvec c = rvec::Zero(dim());
    const cmat vf = frame_pull(u0, v.dbase);
    for (int b = 0; b < m; ++b) {
      const auto [i, j] = pos[b];
      const cplx coef = vf(j, i) / cplx(ch->h(j) - ch->h(i), 0.0);
      c(b) = coef.real();
      c(b + m) = coef.imag();
    }
    const cmat residual =
        nplus_part(*ch, frame_pull(u0, v.dw) -
                            comm(rotation_generator(c.head(2 * m)), w0f));
    for (int a = 0; a < m; ++a) {
      const auto [i, j] = pos[a];
      c(2 * m + a) = residual(i, j).real();
      c(3 * m + a) = residual(i, j).imag();
    }
    return c;
  }
};

}  // namespace detail

// Tautological one-form at the chart point c, applied to the chart tangent
// obtained by central differencing along dir.
inline double tautological_form(const AlgebraCtx& ctx, const Characteristic& ch,
                                const detail::CotangentChart& chart,
                                const rvec& c, const rvec& dir, double h) {
  const CotangentPoint plus = chart.at(c + h * dir);
  const CotangentPoint minus = chart.at(c - h * dir);
  const cmat dbase = (plus.base - minus.base) / (2.0 * h);
  return covector_apply(ctx, ch, chart.at(c), dbase);
}

// Exterior derivative of the tautological one-form, evaluated on two bundle
// tangents at xi by central differences in an exponential chart. Chart
// coordinate fields commute, so d(lambda)(V1, V2) reduces to the two
// directional derivatives of lambda.
inline double canonical_two_form(const AlgebraCtx& ctx,
                                 const Characteristic& ch,
                                 const CotangentPoint& xi,
                                 const TangentOfCotangent& v1,
                                 const TangentOfCotangent& v2,
                                 double fd_step = 1e-4) {
  const detail::CotangentChart chart(ch, xi);
  const rvec c1 = chart.coords_of(v1);
  const rvec c2 = chart.coords_of(v2);
  const double h = fd_step;
  const double term1 = (tautological_form(ctx, ch, chart, h * c1, c2, h) -
                        tautological_form(ctx, ch, chart, -h * c1, c2, h)) /
                       (2.0 * h);
  const double term2 = (tautological_form(ctx, ch, chart, h * c2, c1, h) -
                        tautological_form(ctx, ch, chart, -h * c2, c1, h)) /
                       (2.0 * h);
  return term1 - term2;
}

// Measures the orientation of the orbit form against the canonical two-form
// on sl(2): the ratio of the two evaluations on the image of a pair of
// induced tangents. The magnitude must be 1 up to discretization error.
inline double calibrate_kks_sign() {
  const AlgebraCtx ctx = make_algebra(2);
  const Characteristic ch = characteristic_from_theta(make_theta(2, {}));
  const cmat y = ch.h0;
  const cmat z1 = unit_matrix(2, 1, 0);
  const cmat z2 = unit_matrix(2, 0, 1);
  const CotangentPoint xi = iota(ch, y);
  const double omega = canonical_two_form(ctx, ch, xi, d_iota(ch, y, z1),
                                          d_iota(ch, y, z2));
  const double raw = killing_re(ctx, y, comm(z1, z2));
  const double ratio = omega / raw;
  if (std::abs(std::abs(ratio) - 1.0) > 5e-3)
    throw numerical_error("calibrate_kks_sign: ratio magnitude is not 1");
  return ratio > 0.0 ? 1.0 : -1.0;
}

}  // namespace atlas
