#pragma once

// Deterministic random sampling for tests and the verify harness. Every
// sampler takes an explicit engine; suites derive one engine per (check,
// sample) pair so results are reproducible regardless of evaluation order.

#include <atlas/types.hpp>

#include <Eigen/QR>

#include <cstdint>
#include <random>
#include <string_view>

namespace atlas {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Engine for sample `index` of a named check under a suite seed.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::string_view check,
                                  std::uint64_t index) {
  const std::uint64_t mixed =
      seed ^ fnv1a(check) ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  return std::mt19937_64(mixed);
}

inline cmat gaussian_complex(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  cmat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline cmat gaussian_traceless(std::mt19937_64& rng, int n) {
  cmat m = gaussian_complex(rng, n, n);
  m -= (m.trace() / static_cast<double>(n)) * cmat::Identity(n, n);
  return m;
}

inline cmat gaussian_su(std::mt19937_64& rng, int n) {
  return antihermitian_part(gaussian_traceless(rng, n));
}

inline cmat gaussian_hermitian_traceless(std::mt19937_64& rng, int n) {
  return hermitian_part(gaussian_traceless(rng, n));
}

// Haar-like SU(n): QR of a complex Gaussian with the R-diagonal phase folded
// into Q, then a scalar n-th root to reach determinant one.
inline cmat haar_su(std::mt19937_64& rng, int n) {
  const cmat z = gaussian_complex(rng, n, n);
  Eigen::HouseholderQR<cmat> qr(z);
  cmat q = qr.householderQ();
  const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    q.col(i) *= (std::abs(d) < 1e-300) ? 1.0 : d / std::abs(d);
  }
  const cplx det = q.determinant();
  const cplx corr = std::exp(-std::log(det) / static_cast<double>(n));
  return corr * q;
}

// Z traceless Gaussian clipped to Frobenius norm <= radius.
inline cmat gaussian_traceless_clipped(std::mt19937_64& rng, int n, double radius) {
  cmat z = gaussian_traceless(rng, n);
  const double nrm = z.norm();
  if (nrm > radius) z *= radius / nrm;
  return z;
}

}  // namespace atlas
