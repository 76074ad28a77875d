#pragma once

// Shared aliases, error types, and small dense-matrix helpers used across the
// library. Everything is double precision; matrices are dynamic-size Eigen.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace atlas {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using rmat = Eigen::MatrixXd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

// Input violates a documented precondition (wrong shape, off-orbit point,
// determinant not 1, non-transversal pair, ...).
struct contract_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An algorithm lost the precision it is contracted to deliver (diverged flow,
// defective spectrum, singular solve).
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline cmat comm(const cmat& a, const cmat& b) { return a * b - b * a; }

inline cmat hermitian_part(const cmat& a) { return 0.5 * (a + a.adjoint()); }

inline cmat antihermitian_part(const cmat& a) { return 0.5 * (a - a.adjoint()); }

// Group action on orbit and flag points matching the induced-field convention
// A~(x) = [x, A]: the time-t flow of A~ is act(exp(tA), .).
inline cmat act(const cmat& g, const cmat& x) {
  return g.inverse() * x * g;
}

// Unitary-frame conjugation x = k H k* used by factorizations; inverse of the
// pullback frame_pull(k, x) = k* x k.
inline cmat frame_push(const cmat& k, const cmat& x) { return k * x * k.adjoint(); }
inline cmat frame_pull(const cmat& k, const cmat& x) { return k.adjoint() * x * k; }

inline void require(bool ok, const std::string& message) {
  if (!ok) throw contract_error(message);
}

inline void require_square(const cmat& m, int n, const std::string& who) {
  if (m.rows() != n || m.cols() != n)
    throw contract_error(who + ": expected " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
}

}  // namespace atlas
