#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace weylspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances shared by every module. One instance is threaded
// through all operations; nothing reads global state.
struct Tolerances {
  // PSD / rank decisions, relative to the largest eigenvalue.
  double rank = 1e-9;
  // Point coincidence (atom hits, bisection width), relative to max(1, |x|).
  double x = 1e-12;
  // epsilon schedule eps_j = eps0 * 2^-j, j = 0..eps_steps.
  double eps0 = 1e-2;
  int eps_steps = 40;
  // Convergence of successive extrapolated epsilon-path values (Frobenius,
  // scaled by max(1, |value|)).
  double bv = 1e-9;
  // M(x+i0) = D matching (Frobenius, scaled by max(1, |D|)).
  double match = 1e-7;
  // Hermitian checks on inputs and limits (Frobenius, scaled).
  double hermitian = 1e-10;
  // Smallest admissible singular value of D - D'.
  double singular = 1e-10;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: non-PSD weights, wrong dimensions, bad files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (real z, unbounded set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotConvergedError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Internal contradiction between results that theory says must agree.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

inline double scale_of(const Matrix& m) { return std::max(1.0, m.norm()); }

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

// (A - A*) / 2i, Hermitian.
inline Matrix imaginary_part(const Matrix& m) {
  return (m - m.adjoint()) / Complex(0.0, 2.0);
}

inline bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol * scale_of(m);
}

// Ascending eigenvalues of the Hermitian part of m.
RealVector hermitian_eigenvalues(const Matrix& m);

double min_eigenvalue(const Matrix& m);

bool is_psd(const Matrix& m, double rank_tol);

// Number of eigenvalues above rank_tol * (largest |eigenvalue|).
int numerical_rank(const Matrix& m, double rank_tol);

double min_singular_value(const Matrix& m);

// Inverse of a square matrix; throws ConditioningError when the reciprocal
// condition estimate falls below rcond_floor.
Matrix checked_inverse(const Matrix& m, const std::string& what, double rcond_floor = 1e-14);

}  // namespace weylspec
