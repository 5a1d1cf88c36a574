#include "weylspec/types.hpp"

#include <algorithm>
#include <cmath>

namespace weylspec {

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return hermitian_eigenvalues(m).minCoeff();
}

bool is_psd(const Matrix& m, double rank_tol) {
  if (m.size() == 0) return true;
  const RealVector ev = hermitian_eigenvalues(m);
  const double top = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() >= -rank_tol * top;
}

int numerical_rank(const Matrix& m, double rank_tol) {
  if (m.size() == 0) return 0;
  const RealVector ev = hermitian_eigenvalues(m);
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  return static_cast<int>((ev.cwiseAbs().array() > rank_tol * top).count());
}

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().minCoeff();
}

Matrix checked_inverse(const Matrix& m, const std::string& what, double rcond_floor) {
  Eigen::PartialPivLU<Matrix> lu(m);
  const double rc = lu.rcond();
  if (!(rc > rcond_floor)) {
    throw ConditioningError(what + ": matrix is numerically singular (rcond " + std::to_string(rc) + ")");
  }
  return lu.inverse();
}

}  // namespace weylspec
