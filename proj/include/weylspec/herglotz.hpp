#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "weylspec/measure.hpp"

namespace weylspec {

// M(z) = C + \int (1/(y - z) - y/(1 + y^2)) dOmega(y).
class HerglotzMatrix {
 public:
  explicit HerglotzMatrix(MatrixMeasure omega, std::optional<Matrix> offset = std::nullopt,
                          const Tolerances& tol = {});

  int dim() const { return omega_.dim(); }
  const Matrix& offset() const { return offset_; }
  const MatrixMeasure& measure() const { return omega_; }

 private:
  MatrixMeasure omega_;
  Matrix offset_;
};

using MatrixFunction = std::function<Matrix(Complex)>;

struct EpsSample {
  double eps = 0.0;
  Matrix value;
};

// Error expansion of f(eps) near 0: powers of eps, or powers of eps^2 for
// quantities such as eps Im F(x+i eps) and Im F(x+i eps)/eps.
enum class EpsSeries { general, even };

// Limit of f(eps) as eps -> 0+ along eps_j = eps0 * 2^-j. Two Richardson
// columns remove the two leading error terms; the limit is accepted once
// consecutive extrapolants agree to tol.bv * max(1, |value|). value is empty
// when the sequence did not settle.
struct EpsLimit {
  std::optional<Matrix> value;
  std::vector<EpsSample> trace;
};

EpsLimit eps_limit(const std::function<Matrix(double)>& f, const Tolerances& tol,
                   EpsSeries series = EpsSeries::general);

Matrix eval(const HerglotzMatrix& m, Complex z, const Tolerances& tol = {});

// M(x+i0). Off the support the closed form is used and trace stays empty;
// otherwise the epsilon path decides. closed_form records which route ran.
struct BoundaryValue {
  double x = 0.0;
  std::optional<Matrix> value;
  bool closed_form = false;
  std::vector<EpsSample> trace;
};

BoundaryValue boundary_value(const HerglotzMatrix& m, double x, const Tolerances& tol = {});

// Same limit, forced through the epsilon path.
BoundaryValue boundary_value_eps(const HerglotzMatrix& m, double x, const Tolerances& tol = {});

// Boundary value of an arbitrary Herglotz-type function along x + i eps.
EpsLimit boundary_limit(const MatrixFunction& f, double x, const Tolerances& tol = {});

// T(x) = \int dOmega(y) / (x - y)^2.
IntegralResult t_matrix(const HerglotzMatrix& m, double x, const Tolerances& tol = {});

struct BoundaryReport {
  double x = 0.0;
  std::optional<Matrix> m_boundary;
  // Hermitian within tolerance. Only guaranteed when T(x) is finite.
  bool hermitian = false;
  IntegralResult t;
  std::vector<EpsSample> eps_trace;
};

// Throws InconsistencyError if T(x) is finite while the boundary value fails
// to converge or is not Hermitian.
BoundaryReport boundary_report(const HerglotzMatrix& m, double x, const Tolerances& tol = {});

// Omega({x}) = -i lim eps F(x + i eps). Throws NotConvergedError.
Matrix atom_mass(const MatrixFunction& f, double x, const Tolerances& tol = {});
Matrix atom_mass(const HerglotzMatrix& m, double x, const Tolerances& tol = {});

// lim Im F(x + i eps) / eps; for F = M this is T(x) when finite.
EpsLimit poisson_limit(const MatrixFunction& f, double x, const Tolerances& tol = {});

}  // namespace weylspec
