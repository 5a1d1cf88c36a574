#include "weylspec/extensions.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace weylspec {

namespace {

void check_dims(const HerglotzMatrix& m, const ExtensionParameter& d) {
  if (d.dim() != m.dim()) {
    throw ValidationError("extension parameter is " + std::to_string(d.dim()) + "x" +
                          std::to_string(d.dim()) + " but the Weyl function is " +
                          std::to_string(m.dim()) + "x" + std::to_string(m.dim()));
  }
}

bool matches(const Matrix& target, double residual, const Tolerances& tol) {
  return residual <= tol.match * scale_of(target);
}

}  // namespace

ExtensionParameter::ExtensionParameter(Matrix d, const Tolerances& tol) {
  if (d.rows() != d.cols() || d.rows() < 1) throw ValidationError("D must be a nonempty square matrix");
  if (!d.allFinite()) throw ValidationError("D has non-finite entries");
  if (!is_hermitian(d, tol.hermitian)) throw ValidationError("D must be Hermitian");
  d_ = hermitian_part(d);
}

Matrix weyl_of_extension(const HerglotzMatrix& m, const ExtensionParameter& d, Complex z,
                         const Tolerances& tol) {
  check_dims(m, d);
  return checked_inverse(d.matrix() - eval(m, z, tol), "D - M(z)");
}

MatrixFunction weyl_function(const HerglotzMatrix& m, const ExtensionParameter& d, const Tolerances& tol) {
  check_dims(m, d);
  return [&m, &d, tol](Complex z) { return weyl_of_extension(m, d, z, tol); };
}

double resolvent_identity_residual(const HerglotzMatrix& m, const ExtensionParameter& d,
                                   const ExtensionParameter& d_prime, Complex z, const Tolerances& tol) {
  if (z.imag() == 0.0) throw DomainError("resolvent identity requires Im z != 0");
  const Matrix direct = weyl_of_extension(m, d, z, tol);
  const Matrix other = weyl_of_extension(m, d_prime, z, tol);
  const Matrix delta = d.matrix() - d_prime.matrix();
  const Matrix id = Matrix::Identity(m.dim(), m.dim());
  const Matrix right = other * checked_inverse(delta * other + id, "(D - D')M_D' + I");
  const Matrix left = checked_inverse(other * delta + id, "M_D'(D - D') + I") * other;
  const double denom = std::max(direct.norm(), std::numeric_limits<double>::min());
  return std::max((right - direct).norm(), (left - direct).norm()) / denom;
}

MaxMultEvidence max_mult_test(const HerglotzMatrix& m, const ExtensionParameter& d, double x,
                              const Tolerances& tol) {
  check_dims(m, d);
  MaxMultEvidence ev;
  ev.x = x;
  auto t = t_matrix(m, x, tol);
  ev.t_value = std::move(t.value);
  ev.divergent_directions = std::move(t.divergent_directions);
  auto bv = boundary_value(m, x, tol);
  ev.m_boundary = std::move(bv.value);
  ev.residual = ev.m_boundary ? (*ev.m_boundary - d.matrix()).norm() : std::numeric_limits<double>::infinity();
  ev.verdict = ev.t_finite() && ev.m_boundary && matches(d.matrix(), ev.residual, tol);
  return ev;
}

MaxMultEvidence max_mult_test_via(const HerglotzMatrix& m, const ExtensionParameter& d,
                                  const ExtensionParameter& d_prime, double x, const Tolerances& tol) {
  check_dims(m, d);
  check_dims(m, d_prime);
  const Matrix gap = d_prime.matrix() - d.matrix();
  const double smin = min_singular_value(gap);
  if (!(smin > tol.singular)) {
    throw PreconditionError("D - D' is singular (smallest singular value " + std::to_string(smin) + ")");
  }
  const Matrix target = checked_inverse(gap, "D' - D");
  const auto weyl = weyl_function(m, d_prime, tol);

  MaxMultEvidence ev;
  ev.x = x;
  auto t = poisson_limit(weyl, x, tol);
  if (t.value) ev.t_value = hermitian_part(*t.value);
  auto bv = boundary_limit(weyl, x, tol);
  ev.m_boundary = std::move(bv.value);
  ev.residual = ev.m_boundary ? (*ev.m_boundary - target).norm() : std::numeric_limits<double>::infinity();
  // The match tolerance on D, pushed through X -> (D' - X)^{-1}, whose
  // derivative has norm at most |(D' - D)^{-1}|^2.
  const double sensitivity = std::max(1.0, target.squaredNorm());
  ev.verdict = ev.t_finite() && ev.m_boundary && ev.residual <= tol.match * scale_of(d.matrix()) * sensitivity;
  return ev;
}

std::optional<ExtensionParameter> extension_for_point(const HerglotzMatrix& m, double x, const Tolerances& tol) {
  if (!t_matrix(m, x, tol).finite()) return std::nullopt;
  auto bv = boundary_value(m, x, tol);
  if (!bv.value || !is_hermitian(*bv.value, tol.hermitian)) {
    throw InconsistencyError("T(" + std::to_string(x) + ") is finite but M(x+i0) did not converge to a Hermitian matrix");
  }
  return ExtensionParameter(*bv.value, tol);
}

Matrix mass_at_max_mult(const HerglotzMatrix& m, const ExtensionParameter& d, double x, const Tolerances& tol) {
  const auto ev = max_mult_test(m, d, x, tol);
  if (!ev.verdict) {
    throw PreconditionError("x = " + std::to_string(x) + " is not an eigenvalue of maximum multiplicity of A_D");
  }
  return hermitian_part(checked_inverse(*ev.t_value, "T(x)"));
}

Matrix mass_at_max_mult_via(const HerglotzMatrix& m, const ExtensionParameter& d,
                            const ExtensionParameter& d_prime, double x, const Tolerances& tol) {
  const auto ev = max_mult_test_via(m, d, d_prime, x, tol);
  if (!ev.verdict) {
    throw PreconditionError("x = " + std::to_string(x) + " fails the D' criterion");
  }
  const Matrix gap_inv = checked_inverse(d_prime.matrix() - d.matrix(), "D' - D");
  return hermitian_part(gap_inv * checked_inverse(*ev.t_value, "T_D'(x)") * gap_inv);
}

}  // namespace weylspec
