#include "weylspec/herglotz.hpp"

#include <cmath>
#include <string>

namespace weylspec {

HerglotzMatrix::HerglotzMatrix(MatrixMeasure omega, std::optional<Matrix> offset, const Tolerances& tol)
    : omega_(std::move(omega)) {
  const int n = omega_.dim();
  offset_ = offset.value_or(Matrix::Zero(n, n));
  if (offset_.rows() != n || offset_.cols() != n) {
    throw ValidationError("offset C must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!offset_.allFinite() || !is_hermitian(offset_, tol.hermitian)) {
    throw ValidationError("offset C must be a finite Hermitian matrix");
  }
  offset_ = hermitian_part(offset_);
}

EpsLimit eps_limit(const std::function<Matrix(double)>& f, const Tolerances& tol, EpsSeries series) {
  const double r1 = series == EpsSeries::even ? 4.0 : 2.0;
  const double r2 = series == EpsSeries::even ? 16.0 : 4.0;
  EpsLimit out;
  std::optional<Matrix> first;   // previous first-column extrapolant
  std::optional<Matrix> second;  // previous second-column extrapolant
  double eps = tol.eps0;
  for (int j = 0; j <= tol.eps_steps; ++j, eps /= 2.0) {
    out.trace.push_back({eps, f(eps)});
    if (out.trace.size() < 2) continue;
    const Matrix& coarse = out.trace[out.trace.size() - 2].value;
    const Matrix& fine = out.trace.back().value;
    Matrix a = (r1 * fine - coarse) / (r1 - 1.0);
    if (!a.allFinite()) {
      first.reset();
      second.reset();
      continue;
    }
    std::optional<Matrix> b;
    if (first) b = (r2 * a - *first) / (r2 - 1.0);
    first = std::move(a);
    if (!b) continue;
    if (second && (*b - *second).norm() < tol.bv * scale_of(*b)) {
      out.value = std::move(*b);
      return out;
    }
    second = std::move(b);
  }
  return out;
}

Matrix eval(const HerglotzMatrix& m, Complex z, const Tolerances& tol) {
  if (z.imag() == 0.0) throw DomainError("eval requires Im z != 0; use boundary_value for real points");
  return m.offset() + *integrate(kernel::Cauchy{z}, m.measure(), tol).value;
}

EpsLimit boundary_limit(const MatrixFunction& f, double x, const Tolerances& tol) {
  return eps_limit([&](double eps) { return f(Complex(x, eps)); }, tol);
}

BoundaryValue boundary_value_eps(const HerglotzMatrix& m, double x, const Tolerances& tol) {
  auto lim = boundary_limit([&](Complex z) { return eval(m, z, tol); }, x, tol);
  BoundaryValue out;
  out.x = x;
  out.value = std::move(lim.value);
  out.trace = std::move(lim.trace);
  return out;
}

BoundaryValue boundary_value(const HerglotzMatrix& m, double x, const Tolerances& tol) {
  if (!m.measure().in_support(x, tol)) {
    auto r = integrate(kernel::CauchyReal{x}, m.measure(), tol);
    if (r.finite()) {
      BoundaryValue out;
      out.x = x;
      out.value = hermitian_part(m.offset() + *r.value);
      out.closed_form = true;
      return out;
    }
  }
  return boundary_value_eps(m, x, tol);
}

IntegralResult t_matrix(const HerglotzMatrix& m, double x, const Tolerances& tol) {
  return integrate(kernel::PoissonSquare{x}, m.measure(), tol);
}

BoundaryReport boundary_report(const HerglotzMatrix& m, double x, const Tolerances& tol) {
  BoundaryReport out;
  out.x = x;
  out.t = t_matrix(m, x, tol);
  auto bv = boundary_value(m, x, tol);
  out.eps_trace = std::move(bv.trace);
  if (bv.value) {
    out.hermitian = is_hermitian(*bv.value, tol.hermitian);
    out.m_boundary = out.hermitian ? hermitian_part(*bv.value) : *bv.value;
  }
  if (out.t.finite() && !(out.m_boundary && out.hermitian)) {
    throw InconsistencyError("T(" + std::to_string(x) +
                             ") is finite but M(x+i0) is missing or not Hermitian");
  }
  return out;
}

Matrix atom_mass(const MatrixFunction& f, double x, const Tolerances& tol) {
  // Hermitian part of -i eps F(x+i eps), i.e. eps Im F(x+i eps). The
  // anti-Hermitian part carries a delta/eps term when x misses the atom by
  // delta, so only the Hermitian part enters the convergence test.
  auto lim = eps_limit([&](double eps) -> Matrix { return eps * imaginary_part(f(Complex(x, eps))); }, tol,
                       EpsSeries::even);
  if (!lim.value) {
    throw NotConvergedError("atom mass at x = " + std::to_string(x) + " did not converge");
  }
  return hermitian_part(*lim.value);
}

Matrix atom_mass(const HerglotzMatrix& m, double x, const Tolerances& tol) {
  return atom_mass([&](Complex z) { return eval(m, z, tol); }, x, tol);
}

EpsLimit poisson_limit(const MatrixFunction& f, double x, const Tolerances& tol) {
  return eps_limit([&](double eps) -> Matrix { return imaginary_part(f(Complex(x, eps))) / eps; }, tol,
                   EpsSeries::even);
}

}  // namespace weylspec
