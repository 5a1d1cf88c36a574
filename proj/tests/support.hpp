#pragma once

// Shared fixtures and independent numerical oracles for the test suites.
// Nothing here calls the library's closed forms; the oracles integrate,
// differentiate and root-find by brute force.

#include <cmath>
#include <functional>
#include <vector>

#include "weylspec/weylspec.hpp"

namespace testing {

using namespace weylspec;

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n, n);
  int i = 0;
  for (const auto& row : rows) {
    int k = 0;
    for (const auto& v : row) m(i, k++) = v;
    ++i;
  }
  return m;
}

inline Matrix scalar(double v) { return Matrix::Constant(1, 1, Complex(v, 0.0)); }

inline Matrix identity(int n) { return Matrix::Identity(n, n); }

inline Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<int>(values.size()), static_cast<int>(values.size()));
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

// Omega = delta_0, M(z) = -1/z.
inline HerglotzMatrix single_atom() { return HerglotzMatrix(MatrixMeasure(1, {{0.0, scalar(1.0)}}, {})); }

// Omega = I delta_{-1} + I delta_{1}, M(z) = -2z/(z^2 - 1) I.
inline HerglotzMatrix two_atom() {
  return HerglotzMatrix(MatrixMeasure(2, {{-1.0, identity(2)}, {1.0, identity(2)}}, {}));
}

// Lebesgue on [0,1] plus delta_2.
inline MatrixMeasure mixed_measure() { return MatrixMeasure(1, {{2.0, scalar(1.0)}}, {{0.0, 1.0, scalar(1.0)}}); }

inline double rel_diff(const Matrix& a, const Matrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

// Adaptive Simpson on [a, b] for a complex scalar integrand.
inline Complex simpson(const std::function<Complex(double)>& f, double a, double b, double tol = 1e-13) {
  std::function<Complex(double, double, Complex, Complex, Complex, Complex, double, int)> step =
      [&](double lo, double hi, Complex flo, Complex fmid, Complex fhi, Complex whole, double eps, int depth) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid);
        const double rm = 0.5 * (mid + hi);
        const Complex flm = f(lm);
        const Complex frm = f(rm);
        const Complex left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const Complex right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
          return left + right + (left + right - whole) / 15.0;
        }
        return step(lo, mid, flo, flm, fmid, left, eps / 2.0, depth - 1) +
               step(mid, hi, fmid, frm, fhi, right, eps / 2.0, depth - 1);
      };
  const Complex fa = f(a);
  const Complex fb = f(b);
  const Complex fm = f(0.5 * (a + b));
  return step(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

// Integral of a scalar kernel against a measure: atoms summed directly,
// pieces by adaptive quadrature entrywise through rho.
inline Matrix quadrature(const MatrixMeasure& omega, const std::function<Complex(double)>& k) {
  Matrix out = Matrix::Zero(omega.dim(), omega.dim());
  for (const auto& a : omega.atoms()) out += k(a.x) * a.weight;
  for (const auto& p : omega.pieces()) out += simpson(k, p.a, p.b) * p.density;
  return out;
}

// M(z) from its integral representation by quadrature.
inline Matrix eval_by_quadrature(const HerglotzMatrix& m, Complex z) {
  return m.offset() + quadrature(m.measure(), [z](double y) { return 1.0 / (y - z) - y / (1.0 + y * y); });
}

// Central difference of a real-analytic matrix function on the real axis.
inline Matrix derivative(const std::function<Matrix(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Real roots of a scalar function located by sign changes on a dense grid
// and refined by bisection; poles are excluded by requiring the bracket to
// shrink the value.
inline std::vector<double> scalar_roots(const std::function<double(double)>& g, double a, double b, int samples) {
  std::vector<double> roots;
  double prev_x = a;
  double prev = g(a);
  for (int i = 1; i <= samples; ++i) {
    const double x = a + (b - a) * i / samples;
    const double v = g(x);
    if (std::isfinite(prev) && std::isfinite(v) && ((prev < 0) != (v < 0))) {
      double lo = prev_x;
      double hi = x;
      double flo = prev;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double r = 0.5 * (lo + hi);
      if (std::abs(g(r)) < 1e-6) roots.push_back(r);
    }
    prev_x = x;
    prev = v;
  }
  return roots;
}

}  // namespace testing
