#include "weylspec/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace weylspec {

namespace {

Matrix gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, k) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

Matrix random_hermitian(int n, Rng& rng, double scale) {
  return scale * hermitian_part(gaussian(n, n, rng));
}

Matrix random_psd(int n, int rank, Rng& rng) {
  const Matrix g = gaussian(n, rank, rng) / std::sqrt(2.0 * n);
  return hermitian_part(g * g.adjoint());
}

HerglotzMatrix random_atomic_instance(Rng& rng, int n, int atom_count, bool with_offset) {
  std::uniform_real_distribution<double> where(-3.0, 3.0);
  std::uniform_int_distribution<int> rank_of(1, n);
  std::vector<double> points;
  while (static_cast<int>(points.size()) < atom_count) {
    const double x = where(rng);
    const bool spaced = std::all_of(points.begin(), points.end(), [x](double p) { return std::abs(p - x) > 0.05; });
    if (spaced) points.push_back(x);
  }
  std::vector<Atom> atoms;
  for (int k = 0; k < atom_count; ++k) {
    atoms.push_back({points[k], random_psd(n, k == 0 ? n : rank_of(rng), rng)});
  }
  MatrixMeasure omega(n, std::move(atoms), {});
  std::optional<Matrix> c;
  if (with_offset) c = random_hermitian(n, rng, 0.5);
  return HerglotzMatrix(std::move(omega), std::move(c));
}

double random_point_off_atoms(Rng& rng, const MatrixMeasure& omega, double lo, double hi, double min_gap) {
  std::uniform_real_distribution<double> where(lo, hi);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double x = where(rng);
    const bool clear = std::all_of(omega.atoms().begin(), omega.atoms().end(),
                                   [&](const Atom& a) { return std::abs(a.x - x) >= min_gap; });
    const bool off_ac = std::none_of(omega.pieces().begin(), omega.pieces().end(),
                                     [&](const ACPiece& p) { return x > p.a - min_gap && x < p.b + min_gap; });
    if (clear && off_ac) return x;
  }
  throw PreconditionError("no point of the requested interval stays clear of the support");
}

ExtensionParameter random_admissible_d_prime(Rng& rng, const ExtensionParameter& d, double min_gap) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Matrix e = random_hermitian(d.dim(), rng);
    if (min_singular_value(e) >= min_gap) return ExtensionParameter(d.matrix() + e);
  }
  throw PreconditionError("could not sample an admissible D'");
}

}  // namespace weylspec
