#include "weylspec/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace weylspec {

namespace {

double coincidence(double x, const Tolerances& tol) { return tol.x * std::max(1.0, std::abs(x)); }

bool has_mass(const Matrix& w) { return w.trace().real() > 0.0; }

void validate_psd(const Matrix& m, int dim, const Tolerances& tol, const std::string& what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw ValidationError(what + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                          " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw ValidationError(what + ": non-finite entry");
  if (!is_hermitian(m, tol.hermitian)) throw ValidationError(what + ": matrix is not Hermitian");
  if (!is_psd(m, tol.rank)) throw ValidationError(what + ": matrix is not positive semidefinite");
}

// Directions e_i (1-based) with a nonzero diagonal entry; the measure is PSD,
// so a zero diagonal entry means a zero row.
void collect_directions(const Matrix& w, const Tolerances& tol, std::set<int>& out) {
  const double top = std::max(hermitian_eigenvalues(w).maxCoeff(), 0.0);
  for (int i = 0; i < w.rows(); ++i) {
    if (w(i, i).real() > tol.rank * top) out.insert(i + 1);
  }
}

struct Contribution {
  Complex weight;
  bool divergent = false;
};

Contribution at_point(const Kernel& f, double y, const Tolerances& tol) {
  return std::visit(
      [&](const auto& k) -> Contribution {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kernel::Indicator>) {
          return {k.set.contains(y) ? 1.0 : 0.0};
        } else if constexpr (std::is_same_v<K, kernel::PoissonSquare>) {
          const double d = k.x - y;
          if (std::abs(d) <= coincidence(y, tol)) return {0.0, true};
          return {1.0 / (d * d)};
        } else if constexpr (std::is_same_v<K, kernel::Regularized>) {
          const double d = k.x - y;
          return {1.0 / (d * d + 1.0 / (k.m * k.m))};
        } else if constexpr (std::is_same_v<K, kernel::Cauchy>) {
          return {1.0 / (y - k.z) - y / (1.0 + y * y)};
        } else if constexpr (std::is_same_v<K, kernel::CauchyReal>) {
          const double d = y - k.x;
          if (std::abs(d) <= coincidence(y, tol)) return {0.0, true};
          return {1.0 / d - y / (1.0 + y * y)};
        } else {
          return {1.0 / (1.0 + y * y)};
        }
      },
      f);
}

Contribution over_piece(const Kernel& f, double a, double b, const Tolerances& tol) {
  return std::visit(
      [&](const auto& k) -> Contribution {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kernel::Indicator>) {
          return {k.set.overlap_length(a, b)};
        } else if constexpr (std::is_same_v<K, kernel::PoissonSquare>) {
          const double delta = coincidence(k.x, tol);
          if (k.x >= a - delta && k.x <= b + delta) return {0.0, true};
          return {1.0 / (k.x - b) - 1.0 / (k.x - a)};
        } else if constexpr (std::is_same_v<K, kernel::Regularized>) {
          return {k.m * (std::atan(k.m * (b - k.x)) - std::atan(k.m * (a - k.x)))};
        } else if constexpr (std::is_same_v<K, kernel::Cauchy>) {
          // y - z stays in one open half-plane, so the principal logs never
          // cross the branch cut.
          const Complex za = Complex(a) - k.z;
          const Complex zb = Complex(b) - k.z;
          return {std::log(zb) - std::log(za) - 0.5 * std::log((1.0 + b * b) / (1.0 + a * a))};
        } else if constexpr (std::is_same_v<K, kernel::CauchyReal>) {
          const double delta = coincidence(k.x, tol);
          if (k.x >= a - delta && k.x <= b + delta) return {0.0, true};
          return {std::log(std::abs(b - k.x)) - std::log(std::abs(a - k.x)) -
                  0.5 * std::log((1.0 + b * b) / (1.0 + a * a))};
        } else {
          return {std::atan(b) - std::atan(a)};
        }
      },
      f);
}

}  // namespace

bool Interval::contains(double x) const {
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool Interval::empty() const {
  if (lo < hi) return false;
  return !(lo == hi && lo_closed && hi_closed);
}

IntervalSet::IntervalSet(std::initializer_list<Interval> parts)
    : IntervalSet(std::vector<Interval>(parts)) {}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) {
  for (const auto& p : parts_) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi)) {
      throw DomainError("interval set must be bounded");
    }
    if (p.lo > p.hi) throw DomainError("interval with lo > hi");
  }
}

bool IntervalSet::contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(), [x](const Interval& p) { return p.contains(x); });
}

double IntervalSet::overlap_length(double a, double b) const {
  std::vector<std::pair<double, double>> clipped;
  for (const auto& p : parts_) {
    const double lo = std::max(a, p.lo);
    const double hi = std::min(b, p.hi);
    if (lo < hi) clipped.emplace_back(lo, hi);
  }
  std::sort(clipped.begin(), clipped.end());
  double total = 0.0;
  double cur_lo = 0.0;
  double cur_hi = 0.0;
  bool open = false;
  for (const auto& [lo, hi] : clipped) {
    if (open && lo <= cur_hi) {
      cur_hi = std::max(cur_hi, hi);
      continue;
    }
    if (open) total += cur_hi - cur_lo;
    cur_lo = lo;
    cur_hi = hi;
    open = true;
  }
  if (open) total += cur_hi - cur_lo;
  return total;
}

MatrixMeasure::MatrixMeasure(int dim, std::vector<Atom> atoms, std::vector<ACPiece> pieces,
                             const Tolerances& tol)
    : dim_(dim), atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  if (dim_ < 1) throw ValidationError("measure dimension must be positive");
  bool nontrivial = false;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto what = "atom " + std::to_string(k);
    if (!std::isfinite(atoms_[k].x)) throw ValidationError(what + ": non-finite point");
    validate_psd(atoms_[k].weight, dim_, tol, what);
    nontrivial = nontrivial || has_mass(atoms_[k].weight);
  }
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto what = "ac piece " + std::to_string(k);
    const auto& p = pieces_[k];
    if (!std::isfinite(p.a) || !std::isfinite(p.b)) throw ValidationError(what + ": non-finite endpoint");
    if (!(p.a < p.b)) throw ValidationError(what + ": requires a < b");
    validate_psd(p.density, dim_, tol, what);
    nontrivial = nontrivial || has_mass(p.density);
  }
  if (!nontrivial) throw ValidationError("measure is trivial (no atom or piece carries mass)");

  std::stable_sort(atoms_.begin(), atoms_.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  for (std::size_t k = 1; k < atoms_.size(); ++k) {
    if (atoms_[k].x == atoms_[k - 1].x) {
      throw ValidationError("atoms at duplicate point " + std::to_string(atoms_[k].x));
    }
  }
  std::stable_sort(pieces_.begin(), pieces_.end(), [](const ACPiece& l, const ACPiece& r) { return l.a < r.a; });
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    if (pieces_[k].a < pieces_[k - 1].b) {
      throw ValidationError("ac pieces overlap near " + std::to_string(pieces_[k].a));
    }
  }
  for (auto& a : atoms_) a.weight = hermitian_part(a.weight);
  for (auto& p : pieces_) p.density = hermitian_part(p.density);
}

const Atom* MatrixMeasure::atom_at(double x, const Tolerances& tol) const {
  for (const auto& a : atoms_) {
    if (std::abs(a.x - x) <= coincidence(a.x, tol) && has_mass(a.weight)) return &a;
  }
  return nullptr;
}

bool MatrixMeasure::in_support(double x, const Tolerances& tol) const {
  if (atom_at(x, tol) != nullptr) return true;
  const double delta = coincidence(x, tol);
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const ACPiece& p) {
    return has_mass(p.density) && x >= p.a - delta && x <= p.b + delta;
  });
}

std::pair<double, double> MatrixMeasure::support_hull() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& a : atoms_) {
    if (!has_mass(a.weight)) continue;
    lo = std::min(lo, a.x);
    hi = std::max(hi, a.x);
  }
  for (const auto& p : pieces_) {
    if (!has_mass(p.density)) continue;
    lo = std::min(lo, p.a);
    hi = std::max(hi, p.b);
  }
  return {lo, hi};
}

Matrix measure_of_set(const MatrixMeasure& omega, const IntervalSet& set) {
  Matrix out = Matrix::Zero(omega.dim(), omega.dim());
  for (const auto& a : omega.atoms()) {
    if (set.contains(a.x)) out += a.weight;
  }
  for (const auto& p : omega.pieces()) {
    out += set.overlap_length(p.a, p.b) * p.density;
  }
  return out;
}

double trace_measure(const MatrixMeasure& omega, const IntervalSet& set) {
  const Matrix m = measure_of_set(omega, set);
  double total = 0.0;
  for (int i = 0; i < omega.dim(); ++i) total += m(i, i).real();
  return total;
}

IntegralResult integrate(const Kernel& f, const MatrixMeasure& omega, const Tolerances& tol) {
  if (const auto* c = std::get_if<kernel::Cauchy>(&f); c != nullptr && c->z.imag() == 0.0) {
    throw DomainError("cauchy kernel requires Im z != 0");
  }
  if (const auto* r = std::get_if<kernel::Regularized>(&f); r != nullptr && !(r->m > 0.0)) {
    throw DomainError("regularization level m must be positive");
  }
  Matrix sum = Matrix::Zero(omega.dim(), omega.dim());
  std::set<int> divergent;
  for (const auto& a : omega.atoms()) {
    if (!has_mass(a.weight)) continue;
    const auto c = at_point(f, a.x, tol);
    if (c.divergent) {
      collect_directions(a.weight, tol, divergent);
    } else {
      sum += c.weight * a.weight;
    }
  }
  for (const auto& p : omega.pieces()) {
    if (!has_mass(p.density)) continue;
    const auto c = over_piece(f, p.a, p.b, tol);
    if (c.divergent) {
      collect_directions(p.density, tol, divergent);
    } else {
      sum += c.weight * p.density;
    }
  }
  IntegralResult out;
  if (divergent.empty()) {
    out.value = std::move(sum);
  } else {
    out.divergent_directions.assign(divergent.begin(), divergent.end());
  }
  return out;
}

DensityMatrixValue density_matrix(const MatrixMeasure& omega, double t, const Tolerances& tol) {
  const Matrix* carrier = nullptr;
  if (const Atom* a = omega.atom_at(t, tol)) {
    carrier = &a->weight;
  } else {
    for (const auto& p : omega.pieces()) {
      if (t > p.a && t < p.b && has_mass(p.density)) {
        carrier = &p.density;
        break;
      }
    }
  }
  if (carrier == nullptr) {
    throw DomainError("density matrix undefined at t = " + std::to_string(t) + ": no trace mass there");
  }
  DensityMatrixValue out;
  out.t = t;
  out.psi = *carrier / carrier->trace().real();
  out.multiplicity = numerical_rank(out.psi, tol.rank);
  return out;
}

}  // namespace weylspec
