#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "weylspec/types.hpp"

namespace weylspec {

// Point mass W at x.
struct Atom {
  double x = 0.0;
  Matrix weight;
};

// Constant matrix density rho (w.r.t. Lebesgue measure) on [a, b].
struct ACPiece {
  double a = 0.0;
  double b = 0.0;
  Matrix density;
};

// Bounded interval with endpoint-inclusion flags. lo == hi with both ends
// closed is the single point {lo}.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double x) const;
  bool empty() const;
};

// Finite union of bounded intervals. Overlaps are allowed and counted once.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts);
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet closed(double lo, double hi) { return IntervalSet{{lo, hi, true, true}}; }

  const std::vector<Interval>& parts() const { return parts_; }
  bool contains(double x) const;
  // Lebesgue measure of the set intersected with [a, b].
  double overlap_length(double a, double b) const;

 private:
  std::vector<Interval> parts_;
};

// Matrix-valued Borel measure: finitely many atoms plus piecewise-constant
// PSD densities. Validated on construction and immutable afterwards.
class MatrixMeasure {
 public:
  MatrixMeasure(int dim, std::vector<Atom> atoms, std::vector<ACPiece> pieces,
                const Tolerances& tol = {});

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<ACPiece>& pieces() const { return pieces_; }
  bool purely_atomic() const { return pieces_.empty(); }

  // Atom carrying nonzero mass within the coincidence tolerance of x.
  const Atom* atom_at(double x, const Tolerances& tol) const;
  // Whether x lies in the closed support.
  bool in_support(double x, const Tolerances& tol) const;
  // Smallest interval containing the support.
  std::pair<double, double> support_hull() const;

 private:
  int dim_;
  std::vector<Atom> atoms_;  // sorted by x
  std::vector<ACPiece> pieces_;  // sorted by a
};

// Closed-form integrands.
namespace kernel {
struct Indicator {
  IntervalSet set;
};
// y -> 1 / (x - y)^2
struct PoissonSquare {
  double x;
};
// y -> 1 / ((x - y)^2 + 1/m^2)
struct Regularized {
  double x;
  double m;
};
// y -> 1/(y - z) - y/(1 + y^2), Im z != 0
struct Cauchy {
  Complex z;
};
// y -> 1/(y - x) - y/(1 + y^2) for real x; divergent where x meets the support
struct CauchyReal {
  double x;
};
// y -> 1 / (1 + y^2)
struct InvOnePlusSquare {};
}  // namespace kernel

using Kernel = std::variant<kernel::Indicator, kernel::PoissonSquare, kernel::Regularized,
                            kernel::Cauchy, kernel::CauchyReal, kernel::InvOnePlusSquare>;

// Either a finite matrix or the set of coordinate directions e_i (1-based)
// whose diagonal scalar integral diverges.
struct IntegralResult {
  std::optional<Matrix> value;
  std::vector<int> divergent_directions;

  bool finite() const { return value.has_value(); }
};

Matrix measure_of_set(const MatrixMeasure& omega, const IntervalSet& set);

double trace_measure(const MatrixMeasure& omega, const IntervalSet& set);

IntegralResult integrate(const Kernel& f, const MatrixMeasure& omega, const Tolerances& tol = {});

// Radon-Nikodym derivative of Omega with respect to its trace measure, and
// its rank (the multiplicity function).
struct DensityMatrixValue {
  double t = 0.0;
  Matrix psi;
  int multiplicity = 0;
};

DensityMatrixValue density_matrix(const MatrixMeasure& omega, double t, const Tolerances& tol = {});

}  // namespace weylspec
