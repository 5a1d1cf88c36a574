#include "weylspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

namespace weylspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rational-function view of M for a purely atomic measure, evaluated straight
// from the atoms.
class AtomicWeyl {
 public:
  AtomicWeyl(const HerglotzMatrix& m, const ExtensionParameter& d) : d_(d.matrix()), c_(m.offset()) {
    for (const auto& a : m.measure().atoms()) {
      if (a.weight.trace().real() > 0.0) atoms_.push_back(a);
    }
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  int dim() const { return static_cast<int>(d_.rows()); }

  // D - M(x), skipping atom `skip` (its pole term and its constant are
  // handled by the caller).
  Matrix h(double x, int skip = -1) const {
    Matrix out = d_ - c_;
    for (int k = 0; k < static_cast<int>(atoms_.size()); ++k) {
      const double y = atoms_[k].x;
      const double shift = y / (1.0 + y * y);
      if (k == skip) {
        out += shift * atoms_[k].weight;
      } else {
        out -= (1.0 / (y - x) - shift) * atoms_[k].weight;
      }
    }
    return out;
  }

  // M'(x) = sum W_k / (x_k - x)^2.
  Matrix derivative(double x) const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (const auto& a : atoms_) {
      const double d = a.x - x;
      out += a.weight / (d * d);
    }
    return out;
  }

 private:
  Matrix d_;
  Matrix c_;
  std::vector<Atom> atoms_;
};

// Ordered eigenvalue limits of D - M(x) as x approaches atom k from the
// right (from_right) or from the left. Directions in the range of W_k run off
// to +inf / -inf; the rest converge to the compression onto ker W_k.
RealVector atom_limits(const AtomicWeyl& w, int k, bool from_right, const Tolerances& tol) {
  const int n = w.dim();
  const Matrix regular = w.h(w.atoms()[k].x, k);
  Eigen::SelfAdjointEigenSolver<Matrix> ws(w.atoms()[k].weight);
  const double top = ws.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<int> null_cols;
  for (int i = 0; i < n; ++i) {
    if (ws.eigenvalues()(i) <= tol.rank * top) null_cols.push_back(i);
  }
  const int nk = static_cast<int>(null_cols.size());
  Matrix q(n, nk);
  for (int i = 0; i < nk; ++i) q.col(i) = ws.eigenvectors().col(null_cols[i]);
  RealVector finite = nk > 0 ? hermitian_eigenvalues(q.adjoint() * regular * q) : RealVector(0);
  RealVector out(n);
  if (from_right) {
    out << finite, RealVector::Constant(n - nk, kInf);
  } else {
    out << RealVector::Constant(n - nk, -kInf), finite;
  }
  return out;
}

struct Endpoint {
  double x;
  RealVector values;
};

double zero_floor(const RealVector& values) {
  double scale = 1.0;
  for (int i = 0; i < values.size(); ++i) {
    if (std::isfinite(values(i))) scale = std::max(scale, std::abs(values(i)));
  }
  return 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

// Root of branch j on (lo, hi), where branch j is positive at lo and negative
// at hi and strictly decreasing in between.
double bisect_branch(const AtomicWeyl& w, int j, double lo, double hi, double f_lo, double f_hi,
                     const Tolerances& tol) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol.x * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
    const Matrix h = w.h(mid);
    const double v = hermitian_eigenvalues(h)(j);
    const double noise = 1e-12 * scale_of(h);
    if (v > f_lo + noise || v < f_hi - noise) {
      throw std::logic_error("eigenvalue branch " + std::to_string(j) + " is not decreasing near x = " +
                             std::to_string(mid) + "; an atom lies inside the bracket");
    }
    if (v > 0.0) {
      lo = mid;
      f_lo = v;
    } else {
      hi = mid;
      f_hi = v;
    }
  }
  // Newton polish on the branch: d/dx lambda_j = -v* M'(x) v.
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 2; ++iter) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(w.h(x));
    const Vector v = es.eigenvectors().col(j);
    const double slope = (v.adjoint() * w.derivative(x) * v)(0, 0).real();
    if (!(slope > 0.0)) break;
    const double next = x + es.eigenvalues()(j) / slope;
    if (!(next >= lo && next <= hi)) break;
    x = next;
  }
  return x;
}

void require_oracle_instance(const HerglotzMatrix& m, const ExtensionParameter& d, double a, double b,
                             const Tolerances& tol) {
  if (d.dim() != m.dim()) throw ValidationError("D dimension does not match the Weyl function");
  if (!m.measure().purely_atomic()) throw PreconditionError("oracle requires a purely atomic measure");
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw PreconditionError("oracle window must be bounded with a < b");
  if (m.measure().atom_at(a, tol) || m.measure().atom_at(b, tol)) {
    throw PreconditionError("oracle window endpoints must not be atoms");
  }
  Matrix total = Matrix::Zero(m.dim(), m.dim());
  for (const auto& at : m.measure().atoms()) total += at.weight;
  if (numerical_rank(total, tol.rank) < m.dim()) {
    // Some direction is invisible to every atom: D - M is constant there.
    throw PreconditionError("total atomic mass is rank deficient; D - M(x) is not strictly monotone");
  }
}

}  // namespace

PoleSearch real_poles(const HerglotzMatrix& m, const ExtensionParameter& d, double a, double b,
                      const Tolerances& tol) {
  require_oracle_instance(m, d, a, b, tol);
  const AtomicWeyl w(m, d);
  const int n = w.dim();

  std::vector<Endpoint> right_ends;  // limit from the left at each break
  std::vector<Endpoint> left_ends;   // limit from the right at each break
  left_ends.push_back({a, hermitian_eigenvalues(w.h(a))});
  for (int k = 0; k < static_cast<int>(w.atoms().size()); ++k) {
    const double x = w.atoms()[k].x;
    if (x <= a || x >= b) continue;
    right_ends.push_back({x, atom_limits(w, k, false, tol)});
    left_ends.push_back({x, atom_limits(w, k, true, tol)});
  }
  right_ends.push_back({b, hermitian_eigenvalues(w.h(b))});

  PoleSearch out;
  auto mark_unresolved = [&out](double x) {
    if (std::find(out.unresolved.begin(), out.unresolved.end(), x) == out.unresolved.end()) {
      out.unresolved.push_back(x);
    }
  };

  for (std::size_t s = 0; s < left_ends.size(); ++s) {
    const Endpoint& lo = left_ends[s];
    const Endpoint& hi = right_ends[s];
    const double lo_floor = zero_floor(lo.values);
    const double hi_floor = zero_floor(hi.values);
    std::vector<double> roots;
    for (int j = 0; j < n; ++j) {
      const double fl = lo.values(j);
      const double fh = hi.values(j);
      if (std::abs(fl) <= lo_floor) {
        mark_unresolved(lo.x);
        continue;
      }
      if (std::abs(fh) <= hi_floor) {
        mark_unresolved(hi.x);
        continue;
      }
      if (fl > 0.0 && fh < 0.0) roots.push_back(bisect_branch(w, j, lo.x, hi.x, fl, fh, tol));
    }
    std::sort(roots.begin(), roots.end());
    // Coincident branches share one pole whose kernel has their count.
    std::size_t i = 0;
    while (i < roots.size()) {
      std::size_t k = i + 1;
      const double merge = 1e3 * tol.x * std::max(1.0, std::abs(roots[i]));
      while (k < roots.size() && roots[k] - roots[i] <= merge) ++k;
      double sum = 0.0;
      for (std::size_t q = i; q < k; ++q) sum += roots[q];
      out.poles.push_back({sum / static_cast<double>(k - i), static_cast<int>(k - i)});
      i = k;
    }
  }
  std::sort(out.unresolved.begin(), out.unresolved.end());
  return out;
}

namespace {

struct Residue {
  Matrix mass;
  bool fallback = false;
};

Residue residue_impl(const HerglotzMatrix& m, const ExtensionParameter& d, double p,
                     std::optional<int> kernel_dim, const Tolerances& tol) {
  if (!m.measure().purely_atomic()) throw PreconditionError("oracle requires a purely atomic measure");
  if (m.measure().atom_at(p, tol)) throw PreconditionError("residue point coincides with an atom");
  const AtomicWeyl w(m, d);
  const int n = w.dim();
  const Matrix h = w.h(p);
  const Matrix t = w.derivative(p);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector mag = es.eigenvalues().cwiseAbs();

  int k = 0;
  if (kernel_dim) {
    k = *kernel_dim;
  } else {
    const double floor =
        std::max(tol.rank * mag.maxCoeff(), 1e3 * tol.x * std::max(1.0, std::abs(p)) * t.norm());
    k = static_cast<int>((mag.array() <= floor).count());
  }
  if (k < 1 || k > n) throw PreconditionError("D - M(p) has no kernel at p = " + std::to_string(p));

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int l, int r) { return mag(l) < mag(r); });
  Matrix v(n, k);
  for (int i = 0; i < k; ++i) v.col(i) = es.eigenvectors().col(order[i]);

  const Matrix g = hermitian_part(v.adjoint() * t * v);
  const RealVector gev = hermitian_eigenvalues(g);
  if (gev.minCoeff() > 1e-12 * gev.maxCoeff()) {
    return {hermitian_part(v * g.inverse() * v.adjoint()), false};
  }
  std::cerr << "weylspec: residue at x = " << p << " is ill-conditioned; using the epsilon path\n";
  return {atom_mass(weyl_function(m, d, tol), p, tol), true};
}

}  // namespace

Matrix residue_mass(const HerglotzMatrix& m, const ExtensionParameter& d, double p,
                    std::optional<int> kernel_dim, const Tolerances& tol) {
  return residue_impl(m, d, p, kernel_dim, tol).mass;
}

std::vector<double> SpectralReport::max_mult_points() const {
  std::vector<double> out;
  for (const auto& p : poles) {
    if (p.is_max_mult) out.push_back(p.x);
  }
  return out;
}

SpectralReport classify(const HerglotzMatrix& m, const ExtensionParameter& d, double a, double b,
                        const Tolerances& tol, std::string measure_ref) {
  const auto search = real_poles(m, d, a, b, tol);
  SpectralReport report;
  report.a = a;
  report.b = b;
  report.measure_ref = std::move(measure_ref);
  report.unresolved = search.unresolved;
  for (const auto& cand : search.poles) {
    auto r = residue_impl(m, d, cand.x, cand.kernel_dim, tol);
    SpectralPole pole;
    pole.x = cand.x;
    pole.rank = numerical_rank(r.mass, tol.rank);
    pole.mass = std::move(r.mass);
    pole.is_max_mult = pole.rank == m.dim();
    pole.residue_fallback = r.fallback;
    report.poles.push_back(std::move(pole));
  }
  return report;
}

}  // namespace weylspec
