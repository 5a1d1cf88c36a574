#pragma once

#include <optional>

#include "weylspec/herglotz.hpp"

namespace weylspec {

// Hermitian matrix D selecting the self-adjoint extension A_D disjoint from
// the reference extension.
class ExtensionParameter {
 public:
  explicit ExtensionParameter(Matrix d, const Tolerances& tol = {});

  const Matrix& matrix() const { return d_; }
  int dim() const { return static_cast<int>(d_.rows()); }

 private:
  Matrix d_;
};

// M_D(z) = (D - M(z))^{-1}.
Matrix weyl_of_extension(const HerglotzMatrix& m, const ExtensionParameter& d, Complex z,
                         const Tolerances& tol = {});

// z -> M_D(z); keeps references to m and d.
MatrixFunction weyl_function(const HerglotzMatrix& m, const ExtensionParameter& d,
                             const Tolerances& tol = {});

// Largest relative Frobenius residual between the direct M_D(z) and the two
// forms M_D' [(D - D') M_D' + I]^{-1} and [M_D' (D - D') + I]^{-1} M_D'.
double resolvent_identity_residual(const HerglotzMatrix& m, const ExtensionParameter& d,
                                   const ExtensionParameter& d_prime, Complex z,
                                   const Tolerances& tol = {});

struct MaxMultEvidence {
  double x = 0.0;
  // Regularity matrix; for the D' criterion this is the Omega_{D'} integral.
  std::optional<Matrix> t_value;
  std::vector<int> divergent_directions;
  std::optional<Matrix> m_boundary;
  // Frobenius distance between the boundary value and its target; infinite
  // when the boundary value did not converge.
  double residual = 0.0;
  bool verdict = false;

  bool t_finite() const { return t_value.has_value(); }
  bool boundary_converged() const { return m_boundary.has_value(); }
};

// x is an eigenvalue of maximum multiplicity of A_D iff T(x) is finite and
// M(x+i0) = D.
MaxMultEvidence max_mult_test(const HerglotzMatrix& m, const ExtensionParameter& d, double x,
                              const Tolerances& tol = {});

// Equivalent test through another extension D' with D - D' invertible:
// \int dOmega_{D'}/(x - y)^2 finite and M_{D'}(x+i0) = (D' - D)^{-1}.
MaxMultEvidence max_mult_test_via(const HerglotzMatrix& m, const ExtensionParameter& d,
                                  const ExtensionParameter& d_prime, double x,
                                  const Tolerances& tol = {});

// D = M(x+i0) when T(x) is finite, so that x is a maximum-multiplicity
// eigenvalue of A_D; nullopt when T(x) diverges.
std::optional<ExtensionParameter> extension_for_point(const HerglotzMatrix& m, double x,
                                                      const Tolerances& tol = {});

// Omega_D({x}) = T(x)^{-1} at a maximum-multiplicity point.
Matrix mass_at_max_mult(const HerglotzMatrix& m, const ExtensionParameter& d, double x,
                        const Tolerances& tol = {});

// Same mass through the D' criterion:
// (D' - D)^{-1} [\int dOmega_{D'}/(x - y)^2]^{-1} (D' - D)^{-1}.
Matrix mass_at_max_mult_via(const HerglotzMatrix& m, const ExtensionParameter& d,
                            const ExtensionParameter& d_prime, double x, const Tolerances& tol = {});

}  // namespace weylspec
