#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylspec/extensions.hpp"

namespace weylspec {

// Brute-force spectral analysis of A_D for purely atomic measures. Nothing
// here uses the boundary-value criterion; eigenspace dimensions come from
// the rank of the recovered point mass of M_D.

struct PoleCandidate {
  double x = 0.0;
  int kernel_dim = 0;
};

struct PoleSearch {
  std::vector<PoleCandidate> poles;
  // Points where a branch of D - M vanishes at an atom of Omega or at a
  // window endpoint; not bracketed.
  std::vector<double> unresolved;
};

// Real points in (a, b) where D - M(x) is singular. Between consecutive atoms
// the eigenvalues of D - M(x) are strictly decreasing in x, so each branch is
// bracketed by its limits at the interval ends and bisected.
PoleSearch real_poles(const HerglotzMatrix& m, const ExtensionParameter& d, double a, double b,
                      const Tolerances& tol = {});

// -Res_{z=p} (D - M(z))^{-1} = V (V* M'(p) V)^{-1} V*, V spanning ker(D - M(p)).
// kernel_dim overrides the eigenvalue clustering used to pick V.
Matrix residue_mass(const HerglotzMatrix& m, const ExtensionParameter& d, double p,
                    std::optional<int> kernel_dim = std::nullopt, const Tolerances& tol = {});

struct SpectralPole {
  double x = 0.0;
  Matrix mass;
  int rank = 0;
  bool is_max_mult = false;
  // The residue formula was ill-conditioned and the epsilon path was used.
  bool residue_fallback = false;
};

struct SpectralReport {
  std::vector<SpectralPole> poles;
  double a = 0.0;
  double b = 0.0;
  std::string measure_ref;
  std::vector<double> unresolved;

  std::vector<double> max_mult_points() const;
};

SpectralReport classify(const HerglotzMatrix& m, const ExtensionParameter& d, double a, double b,
                        const Tolerances& tol = {}, std::string measure_ref = {});

}  // namespace weylspec
