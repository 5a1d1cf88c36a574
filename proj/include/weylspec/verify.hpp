#pragma once

#include <cstdint>
#include <optional>

#include "weylspec/io.hpp"

namespace weylspec {

// Pass thresholds of the oracle-versus-criterion campaign.
struct VerifyThresholds {
  double x_agreement = 1e-9;
  double mass_agreement = 1e-6;  // T(x)^{-1} vs residue mass
  double residue_vs_limit = 1e-6;  // residue mass vs epsilon-path mass, scaled by max(1, |mass|)
  double d_prime_gap = 1e-3;  // sigma_min(D - D') for sampled D'
};

struct VerifyOptions {
  int trials = 10;
  std::uint64_t seed = 0;
  // Fixed purely atomic instance; random instances (n in {1,2,3}, 3-8 atoms)
  // when empty.
  std::optional<HerglotzMatrix> instance;
  int d_prime_samples = 5;
  VerifyThresholds thresholds;
  Tolerances tol;
};

struct VerifyOutcome {
  json report;
  int mismatches = 0;

  bool ok() const { return mismatches == 0; }
};

// Each trial picks x0 off the atoms, sets D = M(x0+i0), classifies the poles
// of M_D on a random window around x0 with the oracle, and checks that the
// maximum-multiplicity points, masses and the D' criterion agree with the
// boundary-value criterion. Deterministic in (options, seed).
VerifyOutcome run_verify(const VerifyOptions& options);

}  // namespace weylspec
