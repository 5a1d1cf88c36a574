#pragma once

#include <random>

#include "weylspec/extensions.hpp"

namespace weylspec {

using Rng = std::mt19937_64;

Matrix random_hermitian(int n, Rng& rng, double scale = 1.0);

// G G* with G an n x rank complex Gaussian matrix.
Matrix random_psd(int n, int rank, Rng& rng);

// n x n offset (random Hermitian when with_offset) plus `atom_count` atoms at
// distinct points in [-3, 3]. The first atom has a full-rank weight so the
// total mass is definite; the others have random rank.
HerglotzMatrix random_atomic_instance(Rng& rng, int n, int atom_count, bool with_offset = true);

// Uniform point of [lo, hi] at distance >= min_gap from every atom.
double random_point_off_atoms(Rng& rng, const MatrixMeasure& omega, double lo, double hi, double min_gap);

// D' = D + E with E random Hermitian and sigma_min(E) >= min_gap.
ExtensionParameter random_admissible_d_prime(Rng& rng, const ExtensionParameter& d, double min_gap);

}  // namespace weylspec
