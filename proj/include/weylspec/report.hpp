#pragma once

#include <string>
#include <vector>

#include "weylspec/io.hpp"
#include "weylspec/scan.hpp"

namespace weylspec {

// Plot-ready tabular output. Numbers use %.17g so a value survives a text
// round trip; complex matrix entries are written row-major as re,im pairs
// named <name>_<row><col>_re / _im (0-based). Divergence directions are
// 1-based and joined by ';'.

std::string format_real(double v);

// x,converged,m_..,t_finite,t_..,divergent_directions
std::string boundary_csv(const std::vector<BoundaryReport>& rows, int dim);
json to_json(const BoundaryReport& row);

// x,t_finite,t_..,divergent_directions
std::string tmatrix_csv(const std::vector<std::pair<double, IntegralResult>>& rows, int dim);

// x,in_support,t_finite,divergent_directions,t_..,reg_m<m>_d<i>..,exceeds_k
std::string scan_csv(const std::vector<ScanRecord>& rows, const ScanConfig& config, int dim);
json scan_json(const std::vector<ScanRecord>& rows, const ScanConfig& config);

// x,rank,is_max_mult,residue_fallback,mass_..
std::string spectral_csv(const SpectralReport& report, int dim);

}  // namespace weylspec
