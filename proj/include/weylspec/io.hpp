#pragma once

#include <string>

#include <json.hpp>

#include "weylspec/extensions.hpp"
#include "weylspec/oracle.hpp"

namespace weylspec {

using json = nlohmann::json;

// Matrices are row-major arrays of rows; every entry is a [re, im] pair.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& where);

// { "n": int, "atoms": [{"x", "W"}], "ac": [{"a", "b", "rho"}], "C"? }
MatrixMeasure measure_from_json(const json& j, const Tolerances& tol = {});
HerglotzMatrix herglotz_from_json(const json& j, const Tolerances& tol = {});
json measure_to_json(const MatrixMeasure& omega);
json herglotz_to_json(const HerglotzMatrix& m);

// Parses a file; errors carry the path and, for syntax errors, the line.
json read_json_file(const std::string& path);
HerglotzMatrix load_herglotz(const std::string& path, const Tolerances& tol = {});
// Accepts a bare matrix or an object with a "D" member.
ExtensionParameter load_extension(const std::string& path, int dim, const Tolerances& tol = {});

json to_json(const SpectralReport& report);
// {x, verdict, residual, t_finite, mass (when verdict holds)}
json to_json(const MaxMultEvidence& ev, const std::optional<Matrix>& mass);

}  // namespace weylspec
