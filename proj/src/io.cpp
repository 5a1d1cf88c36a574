#include "weylspec/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace weylspec {

namespace {

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

// Non-finite values are not representable in JSON.
json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a nonempty array of rows");
  const auto n = j.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != n) {
      throw ValidationError(where + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = row[k];
      const auto at = where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2) throw ValidationError(at + ": expected [re, im]");
      m(i, k) = Complex(number_at(e[0], at), number_at(e[1], at));
    }
  }
  return m;
}

MatrixMeasure measure_from_json(const json& j, const Tolerances& tol) {
  const auto& nj = member(j, "n", "measure");
  if (!nj.is_number_integer() || nj.get<int>() < 1) throw ValidationError("measure: \"n\" must be a positive integer");
  const int n = nj.get<int>();
  std::vector<Atom> atoms;
  std::vector<ACPiece> pieces;
  if (j.contains("atoms")) {
    const auto& arr = j.at("atoms");
    if (!arr.is_array()) throw ValidationError("measure: \"atoms\" must be an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const auto where = "atom " + std::to_string(k);
      Atom a;
      a.x = number_at(member(arr[k], "x", where), where + ".x");
      a.weight = matrix_from_json(member(arr[k], "W", where), where + ".W");
      atoms.push_back(std::move(a));
    }
  }
  if (j.contains("ac")) {
    const auto& arr = j.at("ac");
    if (!arr.is_array()) throw ValidationError("measure: \"ac\" must be an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const auto where = "ac piece " + std::to_string(k);
      ACPiece p;
      p.a = number_at(member(arr[k], "a", where), where + ".a");
      p.b = number_at(member(arr[k], "b", where), where + ".b");
      p.density = matrix_from_json(member(arr[k], "rho", where), where + ".rho");
      pieces.push_back(std::move(p));
    }
  }
  return MatrixMeasure(n, std::move(atoms), std::move(pieces), tol);
}

HerglotzMatrix herglotz_from_json(const json& j, const Tolerances& tol) {
  auto omega = measure_from_json(j, tol);
  std::optional<Matrix> c;
  if (j.contains("C")) c = matrix_from_json(j.at("C"), "C");
  return HerglotzMatrix(std::move(omega), std::move(c), tol);
}

json measure_to_json(const MatrixMeasure& omega) {
  json j;
  j["n"] = omega.dim();
  j["atoms"] = json::array();
  for (const auto& a : omega.atoms()) j["atoms"].push_back({{"x", a.x}, {"W", matrix_to_json(a.weight)}});
  j["ac"] = json::array();
  for (const auto& p : omega.pieces()) {
    j["ac"].push_back({{"a", p.a}, {"b", p.b}, {"rho", matrix_to_json(p.density)}});
  }
  return j;
}

json herglotz_to_json(const HerglotzMatrix& m) {
  json j = measure_to_json(m.measure());
  j["C"] = matrix_to_json(m.offset());
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ValidationError(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

HerglotzMatrix load_herglotz(const std::string& path, const Tolerances& tol) {
  const json j = read_json_file(path);
  try {
    return herglotz_from_json(j, tol);
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

ExtensionParameter load_extension(const std::string& path, int dim, const Tolerances& tol) {
  const json j = read_json_file(path);
  try {
    const json& body = j.is_object() ? member(j, "D", "D file") : j;
    Matrix d = matrix_from_json(body, "D");
    if (d.rows() != dim) {
      throw ValidationError("D is " + std::to_string(d.rows()) + "x" + std::to_string(d.rows()) +
                            ", measure dimension is " + std::to_string(dim));
    }
    return ExtensionParameter(std::move(d), tol);
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json to_json(const SpectralReport& report) {
  json j;
  j["scan_interval"] = {report.a, report.b};
  j["measure_ref"] = report.measure_ref;
  j["poles"] = json::array();
  for (const auto& p : report.poles) {
    j["poles"].push_back({{"x", p.x},
                          {"rank", p.rank},
                          {"is_max_mult", p.is_max_mult},
                          {"residue_fallback", p.residue_fallback},
                          {"mass", matrix_to_json(p.mass)}});
  }
  j["unresolved"] = report.unresolved;
  return j;
}

json to_json(const MaxMultEvidence& ev, const std::optional<Matrix>& mass) {
  json j;
  j["x"] = ev.x;
  j["verdict"] = ev.verdict;
  j["residual"] = real_to_json(ev.residual);
  j["t_finite"] = ev.t_finite();
  if (ev.t_value) j["t"] = matrix_to_json(*ev.t_value);
  if (!ev.divergent_directions.empty()) j["divergent_directions"] = ev.divergent_directions;
  j["boundary_converged"] = ev.boundary_converged();
  if (ev.m_boundary) j["m_boundary"] = matrix_to_json(*ev.m_boundary);
  if (mass) j["mass"] = matrix_to_json(*mass);
  return j;
}

}  // namespace weylspec
