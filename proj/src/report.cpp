#include "weylspec/report.hpp"

#include <cstdio>
#include <sstream>

namespace weylspec {

namespace {

void matrix_header(std::ostream& out, const std::string& name, int dim) {
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      out << ',' << name << '_' << i << k << "_re," << name << '_' << i << k << "_im";
    }
  }
}

void matrix_cells(std::ostream& out, const std::optional<Matrix>& m, int dim) {
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      if (m) {
        out << ',' << format_real((*m)(i, k).real()) << ',' << format_real((*m)(i, k).imag());
      } else {
        out << ",,";
      }
    }
  }
}

std::string directions(const std::vector<int>& dirs) {
  std::string out;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(dirs[i]);
  }
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string boundary_csv(const std::vector<BoundaryReport>& rows, int dim) {
  std::ostringstream out;
  out << "x,converged";
  matrix_header(out, "m", dim);
  out << ",t_finite";
  matrix_header(out, "t", dim);
  out << ",divergent_directions\n";
  for (const auto& r : rows) {
    out << format_real(r.x) << ',' << (r.m_boundary ? 1 : 0);
    matrix_cells(out, r.m_boundary, dim);
    out << ',' << (r.t.finite() ? 1 : 0);
    matrix_cells(out, r.t.value, dim);
    out << ',' << directions(r.t.divergent_directions) << '\n';
  }
  return out.str();
}

json to_json(const BoundaryReport& row) {
  json j;
  j["x"] = row.x;
  j["converged"] = row.m_boundary.has_value();
  if (row.m_boundary) j["m_boundary"] = matrix_to_json(*row.m_boundary);
  j["hermitian"] = row.hermitian;
  j["t_finite"] = row.t.finite();
  if (row.t.value) j["t"] = matrix_to_json(*row.t.value);
  j["divergent_directions"] = row.t.divergent_directions;
  j["eps_steps"] = row.eps_trace.size();
  return j;
}

std::string tmatrix_csv(const std::vector<std::pair<double, IntegralResult>>& rows, int dim) {
  std::ostringstream out;
  out << "x,t_finite";
  matrix_header(out, "t", dim);
  out << ",divergent_directions\n";
  for (const auto& [x, t] : rows) {
    out << format_real(x) << ',' << (t.finite() ? 1 : 0);
    matrix_cells(out, t.value, dim);
    out << ',' << directions(t.divergent_directions) << '\n';
  }
  return out.str();
}

std::string scan_csv(const std::vector<ScanRecord>& rows, const ScanConfig& config, int dim) {
  std::ostringstream out;
  out << "x,in_support,t_finite,divergent_directions";
  matrix_header(out, "t", dim);
  for (int m : config.m_schedule) {
    for (int i = 0; i < dim; ++i) out << ",reg_m" << m << "_d" << i + 1;
  }
  out << ",exceeds_k\n";
  for (const auto& r : rows) {
    out << format_real(r.x) << ',' << (r.in_support ? 1 : 0) << ',' << (r.t_finite ? 1 : 0) << ','
        << directions(r.divergent_directions);
    matrix_cells(out, r.t, dim);
    for (const auto& diag : r.regularized) {
      for (int i = 0; i < diag.size(); ++i) out << ',' << format_real(diag(i));
    }
    out << ',' << (r.exceeds_k ? 1 : 0) << '\n';
  }
  return out.str();
}

json scan_json(const std::vector<ScanRecord>& rows, const ScanConfig& config) {
  json j;
  j["grid"] = {{"a", config.grid.a}, {"b", config.grid.b}, {"steps", config.grid.steps}};
  j["m_schedule"] = config.m_schedule;
  j["k_threshold"] = config.k_threshold;
  j["records"] = json::array();
  for (const auto& r : rows) {
    json rec;
    rec["x"] = r.x;
    rec["in_support"] = r.in_support;
    rec["t_finite"] = r.t_finite;
    if (r.t) rec["t"] = matrix_to_json(*r.t);
    rec["divergent_directions"] = r.divergent_directions;
    json reg = json::array();
    for (const auto& diag : r.regularized) reg.push_back(std::vector<double>(diag.data(), diag.data() + diag.size()));
    rec["regularized_diagonal"] = std::move(reg);
    rec["exceeds_k"] = r.exceeds_k;
    j["records"].push_back(std::move(rec));
  }
  return j;
}

std::string spectral_csv(const SpectralReport& report, int dim) {
  std::ostringstream out;
  out << "x,rank,is_max_mult,residue_fallback";
  matrix_header(out, "mass", dim);
  out << '\n';
  for (const auto& p : report.poles) {
    out << format_real(p.x) << ',' << p.rank << ',' << (p.is_max_mult ? 1 : 0) << ',' << (p.residue_fallback ? 1 : 0);
    matrix_cells(out, p.mass, dim);
    out << '\n';
  }
  return out.str();
}

}  // namespace weylspec
