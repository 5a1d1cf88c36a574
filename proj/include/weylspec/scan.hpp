#pragma once

#include <string>
#include <vector>

#include "weylspec/measure.hpp"

namespace weylspec {

struct Grid {
  double a = 0.0;
  double b = 1.0;
  int steps = 2;

  // "a:b:steps"
  static Grid parse(const std::string& text);
  double point(int i) const;
};

struct ScanConfig {
  Grid grid;
  // Regularization levels m of 1/((x - y)^2 + 1/m^2); strictly increasing.
  std::vector<int> m_schedule = default_m_schedule();
  double k_threshold = 1e6;
  Tolerances tol;

  static std::vector<int> default_m_schedule();  // 1, 2, 4, ..., 1024
  void validate() const;
};

struct ScanRecord {
  double x = 0.0;
  bool in_support = false;
  bool t_finite = false;
  std::optional<Matrix> t;
  std::vector<int> divergent_directions;
  // regularized[k](i): i-th diagonal entry of the integral at m_schedule[k].
  std::vector<RealVector> regularized;
  // Some diagonal regularized value exceeds k_threshold.
  bool exceeds_k = false;
};

// One record per grid point, in grid order. workers = 0 picks the hardware
// concurrency.
std::vector<ScanRecord> scan_forbidden(const MatrixMeasure& omega, const ScanConfig& config, int workers = 0);

// Atoms at j / 2^m for m = 0..levels with weight 16^-m I_n.
MatrixMeasure dyadic_demo_measure(int levels, int dim = 1);

}  // namespace weylspec
