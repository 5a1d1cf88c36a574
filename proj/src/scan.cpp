#include "weylspec/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace weylspec {

namespace {

template <class Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, std::max(count, 1));
  std::atomic<int> next{0};
  auto run = [&] {
    for (int i = next++; i < count; i = next++) fn(i);
  };
  if (workers == 1) {
    run();
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
}

}  // namespace

Grid Grid::parse(const std::string& text) {
  Grid g;
  std::istringstream in(text);
  char c1 = 0;
  char c2 = 0;
  if (!(in >> g.a >> c1 >> g.b >> c2 >> g.steps) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw ValidationError("grid must be given as a:b:steps, got \"" + text + "\"");
  }
  return g;
}

double Grid::point(int i) const {
  if (i == steps - 1) return b;
  return a + (b - a) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<int> ScanConfig::default_m_schedule() {
  std::vector<int> out;
  for (int m = 1; m <= 1024; m *= 2) out.push_back(m);
  return out;
}

void ScanConfig::validate() const {
  if (!std::isfinite(grid.a) || !std::isfinite(grid.b) || !(grid.a < grid.b)) {
    throw ValidationError("scan grid requires finite a < b");
  }
  if (grid.steps < 2) throw ValidationError("scan grid requires at least 2 steps");
  if (m_schedule.empty()) throw ValidationError("m schedule is empty");
  for (std::size_t i = 0; i < m_schedule.size(); ++i) {
    if (m_schedule[i] < 1) throw ValidationError("m schedule entries must be positive");
    if (i > 0 && m_schedule[i] <= m_schedule[i - 1]) {
      throw ValidationError("m schedule must be strictly increasing");
    }
  }
  if (!(k_threshold > 0.0)) throw ValidationError("k threshold must be positive");
}

std::vector<ScanRecord> scan_forbidden(const MatrixMeasure& omega, const ScanConfig& config, int workers) {
  config.validate();
  std::vector<ScanRecord> records(static_cast<std::size_t>(config.grid.steps));
  parallel_for(config.grid.steps, workers, [&](int i) {
    ScanRecord r;
    r.x = config.grid.point(i);
    r.in_support = omega.in_support(r.x, config.tol);
    auto t = integrate(kernel::PoissonSquare{r.x}, omega, config.tol);
    r.t_finite = t.finite();
    r.t = std::move(t.value);
    r.divergent_directions = std::move(t.divergent_directions);
    for (int m : config.m_schedule) {
      const Matrix reg = *integrate(kernel::Regularized{r.x, static_cast<double>(m)}, omega, config.tol).value;
      RealVector diag = reg.diagonal().real();
      r.exceeds_k = r.exceeds_k || diag.maxCoeff() > config.k_threshold;
      r.regularized.push_back(std::move(diag));
    }
    records[static_cast<std::size_t>(i)] = std::move(r);
  });
  return records;
}

MatrixMeasure dyadic_demo_measure(int levels, int dim) {
  if (levels < 0) throw ValidationError("dyadic levels must be nonnegative");
  std::vector<Atom> atoms;
  const Matrix id = Matrix::Identity(dim, dim);
  atoms.push_back({0.0, id});
  atoms.push_back({1.0, id});
  for (int m = 1; m <= levels; ++m) {
    const double denom = std::ldexp(1.0, m);
    const double weight = std::pow(16.0, -m);
    for (int j = 1; j < (1 << m); j += 2) atoms.push_back({j / denom, weight * id});
  }
  return MatrixMeasure(dim, std::move(atoms), {});
}

}  // namespace weylspec
