// weylspec command-line front end.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 input or numerical error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weylspec/report.hpp"
#include "weylspec/verify.hpp"

namespace {

using namespace weylspec;

struct Options {
  std::string measure;
  std::string d_matrix;
  std::string d_prime;
  std::string grid;
  std::string window;
  std::string out;
  std::string format;
  std::string z;
  std::string demo;
  std::string m_schedule;
  double x = 0.0;
  double k_threshold = 1e6;
  std::uint64_t seed = 0;
  int trials = 10;
  int d_prime_samples = 5;
  int workers = 0;
  Tolerances tol;
};

class Command {
 public:
  explicit Command(const Options& opt) : opt_(opt) {}

  int run(const std::string& name, const CLI::App& sub) {
    sub_ = &sub;
    if (name == "eval") return eval();
    if (name == "boundary") return boundary();
    if (name == "tmatrix") return tmatrix();
    if (name == "masses") return masses();
    if (name == "eigs") return eigs();
    if (name == "test") return test();
    if (name == "scan") return scan();
    if (name == "verify") return verify();
    throw ValidationError("unknown command " + name);
  }

 private:
  bool given(const char* flag) const { return sub_->count(flag) > 0; }

  std::string format(const char* fallback) const {
    const std::string f = opt_.format.empty() ? fallback : opt_.format;
    if (f != "csv" && f != "json") throw ValidationError("--format must be csv or json");
    return f;
  }

  HerglotzMatrix herglotz() const {
    if (opt_.measure.empty()) throw ValidationError("--measure is required");
    return load_herglotz(opt_.measure, opt_.tol);
  }

  ExtensionParameter extension(const std::string& path, const char* flag, int dim) const {
    if (path.empty()) throw ValidationError(std::string(flag) + " is required");
    return load_extension(path, dim, opt_.tol);
  }

  std::vector<double> points() const {
    if (given("--grid")) {
      const Grid g = Grid::parse(opt_.grid);
      ScanConfig cfg;
      cfg.grid = g;
      cfg.validate();
      std::vector<double> xs;
      for (int i = 0; i < g.steps; ++i) xs.push_back(g.point(i));
      return xs;
    }
    if (given("--x")) return {opt_.x};
    throw ValidationError("one of --x or --grid is required");
  }

  void emit(const std::string& text) const {
    if (opt_.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(opt_.out);
    if (!f) throw ValidationError(opt_.out + ": cannot open for writing");
    f << text;
  }

  void emit(const json& j) const { emit(j.dump(2) + "\n"); }

  int eval() const {
    const auto m = herglotz();
    Complex z;
    {
      std::istringstream in(opt_.z);
      double re = 0.0;
      double im = 0.0;
      char comma = 0;
      if (!(in >> re >> comma >> im) || comma != ',') throw ValidationError("--z must be re,im");
      z = Complex(re, im);
    }
    Matrix value;
    std::string function = "M";
    if (!opt_.d_matrix.empty()) {
      value = weyl_of_extension(m, extension(opt_.d_matrix, "--d-matrix", m.dim()), z, opt_.tol);
      function = "M_D";
    } else {
      value = weylspec::eval(m, z, opt_.tol);
    }
    if (format("json") == "json") {
      emit(json{{"z", {z.real(), z.imag()}}, {"function", function}, {"value", matrix_to_json(value)}});
    } else {
      std::ostringstream out;
      out << "z_re,z_im";
      for (int i = 0; i < m.dim(); ++i) {
        for (int k = 0; k < m.dim(); ++k) out << ",v_" << i << k << "_re,v_" << i << k << "_im";
      }
      out << '\n' << format_real(z.real()) << ',' << format_real(z.imag());
      for (int i = 0; i < m.dim(); ++i) {
        for (int k = 0; k < m.dim(); ++k) out << ',' << format_real(value(i, k).real()) << ',' << format_real(value(i, k).imag());
      }
      out << '\n';
      emit(out.str());
    }
    return 0;
  }

  int boundary() const {
    const auto m = herglotz();
    std::vector<BoundaryReport> rows;
    for (double x : points()) rows.push_back(boundary_report(m, x, opt_.tol));
    if (format("csv") == "csv") {
      emit(boundary_csv(rows, m.dim()));
    } else {
      json j = json::array();
      for (const auto& r : rows) j.push_back(to_json(r));
      emit(j);
    }
    return 0;
  }

  int tmatrix() const {
    const auto m = herglotz();
    std::vector<std::pair<double, IntegralResult>> rows;
    for (double x : points()) rows.emplace_back(x, t_matrix(m, x, opt_.tol));
    if (format("csv") == "csv") {
      emit(tmatrix_csv(rows, m.dim()));
    } else {
      json j = json::array();
      for (const auto& [x, t] : rows) {
        json rec{{"x", x}, {"t_finite", t.finite()}, {"divergent_directions", t.divergent_directions}};
        if (t.value) rec["t"] = matrix_to_json(*t.value);
        j.push_back(std::move(rec));
      }
      emit(j);
    }
    return 0;
  }

  int masses() const {
    const auto m = herglotz();
    std::vector<std::pair<double, Matrix>> rows;
    if (!opt_.d_matrix.empty()) {
      if (!given("--x")) throw ValidationError("masses with --d-matrix needs --x");
      const auto d = extension(opt_.d_matrix, "--d-matrix", m.dim());
      rows.emplace_back(opt_.x, atom_mass(weyl_function(m, d, opt_.tol), opt_.x, opt_.tol));
    } else if (given("--x")) {
      rows.emplace_back(opt_.x, atom_mass(m, opt_.x, opt_.tol));
    } else {
      for (const auto& a : m.measure().atoms()) rows.emplace_back(a.x, atom_mass(m, a.x, opt_.tol));
    }
    if (format("json") == "json") {
      json j = json::array();
      for (const auto& [x, w] : rows) j.push_back({{"x", x}, {"mass", matrix_to_json(w)}});
      emit(json{{"function", opt_.d_matrix.empty() ? "M" : "M_D"}, {"masses", std::move(j)}});
    } else {
      SpectralReport as_table;
      for (const auto& [x, w] : rows) as_table.poles.push_back({x, w, numerical_rank(w, opt_.tol.rank), false, false});
      emit(spectral_csv(as_table, m.dim()));
    }
    return 0;
  }

  int eigs() const {
    const auto m = herglotz();
    const auto d = extension(opt_.d_matrix, "--d-matrix", m.dim());
    std::istringstream in(opt_.window);
    double a = 0.0;
    double b = 0.0;
    char colon = 0;
    if (!(in >> a >> colon >> b) || colon != ':') throw ValidationError("--window must be a:b");
    const auto report = classify(m, d, a, b, opt_.tol, opt_.measure);
    if (format("json") == "json") {
      emit(to_json(report));
    } else {
      emit(spectral_csv(report, m.dim()));
    }
    return 0;
  }

  int test() const {
    const auto m = herglotz();
    const auto d = extension(opt_.d_matrix, "--d-matrix", m.dim());
    if (!given("--x")) throw ValidationError("test needs --x");
    MaxMultEvidence ev;
    std::optional<Matrix> mass;
    if (opt_.d_prime.empty()) {
      ev = max_mult_test(m, d, opt_.x, opt_.tol);
      if (ev.verdict) mass = mass_at_max_mult(m, d, opt_.x, opt_.tol);
    } else {
      const auto dp = extension(opt_.d_prime, "--d-prime", m.dim());
      ev = max_mult_test_via(m, d, dp, opt_.x, opt_.tol);
      if (ev.verdict) mass = mass_at_max_mult_via(m, d, dp, opt_.x, opt_.tol);
    }
    if (format("json") == "json") {
      emit(to_json(ev, mass));
    } else {
      std::ostringstream out;
      out << "x,verdict,residual,t_finite\n"
          << format_real(ev.x) << ',' << (ev.verdict ? 1 : 0) << ',' << format_real(ev.residual) << ','
          << (ev.t_finite() ? 1 : 0) << '\n';
      emit(out.str());
    }
    return 0;
  }

  int scan() const {
    ScanConfig cfg;
    cfg.grid = Grid::parse(opt_.grid);
    cfg.k_threshold = opt_.k_threshold;
    cfg.tol = opt_.tol;
    if (!opt_.m_schedule.empty()) {
      cfg.m_schedule.clear();
      std::istringstream in(opt_.m_schedule);
      std::string item;
      while (std::getline(in, item, ',')) {
        try {
          cfg.m_schedule.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw ValidationError("--m-schedule entry \"" + item + "\" is not an integer");
        }
      }
    }
    std::optional<MatrixMeasure> omega;
    if (!opt_.demo.empty()) {
      int levels = 6;
      const auto colon = opt_.demo.find(':');
      if (opt_.demo.substr(0, colon) != "dyadic") throw ValidationError("--demo supports only dyadic[:levels]");
      if (colon != std::string::npos) levels = std::stoi(opt_.demo.substr(colon + 1));
      omega = dyadic_demo_measure(levels);
    } else {
      omega = herglotz().measure();
    }
    const auto rows = scan_forbidden(*omega, cfg, opt_.workers);
    if (format("csv") == "csv") {
      emit(scan_csv(rows, cfg, omega->dim()));
    } else {
      emit(scan_json(rows, cfg));
    }
    return 0;
  }

  int verify() const {
    VerifyOptions vo;
    vo.trials = opt_.trials;
    vo.seed = opt_.seed;
    vo.d_prime_samples = opt_.d_prime_samples;
    vo.tol = opt_.tol;
    if (!opt_.measure.empty()) vo.instance = herglotz();
    const auto outcome = run_verify(vo);
    emit(outcome.report);
    if (!outcome.ok()) {
      std::cerr << "verify: " << outcome.mismatches << " mismatch(es)\n";
      return 1;
    }
    return 0;
  }

  const Options& opt_;
  const CLI::App* sub_ = nullptr;
};

void add_common(CLI::App& sub, Options& opt) {
  sub.add_option("--out", opt.out, "Write output to FILE instead of stdout");
  sub.add_option("--format", opt.format, "csv or json");
  sub.add_option("--tol-rank", opt.tol.rank, "Relative rank tolerance");
  sub.add_option("--tol-x", opt.tol.x, "Point coincidence tolerance");
  sub.add_option("--tol-bv", opt.tol.bv, "Epsilon-path convergence tolerance");
  sub.add_option("--tol-match", opt.tol.match, "M(x+i0) = D matching tolerance");
  sub.add_option("--tol-eps0", opt.tol.eps0, "First epsilon of the limit schedule");
  sub.add_option("--tol-steps", opt.tol.eps_steps, "Number of epsilon halvings");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of matrix Herglotz functions and self-adjoint extensions"};
  app.require_subcommand(1);
  Options opt;

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"eval", "Evaluate M(z) (or M_D(z) with --d-matrix) at complex z"},
      {"boundary", "Boundary values M(x+i0) and T(x)"},
      {"tmatrix", "T(x) = int dOmega(y)/(x-y)^2"},
      {"masses", "Point masses -i lim eps F(x+i eps)"},
      {"eigs", "Oracle classification of the eigenvalues of A_D in a window"},
      {"test", "Maximum-multiplicity criterion at x for D (or via D')"},
      {"scan", "Forbidden-energy scan over a grid"},
      {"verify", "Oracle versus criterion campaign"},
  };
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(*sub, opt);
    const std::string name = s.name;
    sub->add_option("--measure", opt.measure, "Measure JSON file");
    if (name == "eval") {
      sub->add_option("--z", opt.z, "Complex point re,im")->required();
      sub->add_option("--d-matrix", opt.d_matrix, "Extension parameter D (JSON)");
    }
    if (name == "boundary" || name == "tmatrix") {
      sub->add_option("--x", opt.x, "Real point");
      sub->add_option("--grid", opt.grid, "Grid a:b:steps");
    }
    if (name == "masses") {
      sub->add_option("--x", opt.x, "Real point (default: every atom)");
      sub->add_option("--d-matrix", opt.d_matrix, "Use M_D instead of M");
    }
    if (name == "eigs") {
      sub->add_option("--d-matrix", opt.d_matrix, "Extension parameter D (JSON)")->required();
      sub->add_option("--window", opt.window, "Window a:b")->required();
    }
    if (name == "test") {
      sub->add_option("--d-matrix", opt.d_matrix, "Extension parameter D (JSON)")->required();
      sub->add_option("--d-prime", opt.d_prime, "Reference extension D' (JSON)");
      sub->add_option("--x", opt.x, "Real point")->required();
    }
    if (name == "scan") {
      sub->add_option("--grid", opt.grid, "Grid a:b:steps")->required();
      sub->add_option("--demo", opt.demo, "Built-in measure: dyadic[:levels]");
      sub->add_option("--m-schedule", opt.m_schedule, "Comma-separated regularization levels");
      sub->add_option("--k-threshold", opt.k_threshold, "Threshold k for regularized integrals");
      sub->add_option("--workers", opt.workers, "Worker threads (0 = hardware)");
    }
    if (name == "verify") {
      sub->add_option("--trials", opt.trials, "Number of trials");
      sub->add_option("--seed", opt.seed, "PRNG seed");
      sub->add_option("--d-prime-samples", opt.d_prime_samples, "D' samples per max-multiplicity point");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    return Command(opt).run(chosen->get_name(), *chosen);
  } catch (const std::exception& e) {
    std::cerr << "weylspec " << chosen->get_name() << ": " << e.what() << '\n';
    return 2;
  }
}
