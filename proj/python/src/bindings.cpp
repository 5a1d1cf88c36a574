#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylspec/weylspec.hpp"

namespace py = pybind11;
using namespace weylspec;

namespace {

std::vector<Atom> atoms_from(const std::vector<std::pair<double, Matrix>>& items) {
  std::vector<Atom> out;
  for (const auto& [x, w] : items) out.push_back({x, w});
  return out;
}

std::vector<ACPiece> pieces_from(const std::vector<std::tuple<double, double, Matrix>>& items) {
  std::vector<ACPiece> out;
  for (const auto& [a, b, rho] : items) out.push_back({a, b, rho});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral analysis of matrix Herglotz functions and self-adjoint extensions";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<NotConvergedError>(m, "NotConvergedError", error.ptr());
  py::register_exception<ConditioningError>(m, "ConditioningError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<InconsistencyError>(m, "InconsistencyError", error.ptr());

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("rank", &Tolerances::rank)
      .def_readwrite("x", &Tolerances::x)
      .def_readwrite("eps0", &Tolerances::eps0)
      .def_readwrite("eps_steps", &Tolerances::eps_steps)
      .def_readwrite("bv", &Tolerances::bv)
      .def_readwrite("match", &Tolerances::match)
      .def_readwrite("hermitian", &Tolerances::hermitian)
      .def_readwrite("singular", &Tolerances::singular);

  // measure
  py::class_<Interval>(m, "Interval")
      .def(py::init([](double lo, double hi, bool lo_closed, bool hi_closed) {
             return Interval{lo, hi, lo_closed, hi_closed};
           }),
           py::arg("lo"), py::arg("hi"), py::arg("lo_closed") = true, py::arg("hi_closed") = true)
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi)
      .def_readonly("lo_closed", &Interval::lo_closed)
      .def_readonly("hi_closed", &Interval::hi_closed)
      .def("contains", &Interval::contains);

  py::class_<IntervalSet>(m, "IntervalSet")
      .def(py::init<>())
      .def(py::init<std::vector<Interval>>())
      .def_static("closed", &IntervalSet::closed)
      .def("contains", &IntervalSet::contains);

  py::class_<MatrixMeasure>(m, "MatrixMeasure")
      .def(py::init([](int dim, const std::vector<std::pair<double, Matrix>>& atoms,
                       const std::vector<std::tuple<double, double, Matrix>>& pieces, const Tolerances& tol) {
             return MatrixMeasure(dim, atoms_from(atoms), pieces_from(pieces), tol);
           }),
           py::arg("dim"), py::arg("atoms") = std::vector<std::pair<double, Matrix>>{},
           py::arg("pieces") = std::vector<std::tuple<double, double, Matrix>>{}, py::arg("tol") = Tolerances{})
      .def_property_readonly("dim", &MatrixMeasure::dim)
      .def_property_readonly("atoms",
                             [](const MatrixMeasure& o) {
                               std::vector<std::pair<double, Matrix>> out;
                               for (const auto& a : o.atoms()) out.emplace_back(a.x, a.weight);
                               return out;
                             })
      .def_property_readonly("pieces",
                             [](const MatrixMeasure& o) {
                               std::vector<std::tuple<double, double, Matrix>> out;
                               for (const auto& p : o.pieces()) out.emplace_back(p.a, p.b, p.density);
                               return out;
                             })
      .def("purely_atomic", &MatrixMeasure::purely_atomic)
      .def("in_support", &MatrixMeasure::in_support, py::arg("x"), py::arg("tol") = Tolerances{})
      .def("support_hull", &MatrixMeasure::support_hull);

  py::class_<kernel::Indicator>(m, "Indicator").def(py::init<IntervalSet>());
  py::class_<kernel::PoissonSquare>(m, "PoissonSquare").def(py::init<double>());
  py::class_<kernel::Regularized>(m, "Regularized").def(py::init<double, double>());
  py::class_<kernel::Cauchy>(m, "Cauchy").def(py::init<Complex>());
  py::class_<kernel::CauchyReal>(m, "CauchyReal").def(py::init<double>());
  py::class_<kernel::InvOnePlusSquare>(m, "InvOnePlusSquare").def(py::init<>());

  py::class_<IntegralResult>(m, "IntegralResult")
      .def_readonly("value", &IntegralResult::value)
      .def_readonly("divergent_directions", &IntegralResult::divergent_directions)
      .def_property_readonly("finite", &IntegralResult::finite);

  py::class_<DensityMatrixValue>(m, "DensityMatrixValue")
      .def_readonly("t", &DensityMatrixValue::t)
      .def_readonly("psi", &DensityMatrixValue::psi)
      .def_readonly("multiplicity", &DensityMatrixValue::multiplicity);

  m.def("measure_of_set", &measure_of_set);
  m.def("trace_measure", &trace_measure);
  m.def("integrate", &integrate, py::arg("kernel"), py::arg("omega"), py::arg("tol") = Tolerances{});
  m.def("density_matrix", &density_matrix, py::arg("omega"), py::arg("t"), py::arg("tol") = Tolerances{});

  // herglotz
  py::class_<HerglotzMatrix>(m, "HerglotzMatrix")
      .def(py::init<MatrixMeasure, std::optional<Matrix>, const Tolerances&>(), py::arg("omega"),
           py::arg("C") = std::nullopt, py::arg("tol") = Tolerances{})
      .def_property_readonly("dim", &HerglotzMatrix::dim)
      .def_property_readonly("offset", &HerglotzMatrix::offset)
      .def_property_readonly("measure", &HerglotzMatrix::measure);

  py::class_<BoundaryValue>(m, "BoundaryValue")
      .def_readonly("x", &BoundaryValue::x)
      .def_readonly("value", &BoundaryValue::value)
      .def_readonly("closed_form", &BoundaryValue::closed_form)
      .def_property_readonly("eps_steps", [](const BoundaryValue& b) { return b.trace.size(); });

  m.def("eval", &weylspec::eval, py::arg("m"), py::arg("z"), py::arg("tol") = Tolerances{});
  m.def("boundary_value", &boundary_value, py::arg("m"), py::arg("x"), py::arg("tol") = Tolerances{});
  m.def("t_matrix", &t_matrix, py::arg("m"), py::arg("x"), py::arg("tol") = Tolerances{});
  m.def("atom_mass", py::overload_cast<const HerglotzMatrix&, double, const Tolerances&>(&atom_mass), py::arg("m"),
        py::arg("x"), py::arg("tol") = Tolerances{});
  m.def(
      "extension_atom_mass",
      [](const HerglotzMatrix& h, const ExtensionParameter& d, double x, const Tolerances& tol) {
        return atom_mass(weyl_function(h, d, tol), x, tol);
      },
      py::arg("m"), py::arg("d"), py::arg("x"), py::arg("tol") = Tolerances{},
      "Point mass of Omega_D at x from -i eps M_D(x + i eps).");

  // extensions
  py::class_<ExtensionParameter>(m, "ExtensionParameter")
      .def(py::init<Matrix, const Tolerances&>(), py::arg("d"), py::arg("tol") = Tolerances{})
      .def_property_readonly("matrix", &ExtensionParameter::matrix)
      .def_property_readonly("dim", &ExtensionParameter::dim);

  py::class_<MaxMultEvidence>(m, "MaxMultEvidence")
      .def_readonly("x", &MaxMultEvidence::x)
      .def_readonly("t_value", &MaxMultEvidence::t_value)
      .def_readonly("divergent_directions", &MaxMultEvidence::divergent_directions)
      .def_readonly("m_boundary", &MaxMultEvidence::m_boundary)
      .def_readonly("residual", &MaxMultEvidence::residual)
      .def_readonly("verdict", &MaxMultEvidence::verdict)
      .def_property_readonly("t_finite", &MaxMultEvidence::t_finite)
      .def_property_readonly("boundary_converged", &MaxMultEvidence::boundary_converged);

  m.def("weyl_of_extension", &weyl_of_extension, py::arg("m"), py::arg("d"), py::arg("z"),
        py::arg("tol") = Tolerances{});
  m.def("resolvent_identity_residual", &resolvent_identity_residual, py::arg("m"), py::arg("d"), py::arg("d_prime"),
        py::arg("z"), py::arg("tol") = Tolerances{});
  m.def("max_mult_test", &max_mult_test, py::arg("m"), py::arg("d"), py::arg("x"), py::arg("tol") = Tolerances{});
  m.def("max_mult_test_via", &max_mult_test_via, py::arg("m"), py::arg("d"), py::arg("d_prime"), py::arg("x"),
        py::arg("tol") = Tolerances{});
  m.def("extension_for_point", &extension_for_point, py::arg("m"), py::arg("x"), py::arg("tol") = Tolerances{});
  m.def("mass_at_max_mult", &mass_at_max_mult, py::arg("m"), py::arg("d"), py::arg("x"),
        py::arg("tol") = Tolerances{});
  m.def("mass_at_max_mult_via", &mass_at_max_mult_via, py::arg("m"), py::arg("d"), py::arg("d_prime"), py::arg("x"),
        py::arg("tol") = Tolerances{});

  // oracle
  py::class_<PoleCandidate>(m, "PoleCandidate")
      .def_readonly("x", &PoleCandidate::x)
      .def_readonly("kernel_dim", &PoleCandidate::kernel_dim);
  py::class_<PoleSearch>(m, "PoleSearch")
      .def_readonly("poles", &PoleSearch::poles)
      .def_readonly("unresolved", &PoleSearch::unresolved);
  py::class_<SpectralPole>(m, "SpectralPole")
      .def_readonly("x", &SpectralPole::x)
      .def_readonly("mass", &SpectralPole::mass)
      .def_readonly("rank", &SpectralPole::rank)
      .def_readonly("is_max_mult", &SpectralPole::is_max_mult)
      .def_readonly("residue_fallback", &SpectralPole::residue_fallback);
  py::class_<SpectralReport>(m, "SpectralReport")
      .def_readonly("poles", &SpectralReport::poles)
      .def_readonly("a", &SpectralReport::a)
      .def_readonly("b", &SpectralReport::b)
      .def_readonly("measure_ref", &SpectralReport::measure_ref)
      .def_readonly("unresolved", &SpectralReport::unresolved)
      .def("max_mult_points", &SpectralReport::max_mult_points)
      .def("to_json", [](const SpectralReport& r) { return to_json(r).dump(); });

  m.def("real_poles", &real_poles, py::arg("m"), py::arg("d"), py::arg("a"), py::arg("b"),
        py::arg("tol") = Tolerances{});
  m.def("residue_mass", &residue_mass, py::arg("m"), py::arg("d"), py::arg("p"), py::arg("kernel_dim") = std::nullopt,
        py::arg("tol") = Tolerances{});
  m.def("classify", &classify, py::arg("m"), py::arg("d"), py::arg("a"), py::arg("b"), py::arg("tol") = Tolerances{},
        py::arg("measure_ref") = std::string{});

  // scan
  py::class_<ScanRecord>(m, "ScanRecord")
      .def_readonly("x", &ScanRecord::x)
      .def_readonly("in_support", &ScanRecord::in_support)
      .def_readonly("t_finite", &ScanRecord::t_finite)
      .def_readonly("t", &ScanRecord::t)
      .def_readonly("divergent_directions", &ScanRecord::divergent_directions)
      .def_readonly("regularized", &ScanRecord::regularized)
      .def_readonly("exceeds_k", &ScanRecord::exceeds_k);

  m.def(
      "scan_forbidden",
      [](const MatrixMeasure& omega, double a, double b, int steps, std::optional<std::vector<int>> m_schedule,
         double k_threshold, const Tolerances& tol, int workers) {
        ScanConfig cfg;
        cfg.grid = {a, b, steps};
        if (m_schedule) cfg.m_schedule = *m_schedule;
        cfg.k_threshold = k_threshold;
        cfg.tol = tol;
        py::gil_scoped_release release;
        return scan_forbidden(omega, cfg, workers);
      },
      py::arg("omega"), py::arg("a"), py::arg("b"), py::arg("steps"), py::arg("m_schedule") = std::nullopt,
      py::arg("k_threshold") = 1e6, py::arg("tol") = Tolerances{}, py::arg("workers") = 0);
  m.def("dyadic_demo_measure", &dyadic_demo_measure, py::arg("levels"), py::arg("dim") = 1);

  // io and verification
  m.def("load_herglotz", &load_herglotz, py::arg("path"), py::arg("tol") = Tolerances{});
  m.def("load_extension", &load_extension, py::arg("path"), py::arg("dim"), py::arg("tol") = Tolerances{});
  m.def(
      "herglotz_from_json", [](const std::string& text, const Tolerances& tol) {
        return herglotz_from_json(json::parse(text), tol);
      },
      py::arg("text"), py::arg("tol") = Tolerances{});
  m.def("herglotz_to_json", [](const HerglotzMatrix& h) { return herglotz_to_json(h).dump(); });
  m.def(
      "run_verify",
      [](int trials, std::uint64_t seed, std::optional<HerglotzMatrix> instance, int d_prime_samples,
         const Tolerances& tol) {
        VerifyOptions opt;
        opt.trials = trials;
        opt.seed = seed;
        opt.instance = std::move(instance);
        opt.d_prime_samples = d_prime_samples;
        opt.tol = tol;
        return run_verify(opt).report.dump(2);
      },
      py::arg("trials") = 10, py::arg("seed") = 0, py::arg("instance") = std::nullopt, py::arg("d_prime_samples") = 5,
      py::arg("tol") = Tolerances{});
}
