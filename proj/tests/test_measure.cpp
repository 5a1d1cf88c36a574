#include <doctest.h>

#include "support.hpp"

using namespace testing;

TEST_CASE("measure_of_set on atoms and pieces") {
  const MatrixMeasure atom(1, {{0.0, scalar(1.0)}}, {});
  CHECK(measure_of_set(atom, IntervalSet{}).norm() == 0.0);
  CHECK(measure_of_set(atom, IntervalSet::closed(-1, 1))(0, 0).real() == doctest::Approx(1.0));

  const MatrixMeasure piece(2, {}, {{0.0, 2.0, diag({1, 2})}});
  const Matrix slice = measure_of_set(piece, IntervalSet::closed(0, 1));
  CHECK(rel_diff(slice, diag({1, 2})) < 1e-14);
  const Complex quad = simpson([](double) { return Complex(1.0); }, 0.0, 1.0);
  CHECK(rel_diff(slice, quad * diag({1, 2})) < 1e-12);
}

TEST_CASE("measure_of_set endpoint flags decide atom membership") {
  const MatrixMeasure atom(1, {{1.0, scalar(2.0)}}, {});
  CHECK(measure_of_set(atom, IntervalSet{{0.0, 1.0, true, false}}).norm() == 0.0);
  CHECK(measure_of_set(atom, IntervalSet{{0.0, 1.0, true, true}})(0, 0).real() == doctest::Approx(2.0));
  CHECK(measure_of_set(atom, IntervalSet{{1.0, 1.0, true, true}})(0, 0).real() == doctest::Approx(2.0));
}

TEST_CASE("measure_of_set rejects unbounded sets") {
  const MatrixMeasure atom(1, {{0.0, scalar(1.0)}}, {});
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(measure_of_set(atom, IntervalSet::closed(-inf, 0.0)), DomainError);
}

TEST_CASE("measure_of_set is additive over disjoint parts") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixMeasure omega(2, {{0.3, random_psd(2, 1, rng)}, {1.7, random_psd(2, 2, rng)}},
                              {{-1.0, 0.5, random_psd(2, 2, rng)}, {1.0, 2.5, random_psd(2, 1, rng)}});
    std::uniform_real_distribution<double> cut(-1.5, 3.0);
    double c = cut(rng);
    const Matrix whole = measure_of_set(omega, IntervalSet::closed(-2.0, 3.0));
    const Matrix left = measure_of_set(omega, IntervalSet{{-2.0, c, true, false}});
    const Matrix right = measure_of_set(omega, IntervalSet{{c, 3.0, true, true}});
    CHECK(rel_diff(left + right, whole) < 1e-12);
  }
}

TEST_CASE("trace_measure") {
  const MatrixMeasure two(2, {{-1.0, identity(2)}, {1.0, identity(2)}}, {});
  CHECK(trace_measure(two, IntervalSet::closed(-2, 2)) == doctest::Approx(4.0));
  CHECK(trace_measure(two, IntervalSet{}) == 0.0);
  const MatrixMeasure piece(2, {}, {{0.0, 2.0, diag({1, 2})}});
  CHECK(trace_measure(piece, IntervalSet::closed(0, 1)) == doctest::Approx(3.0));
  const Matrix w = measure_of_set(piece, IntervalSet::closed(0.2, 1.4));
  CHECK(trace_measure(piece, IntervalSet::closed(0.2, 1.4)) == doctest::Approx(w.trace().real()));
}

TEST_CASE("integrate closed-form kernels on atoms") {
  const MatrixMeasure two(2, {{-1.0, identity(2)}, {1.0, identity(2)}}, {});
  auto r = integrate(kernel::InvOnePlusSquare{}, two);
  REQUIRE(r.finite());
  CHECK(rel_diff(*r.value, identity(2)) < 1e-15);
  r = integrate(kernel::PoissonSquare{0.0}, two);
  REQUIRE(r.finite());
  CHECK(rel_diff(*r.value, 2.0 * identity(2)) < 1e-15);
}

TEST_CASE("integrate detects divergence per direction") {
  const MatrixMeasure lebesgue(1, {}, {{0.0, 1.0, scalar(1.0)}});
  auto r = integrate(kernel::PoissonSquare{0.5}, lebesgue);
  CHECK_FALSE(r.finite());
  CHECK(r.divergent_directions == std::vector<int>{1});

  // Endpoint of the closed support also diverges.
  CHECK_FALSE(integrate(kernel::PoissonSquare{1.0}, lebesgue).finite());

  const MatrixMeasure partial(2, {{0.0, diag({1, 0})}, {3.0, diag({0, 1})}}, {});
  r = integrate(kernel::PoissonSquare{0.0}, partial);
  CHECK_FALSE(r.finite());
  CHECK(r.divergent_directions == std::vector<int>{1});
  r = integrate(kernel::PoissonSquare{3.0}, partial);
  CHECK(r.divergent_directions == std::vector<int>{2});
  CHECK(integrate(kernel::PoissonSquare{1.0}, partial).finite());
}

TEST_CASE("integrate rejects real Cauchy points and bad regularization") {
  const MatrixMeasure atom(1, {{0.0, scalar(1.0)}}, {});
  CHECK_THROWS_AS(integrate(kernel::Cauchy{Complex(1.0, 0.0)}, atom), DomainError);
  CHECK_THROWS_AS(integrate(kernel::Regularized{0.0, 0.0}, atom), DomainError);
}

TEST_CASE("indicator kernel equals measure_of_set") {
  const MatrixMeasure omega(2, {{0.5, diag({1, 3})}}, {{-1.0, 0.75, diag({2, 1})}});
  const auto r = integrate(kernel::Indicator{IntervalSet::closed(0, 1)}, omega);
  REQUIRE(r.finite());
  CHECK(rel_diff(*r.value, measure_of_set(omega, IntervalSet::closed(0, 1))) < 1e-15);
}

TEST_CASE("piece antiderivatives agree with adaptive quadrature") {
  Rng rng(3);
  const MatrixMeasure omega(2, {{2.5, random_psd(2, 2, rng)}},
                            {{-1.0, 0.0, random_psd(2, 2, rng)}, {0.5, 1.5, random_psd(2, 1, rng)}});
  for (Complex z : {Complex(0.3, 0.7), Complex(-2.0, 0.05), Complex(1.0, -1.0), Complex(5.0, 3.0)}) {
    const auto r = integrate(kernel::Cauchy{z}, omega);
    const Matrix q = quadrature(omega, [z](double y) { return 1.0 / (y - z) - y / (1.0 + y * y); });
    CHECK(rel_diff(*r.value, q) < 1e-9);
  }
  for (double x : {-2.0, 0.25, 2.0, 4.0}) {
    const auto r = integrate(kernel::PoissonSquare{x}, omega);
    REQUIRE(r.finite());
    CHECK(rel_diff(*r.value, quadrature(omega, [x](double y) { return Complex(1.0 / ((x - y) * (x - y))); })) <
          1e-9);
    const auto c = integrate(kernel::CauchyReal{x}, omega);
    REQUIRE(c.finite());
    CHECK(rel_diff(*c.value, quadrature(omega, [x](double y) { return Complex(1.0 / (y - x) - y / (1 + y * y)); })) <
          1e-9);
  }
  for (double m : {1.0, 10.0, 100.0}) {
    const double x = 0.7;
    const auto r = integrate(kernel::Regularized{x, m}, omega);
    const Matrix q = quadrature(omega, [x, m](double y) { return Complex(1.0 / ((x - y) * (x - y) + 1.0 / (m * m))); });
    CHECK(rel_diff(*r.value, q) < 1e-8);
  }
  const auto inv = integrate(kernel::InvOnePlusSquare{}, omega);
  CHECK(rel_diff(*inv.value, quadrature(omega, [](double y) { return Complex(1.0 / (1.0 + y * y)); })) < 1e-10);
}

TEST_CASE("real kernels give Hermitian results, positive kernels PSD") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const MatrixMeasure omega(n, {{-0.5, random_psd(n, 1, rng)}, {2.0, random_psd(n, n, rng)}},
                              {{0.0, 1.0, random_psd(n, n, rng)}});
    for (const Kernel& k : std::vector<Kernel>{kernel::InvOnePlusSquare{}, kernel::PoissonSquare{-2.0},
                                               kernel::Regularized{0.5, 7.0},
                                               kernel::Indicator{IntervalSet::closed(-1, 0.5)}}) {
      const auto r = integrate(k, omega);
      REQUIRE(r.finite());
      CHECK(is_hermitian(*r.value, 1e-12));
      CHECK(min_eigenvalue(*r.value) >= -1e-12);
    }
  }
}

TEST_CASE("regularized integrals increase in m towards T") {
  Rng rng(8);
  const MatrixMeasure omega(2, {{0.0, random_psd(2, 2, rng)}}, {{1.0, 2.0, random_psd(2, 2, rng)}});
  for (double x : {-0.4, 0.0, 0.5, 1.5, 3.0}) {
    RealVector prev = RealVector::Zero(2);
    for (double m = 1; m <= 4096; m *= 2) {
      const RealVector d = integrate(kernel::Regularized{x, m}, omega).value->diagonal().real();
      CHECK((d.array() >= prev.array() - 1e-12).all());
      prev = d;
    }
    const auto t = integrate(kernel::PoissonSquare{x}, omega);
    if (t.finite()) {
      const RealVector reg = integrate(kernel::Regularized{x, 1e7}, omega).value->diagonal().real();
      CHECK((reg - t.value->diagonal().real()).norm() < 1e-6 * std::max(1.0, reg.norm()));
    }
  }
}

TEST_CASE("density_matrix") {
  const MatrixMeasure full(2, {{1.0, identity(2)}}, {});
  auto d = density_matrix(full, 1.0);
  CHECK(rel_diff(d.psi, identity(2) / 2.0) < 1e-15);
  CHECK(d.multiplicity == 2);

  const MatrixMeasure partial(2, {{0.0, diag({3, 0})}}, {});
  d = density_matrix(partial, 0.0);
  CHECK(rel_diff(d.psi, diag({1, 0})) < 1e-15);
  CHECK(d.multiplicity == 1);

  const MatrixMeasure piece(2, {}, {{0.0, 1.0, diag({2, 2})}});
  d = density_matrix(piece, 0.5);
  CHECK(rel_diff(d.psi, identity(2) / 2.0) < 1e-15);
  CHECK(d.multiplicity == 2);
  CHECK_THROWS_AS(density_matrix(piece, 1.5), DomainError);
  CHECK_THROWS_AS(density_matrix(full, 0.0), DomainError);
}

TEST_CASE("density_matrix has unit trace and bounded multiplicity") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const int r = 1 + trial % n;
    const MatrixMeasure omega(n, {{0.0, random_psd(n, r, rng)}}, {{1.0, 2.0, random_psd(n, n, rng)}});
    for (double t : {0.0, 1.5}) {
      const auto d = density_matrix(omega, t);
      CHECK(std::abs(d.psi.trace().real() - 1.0) < 1e-12);
      CHECK(d.multiplicity >= 0);
      CHECK(d.multiplicity <= n);
    }
    CHECK(density_matrix(omega, 0.0).multiplicity == r);
  }
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS(MatrixMeasure(1, {{0.0, scalar(-1.0)}}, {}), ValidationError);
  try {
    MatrixMeasure(1, {{0.0, scalar(1.0)}, {1.0, scalar(-1.0)}}, {});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("atom 1") != std::string::npos);
  }
  CHECK_THROWS_AS(MatrixMeasure(2, {{0.0, mat({{1, Complex(0, 1)}, {Complex(0, 1), 1}})}}, {}), ValidationError);
  CHECK_THROWS_AS(MatrixMeasure(1, {}, {{0.0, 1.0, scalar(1.0)}, {0.5, 2.0, scalar(1.0)}}), ValidationError);
  CHECK_THROWS_AS(MatrixMeasure(1, {}, {{1.0, 0.0, scalar(1.0)}}), ValidationError);
  CHECK_THROWS_AS(MatrixMeasure(2, {{0.0, scalar(1.0)}}, {}), ValidationError);
  CHECK_THROWS_AS(MatrixMeasure(1, {{0.0, scalar(1.0)}, {0.0, scalar(1.0)}}, {}), ValidationError);
  CHECK_THROWS_AS(MatrixMeasure(1, {}, {}), ValidationError);
}
