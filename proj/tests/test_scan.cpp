#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

ScanConfig config(double a, double b, int steps) {
  ScanConfig c;
  c.grid = {a, b, steps};
  return c;
}

const ScanRecord& at(const std::vector<ScanRecord>& rows, double x) {
  for (const auto& r : rows) {
    if (std::abs(r.x - x) < 1e-12) return r;
  }
  throw std::runtime_error("grid point missing");
}

}  // namespace

TEST_CASE("grid parsing and points") {
  const Grid g = Grid::parse("-0.5:2.5:7");
  CHECK(g.a == -0.5);
  CHECK(g.b == 2.5);
  CHECK(g.steps == 7);
  CHECK(g.point(0) == -0.5);
  CHECK(g.point(6) == 2.5);
  CHECK(g.point(4) == doctest::Approx(1.5));
  CHECK_THROWS_AS(Grid::parse("0:1"), ValidationError);
  CHECK_THROWS_AS(Grid::parse("a:1:3"), ValidationError);
}

TEST_CASE("scan config validation") {
  CHECK_THROWS_AS(config(1, 0, 5).validate(), ValidationError);
  CHECK_THROWS_AS(config(0, 1, 1).validate(), ValidationError);
  auto c = config(0, 1, 5);
  c.m_schedule = {4, 2};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.m_schedule = {1, 2};
  c.k_threshold = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("scan over a mixed measure") {
  const auto omega = mixed_measure();
  const auto rows = scan_forbidden(omega, config(-0.5, 2.5, 7), 2);
  REQUIRE(rows.size() == 7);
  CHECK_FALSE(at(rows, 0.5).t_finite);
  CHECK(at(rows, 0.5).in_support);
  CHECK_FALSE(at(rows, 2.0).t_finite);
  CHECK(at(rows, 2.0).in_support);
  const auto& r = at(rows, 1.5);
  CHECK(r.t_finite);
  CHECK_FALSE(r.in_support);
  CHECK(std::abs((*r.t)(0, 0).real() - 16.0 / 3.0) < 1e-12);
  // The T value at 1.5 by quadrature, independent of the antiderivative.
  const Complex quad = simpson([](double y) { return Complex(1.0 / ((1.5 - y) * (1.5 - y))); }, 0.0, 1.0) + 4.0;
  CHECK(std::abs(quad.real() - 16.0 / 3.0) < 1e-10);
}

TEST_CASE("scan invariants on a dense grid") {
  const auto omega = mixed_measure();
  const auto rows = scan_forbidden(omega, config(-0.5, 2.5, 301));
  for (const auto& r : rows) {
    const bool inside_piece = r.x > 0.0 && r.x < 1.0;
    if (inside_piece || std::abs(r.x - 2.0) < 1e-12) CHECK_FALSE(r.t_finite);
    CHECK(r.t_finite == !r.in_support);
    for (std::size_t k = 1; k < r.regularized.size(); ++k) {
      CHECK((r.regularized[k].array() >= r.regularized[k - 1].array() - 1e-12).all());
    }
  }
}

TEST_CASE("scan output is independent of the worker count") {
  const auto omega = dyadic_demo_measure(4);
  const auto one = scan_forbidden(omega, config(-0.25, 1.25, 97), 1);
  const auto many = scan_forbidden(omega, config(-0.25, 1.25, 97), 4);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].x == many[i].x);
    CHECK(one[i].t_finite == many[i].t_finite);
    CHECK(one[i].exceeds_k == many[i].exceeds_k);
  }
}

TEST_CASE("far from a single atom T is finite") {
  const MatrixMeasure omega(1, {{0.0, scalar(1.0)}}, {});
  const auto rows = scan_forbidden(omega, config(100.0, 101.0, 2));
  CHECK(rows[0].t_finite);
  CHECK(rows[1].t_finite);
}

TEST_CASE("dyadic demo measure diverges at every atom") {
  const int levels = 6;
  const auto omega = dyadic_demo_measure(levels);
  CHECK(omega.atoms().size() == (1u << levels) + 1);
  // The grid with spacing 2^-levels hits every atom.
  const auto rows = scan_forbidden(omega, config(0.0, 1.0, (1 << levels) + 1));
  for (const auto& r : rows) {
    CHECK(r.in_support);
    CHECK_FALSE(r.t_finite);
  }
  // Midpoints between atoms are regular.
  const auto mid = scan_forbidden(omega, config(0.5 / 64, 1.0 - 0.5 / 64, 64));
  for (const auto& r : mid) CHECK(r.t_finite);
}

TEST_CASE("every regular scan point is a max-multiplicity eigenvalue of some extension") {
  const HerglotzMatrix m(mixed_measure());
  const auto rows = scan_forbidden(m.measure(), config(-0.5, 2.5, 151));
  for (const auto& r : rows) {
    if (!r.t_finite) continue;
    const auto d = extension_for_point(m, r.x);
    REQUIRE(d);
    CHECK(max_mult_test(m, *d, r.x).verdict);
  }
}
