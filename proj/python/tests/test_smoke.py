import os

import numpy as np
import pytest

import weylspec as ws

DATA = os.environ.get("WEYLSPEC_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "data"))

I1 = np.eye(1, dtype=complex)
I2 = np.eye(2, dtype=complex)


def single_atom():
    return ws.HerglotzMatrix(ws.MatrixMeasure(1, atoms=[(0.0, I1)]))


def two_atom():
    return ws.HerglotzMatrix(ws.MatrixMeasure(2, atoms=[(-1.0, I2), (1.0, I2)]))


def test_eval_closed_forms():
    assert np.allclose(ws.eval(single_atom(), 1j), [[1j]], atol=1e-15)
    z = 0.3 + 0.4j
    assert np.allclose(ws.eval(two_atom(), z), -2 * z / (z * z - 1) * I2, atol=1e-14)
    with pytest.raises(ws.DomainError):
        ws.eval(two_atom(), 0.5)


def test_measure_queries():
    omega = ws.MatrixMeasure(2, pieces=[(0.0, 2.0, np.diag([1.0, 2.0]).astype(complex))])
    assert np.allclose(ws.measure_of_set(omega, ws.IntervalSet.closed(0, 1)), np.diag([1, 2]))
    assert ws.trace_measure(omega, ws.IntervalSet.closed(0, 1)) == pytest.approx(3.0)
    d = ws.density_matrix(omega, 0.5)
    assert d.multiplicity == 2
    r = ws.integrate(ws.PoissonSquare(1.0), omega)
    assert not r.finite and r.divergent_directions == [1, 2]


def test_validation_names_the_atom():
    with pytest.raises(ws.ValidationError, match="atom 1"):
        ws.MatrixMeasure(1, atoms=[(0.0, I1), (1.0, -I1)])


def test_criterion_and_oracle_agree():
    m = two_atom()
    d = ws.extension_for_point(m, 0.0)
    assert d is not None and np.allclose(d.matrix, 0)
    ev = ws.max_mult_test(m, d, 0.0)
    assert ev.verdict and np.allclose(ev.t_value, 2 * I2)
    report = ws.classify(m, d, -5.0, 5.0)
    assert len(report.poles) == 1
    pole = report.poles[0]
    assert pole.rank == 2 and pole.is_max_mult
    assert np.allclose(pole.mass, I2 / 2, atol=1e-12)
    assert np.allclose(ws.mass_at_max_mult(m, d, 0.0), pole.mass, atol=1e-12)
    assert np.allclose(ws.extension_atom_mass(m, d, 0.0), pole.mass, atol=1e-7)
    via = ws.max_mult_test_via(m, d, ws.ExtensionParameter(I2), 0.0)
    assert via.verdict
    assert ws.max_mult_test(m, d, 1.0).verdict is False


def test_scan_marks_forbidden_points():
    omega = ws.MatrixMeasure(1, atoms=[(2.0, I1)], pieces=[(0.0, 1.0, I1)])
    rows = ws.scan_forbidden(omega, -0.5, 2.5, 7)
    by_x = {round(r.x, 12): r for r in rows}
    assert not by_x[0.5].t_finite
    assert not by_x[2.0].t_finite
    assert by_x[1.5].t_finite
    assert by_x[1.5].t[0, 0].real == pytest.approx(16 / 3, abs=1e-12)


def test_files_and_verify():
    m = ws.load_herglotz(os.path.join(DATA, "single_atom.json"))
    d = ws.load_extension(os.path.join(DATA, "d_minus_half.json"), 1)
    assert ws.max_mult_test(m, d, 2.0).verdict
    report = ws.verify(trials=5, seed=3)
    assert report["ok"] and report["mismatch_count"] == 0
    assert ws.verify(trials=5, seed=3) == report
