import cmath
import math
import os

import pytest

import qbloch

DATA = os.environ.get("QBLOCH_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def term(name):
    return qbloch.load(os.path.join(DATA, name))


def test_dilog_values():
    assert abs(qbloch.li2(1) - math.pi ** 2 / 6) < 1e-14
    assert abs(qbloch.li2(-1) + math.pi ** 2 / 12) < 1e-14
    # returned as i D(z); D is maximal at e^{i pi/3}
    d = qbloch.bloch_wigner(cmath.exp(1j * math.pi / 3))
    assert abs(d - 1.0149416064096536j) < 1e-13


def test_solve_four_one():
    pts = qbloch.solve(term("four_one.json"))
    assert len(pts) == 2
    imag = sorted(p["u"][0][1] for p in pts)
    assert imag == pytest.approx([-math.pi / 3, math.pi / 3], abs=1e-12)


def test_cv_four_one():
    cv = qbloch.cv(term("four_one.json"))
    assert cv["moduli"] == pytest.approx([0.7239261119, 1.3813564445], abs=1e-9)


def test_sequence_exact_and_numeric():
    t = term("four_one_special.json")
    exact = qbloch.sequence(t, 12, "exact")
    numeric = qbloch.sequence(t, 12)
    assert [round(c.real) for c in exact[1:4]] == [1, 5, 13]
    assert all(abs(a - b) < 1e-8 * (1 + abs(a)) for a, b in zip(exact[1:], numeric[1:]))


def test_growth_rate_of_geometric_sequence():
    est = qbloch.growth_rate([2.0 ** n for n in range(401)])
    assert est["growth_rate"] == pytest.approx(math.log(2), abs=1e-10)


def test_schema_error_lists_pointers():
    bad = {"r": 1, "Q": {"matrix": [[0, 1], [2, 0]], "linear": ["0", "0"]},
           "L": {"coeffs": [0, 0], "constant": 0}, "epsilon": 2, "factors": []}
    with pytest.raises(qbloch.SchemaError) as info:
        qbloch.solve(bad)
    assert sorted(i["pointer"] for i in info.value.issues) == ["/Q/matrix/0/1", "/epsilon"]
    assert issubclass(qbloch.SchemaError, qbloch.QblochError)


def test_bad_mode_is_rejected():
    with pytest.raises(qbloch.QblochError):
        qbloch.sequence(term("four_one_special.json"), 5, "fast")
