import cmath
import json
import math
import os
import sys

import pytest

if os.environ.get("POLYMAASS_PYTHONPATH"):
    sys.path.insert(0, os.environ["POLYMAASS_PYTHONPATH"])

import polymaass as pm  # noqa: E402

# E_4(i, 2) from the brute-force mpmath oracle
E4_I_2 = 1.8808830130829151509


def test_doubly_completed():
    v, err, method = pm.doubly_completed_eval(4, 2.0, 1j)
    assert method == "fourier_series"
    expect = 12 * math.pi ** -4 * math.gamma(6) * E4_I_2
    assert abs(v - expect) < 1e-12 * expect
    assert err < 1e-12


def test_eisenstein_and_lattice():
    v, _, _ = pm.eisenstein_E(4, 2.0, 1j)
    assert abs(v - E4_I_2) < 1e-12
    w, _, method = pm.lattice_sum_E(4, 2.0, 1j)
    assert method == "lattice_sum"
    assert abs(w - E4_I_2) < 1e-10


def test_functional_equation():
    z = 0.2 + 1.1j
    for k, s in [(0, 0.3 + 2j), (2, 1.7 - 0.4j), (-4, 3.1 + 0.2j)]:
        a = pm.doubly_completed_eval(k, s, z)[0]
        b = pm.doubly_completed_eval(k, 1 - k - s, z)[0]
        assert abs(a - b) < 1e-9 * max(abs(a), 1)


def test_whittaker_closed_form():
    # W_{0,1/2}(y) = exp(-y/2)
    for y in (0.5, 3.0, 12.0):
        v, _, _ = pm.whittaker_w(0.0, 0.5, y)
        assert abs(v - math.exp(-y / 2)) < 1e-12 * math.exp(-y / 2)


def test_taylor_zero():
    t = pm.taylor_coeffs(4, -2.0, 1j, 1)
    assert abs(t[0][0]) < 1e-9 * abs(t[1][0])


def test_expansion_json():
    f = json.loads(pm.expansion_json(2, 0.3 + 0.4j, 3))
    assert list(f) == ["weight", "s0", "depth", "N", "is_center", "const", "modes"]
    assert f["N"] == 3


def test_errors():
    with pytest.raises(pm.DomainError):
        pm.doubly_completed_eval(3, 2.0, 1j)
    with pytest.raises(pm.Error):
        pm.doubly_completed_eval(0, 2.0, 0.2j, modes=1)
    with pytest.raises(pm.DomainError):
        pm.run_suite("no-such-suite")


def test_suite():
    assert "functional-equation" in pm.suite_names()
    r = pm.run_suite("functional-equation", weight=0, threads=2)
    assert len(r) == 10 and all(c["passed"] for c in r)
    assert r == pm.run_suite("functional-equation", weight=0, threads=1)
