import json
import math

import pytest

import heatflow


def h3(t, r):
    shape = 1.0 if r == 0 else r / math.sinh(r)
    return (4 * math.pi * t) ** -1.5 * shape * math.exp(-t - r * r / (4 * t))


def test_version():
    assert heatflow.__version__


def test_exact_kernel():
    assert heatflow.heat_kernel(3, 1.0, 1.0) == pytest.approx(h3(1.0, 1.0), rel=1e-12)
    assert heatflow.heat_kernel(3, 2.0, 3.0, route="spectral") == pytest.approx(h3(2.0, 3.0), rel=1e-8)
    assert heatflow.heat_kernel_log(3, 1.0, 3000.0) < -1e5


def test_bad_input_raises():
    with pytest.raises(ValueError):
        heatflow.heat_kernel(3, -1.0, 1.0)
    with pytest.raises(heatflow.ConfigError):
        heatflow.heat_kernel(3, 1.0, 1.0, route="fast")


def test_spherical_function():
    assert heatflow.phi(3, 1.0, 1.0) == pytest.approx(math.sin(1) / math.sinh(1), rel=1e-10)
    assert heatflow.phi0_log(3, 2.0) == pytest.approx(math.log(2 / math.sinh(2)))


def test_plancherel_and_roots():
    assert heatflow.plancherel_density(3, 2.0) / heatflow.plancherel_density(3, 1.0) == pytest.approx(4)
    d = json.loads(heatflow.root_system_json("b2"))
    assert d["rank"] == 2
    assert math.isfinite(heatflow.plancherel_density_log("a2", [0.7, 0.2]))


def test_regions():
    lo, hi = heatflow.critical_region(3, 1.0, 100.0)
    assert lo < 200 < hi
    assert heatflow.lp_norm_log(3, 5.0, 1.0) == pytest.approx(0.0, abs=1e-7)


CFG = """
n = 3
datum = displaced_heat s=1 dist=2
p = 1, 2
t = 10, 40
"""


def test_mass_and_solution():
    m = heatflow.mass(CFG, 1.0, "low", 5.0, 0.0)
    # unit mass times the Poisson power e^{(n-1) d / p}
    assert m == pytest.approx(math.exp(4.0), rel=1e-8)
    u = heatflow.solution_log(CFG, 3.0, 2.0)
    assert u == pytest.approx(math.log(h3(4.0, 0.0)), rel=1e-9)


def test_converge():
    rows = heatflow.converge(CFG)
    assert len(rows) == 4
    for p in (1.0, 2.0):
        e = [r["E"] for r in rows if r["p"] == p]
        assert e[1] < e[0]
    assert all(r["error"] == "" for r in rows)
