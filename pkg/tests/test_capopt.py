import numpy as np
import pytest

from spherecert.capopt import CapProblem, cap_max, kissing_check
from spherecert.data import load_expansion
from spherecert.errors import ParameterError, PreconditionError
from spherecert.gegenbauer import GegenbauerExpansion

T0 = -np.sqrt(2) / 2


@pytest.fixture(scope="module")
def g1():
    return load_expansion("g1")


def one_point_oracle(g, t0):
    """Grid-plus-refinement maximum of g over [-1, t0]; the m = 1 cap
    problem collapses to this one-dimensional search."""
    ts = np.linspace(-1.0, t0, 200_001)
    vals = g.eval(ts)
    i = int(np.argmax(vals))
    lo, hi = max(-1.0, ts[i] - 1e-5), min(t0, ts[i] + 1e-5)
    fine = np.linspace(lo, hi, 20_001)
    return float(np.max(g.eval(fine)))


def feasibility_violation(cfg, t0):
    worst = float(np.max(np.abs(np.sum(cfg * cfg, axis=1) - 1.0)))
    worst = max(worst, float(np.max(cfg[:, 0] - t0)))
    if len(cfg) > 1:
        gram = cfg @ cfg.T
        iu = np.triu_indices(len(cfg), 1)
        worst = max(worst, float(np.max(gram[iu] - 0.5)))
    return worst


def test_empty_configuration(g1):
    res = cap_max(CapProblem(4, g1, T0, 0, 4), starts=1, seed=0)
    assert res.value == 0.0
    assert res.configuration.shape == (0, 4)


def test_single_point_matches_1d_oracle(g1):
    res = cap_max(CapProblem(4, g1, T0, 1, 4), starts=40, seed=1)
    assert res.value == pytest.approx(one_point_oracle(g1, T0), abs=1e-6)


def test_configurations_feasible(g1):
    for m in (2, 3, 4):
        res = cap_max(CapProblem(4, g1, T0, m, 4), starts=60, seed=2)
        assert res.configuration.shape == (m, 4)
        assert feasibility_violation(res.configuration, T0) <= 1e-9


def test_determinism(g1):
    a = cap_max(CapProblem(4, g1, T0, 2, 4), starts=50, seed=9)
    b = cap_max(CapProblem(4, g1, T0, 2, 4), starts=50, seed=9)
    assert a.value == b.value
    assert np.array_equal(a.configuration, b.configuration)


def test_extension_property():
    # g peaking inside the cap leaves room: if the single-point optimum
    # admits a feasible companion with g >= 0, two points can only help
    g = GegenbauerExpansion(4, [-0.79, -1.6, -0.75])  # 0.1 - (t + 0.8)^2
    assert g.eval(-0.8) == pytest.approx(0.1, abs=1e-12)
    r1 = cap_max(CapProblem(4, g, T0, 1, 4), starts=40, seed=3)
    r2 = cap_max(CapProblem(4, g, T0, 2, 4), starts=40, seed=3)
    y1 = r1.configuration[0]
    found = False
    rng = np.random.default_rng(4)
    for _ in range(2000):
        s = rng.uniform(-1.0, T0)
        w = rng.normal(size=3)
        w /= np.linalg.norm(w)
        cand = np.concatenate([[s], np.sqrt(1 - s * s) * w])
        if cand @ y1 <= 0.5 and g.eval(s) >= 0.0:
            found = True
            break
    assert found
    assert r2.value >= r1.value - 1e-9


def test_problem_validation(g1):
    CapProblem(4, g1, -0.6058, 3, 6)  # reference capacity inputs accepted
    CapProblem(4, g1, T0, 4, 4)
    with pytest.raises(ParameterError):
        CapProblem(4, g1, -0.4, 1, 4)  # t0 above -1/2
    with pytest.raises(ParameterError):
        CapProblem(4, g1, T0, 5, 4)  # m beyond capacity
    with pytest.raises(ParameterError):
        CapProblem(3, g1, T0, 1, 4)  # dimension mismatch
    with pytest.raises(ParameterError):
        cap_max(CapProblem(4, g1, T0, 1, 4), starts=0)


def test_kissing_check_refuses_positive_g():
    with pytest.raises(PreconditionError):
        kissing_check(GegenbauerExpansion(4, [1.0]), 20.0, T0, 1, 25, starts=2)


def test_kissing_check_m_at_least_n_inconclusive(g1):
    rep = kissing_check(g1, 30.0, T0, 1, 25, starts=10, seed=0)
    assert rep.verdict == "INCONCLUSIVE"
    assert rep.bound <= 0.0 <= rep.best_value + 1e-12


def test_kissing_check_verdicts_smoke(g1):
    rep = kissing_check(g1, 22.5689, T0, 4, 25, starts=40, seed=5)
    assert rep.verdict == "CONTRADICTION"
    assert rep.best_m == 2
    assert rep.best_value == pytest.approx(0.0266, abs=1e-3)
    assert rep.margin > 0
    assert "multistart" in rep.heuristic
    rep24 = kissing_check(g1, 22.5689, T0, 4, 24, starts=40, seed=5)
    assert rep24.verdict == "INCONCLUSIVE"
