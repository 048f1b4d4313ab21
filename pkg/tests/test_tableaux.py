import numpy as np
import pytest

from rokit.errors import UnknownMethod
from rokit.tableaux import (METHODS, MethodTableau, classical_rodas4,
                            classical_ros4, get_method, rok4a, rok4b, rok4p,
                            validate_tableau)


def test_rok4a_values():
    t = rok4a()
    assert t.gamma == 0.572816062482135
    assert np.allclose(t.b, [1.0 / 6.0, 1.0 / 6.0, 0.0, 2.0 / 3.0],
                       atol=1e-15)
    assert abs(t.b.sum() - 1.0) <= 1e-12
    assert t.alpha[1, 0] == 1.0
    assert t.gamma_lower[1, 0] == -1.91153192976055097824
    assert t.b_hat[0] == 0.50269322573684235345
    assert (t.order, t.embedded_order) == (4, 3)


def test_rok4b_values():
    t = rok4b()
    assert t.gamma == 0.31
    assert t.s == 6
    assert t.gamma_lower[3, 0] == 404.7106882480958
    assert t.b_hat[4] == 0.31
    assert t.stiffly_accurate
    # the last row of beta reproduces the weights
    assert np.abs(t.b - t.beta_full[5, :]).max() <= 1e-10


def test_rok4p_values():
    t = rok4p()
    assert t.gamma == 0.572816062482135
    assert t.parabolic
    assert abs(t.b.sum() - 1.0) <= 1e-12
    # derived weights agree with their published four-to-fifteen digit
    # precision; full digits come from the defining condition solve
    assert t.b[4] == pytest.approx(0.698208116173739, abs=2e-7)
    assert t.b[0] == 0.056
    assert t.alpha[1, 0] == 0.7579


def test_classical_baselines_roundtrip():
    ros4 = classical_ros4()
    rodas4 = classical_rodas4()
    assert abs(ros4.b.sum() - 1.0) <= 1e-12
    assert abs(rodas4.b.sum() - 1.0) <= 1e-12
    assert not ros4.stiffly_accurate
    assert rodas4.stiffly_accurate
    # known abscissae of the transformed parameter sets
    assert np.allclose(ros4.alpha_sums,
                       [0.0, 1.14564, 0.65521686381559, 0.65521686381559],
                       atol=1e-12)
    assert np.allclose(rodas4.alpha_sums, [0.0, 0.386, 0.21, 0.63, 1.0, 1.0],
                       atol=1e-12)
    assert np.allclose(rodas4.gamma_sums,
                       [0.25, -0.1043, 0.1035, -0.0362, 0.0, 0.0], atol=1e-12)


def test_all_shipped_tableaux_validate():
    for name in METHODS:
        assert validate_tableau(get_method(name)) == [], name


def test_validator_flags_scaled_weights():
    t = rok4a()
    bad = MethodTableau(name="bad", s=t.s, gamma=t.gamma, alpha=t.alpha,
                        gamma_lower=t.gamma_lower, b=2.0 * t.b,
                        b_hat=t.b_hat, order=4, embedded_order=3)
    assert "weights-sum" in validate_tableau(bad)


def test_validator_flags_upper_triangle():
    t = rok4a()
    alpha = t.alpha.copy()
    alpha[0, 1] = 0.5
    bad = MethodTableau(name="bad", s=t.s, gamma=t.gamma, alpha=alpha,
                        gamma_lower=t.gamma_lower, b=t.b, b_hat=t.b_hat,
                        order=4, embedded_order=3)
    assert "triangularity" in validate_tableau(bad)


def test_validator_flags_wrong_stiff_accuracy_claim():
    t = rok4a()
    bad = MethodTableau(name="bad", s=t.s, gamma=t.gamma, alpha=t.alpha,
                        gamma_lower=t.gamma_lower, b=t.b, b_hat=t.b_hat,
                        order=4, embedded_order=3, stiffly_accurate=True)
    assert "stiff-accuracy-flag" in validate_tableau(bad)


def test_unknown_method_raises():
    with pytest.raises(UnknownMethod):
        get_method("rok9z")
