"""Method coefficient tables with structural validation.

Three Rosenbrock-Krylov methods of order four are shipped (an L-stable
four-stage method, a stiffly accurate six-stage method, and a five-stage
method satisfying the extra algebraic conditions for semi-discrete
parabolic problems), together with two classical Rosenbrock baselines of
order four used by the benchmark harness for comparison runs.

Coefficients are stored as decimal string literals and parsed at import;
nothing is re-derived at runtime.  The parabolic method's long
coefficients are stored at full machine precision, obtained by projecting
the published four-decimal design choices onto the defining algebraic
conditions (order four, parabolic, L-stability); the tests in
``tests/test_tableaux.py`` and ``tests/test_conditions.py`` verify every
structural and order property independently.
"""

from dataclasses import dataclass

import numpy as np

from .errors import UnknownMethod


@dataclass(frozen=True)
class MethodTableau:
    """Rosenbrock coefficients plus declared orders.

    ``alpha`` and ``gamma_lower`` are strictly lower triangular s x s
    arrays; the common diagonal value is ``gamma``.  ``b_hat`` carries the
    embedded weights of order ``embedded_order``.
    """

    name: str
    s: int
    gamma: float
    alpha: np.ndarray
    gamma_lower: np.ndarray
    b: np.ndarray
    b_hat: np.ndarray
    order: int
    embedded_order: int
    stiffly_accurate: bool = False
    parabolic: bool = False

    @property
    def alpha_sums(self) -> np.ndarray:
        """Stage abscissae alpha_i = sum_j alpha_ij."""
        return self.alpha.sum(axis=1)

    @property
    def gamma_sums(self) -> np.ndarray:
        """Row sums gamma_i including the diagonal (the f_t weights)."""
        return self.gamma_lower.sum(axis=1) + self.gamma

    @property
    def beta_strict(self) -> np.ndarray:
        """Strictly lower part alpha_ij + gamma_ij."""
        return self.alpha + self.gamma_lower

    @property
    def beta_full(self) -> np.ndarray:
        """Full beta matrix with gamma on the diagonal."""
        return self.alpha + self.gamma_lower + self.gamma * np.eye(self.s)


def _lower(s, entries):
    m = np.zeros((s, s))
    for (i, j), val in entries.items():
        m[i - 1, j - 1] = float(val)
    return m


def rok4a() -> MethodTableau:
    """Four-stage, fourth-order, L-stable Rosenbrock-Krylov method."""
    g = float("0.572816062482135")
    alpha = _lower(4, {
        (2, 1): "1.0",
        (3, 1): "0.10845300169319391758",
        (3, 2): "0.39154699830680608241",
        (4, 1): "0.43453047756004477624",
        (4, 2): "0.14484349252001492541",
        (4, 3): "-0.07937397008005970166",
    })
    gamma_lower = _lower(4, {
        (2, 1): "-1.91153192976055097824",
        (3, 1): "0.32881824061153522156",
        (3, 2): "0.0",
        (4, 1): "0.03303644239795811290",
        (4, 2): "-0.24375152376108235312",
        (4, 3): "-0.17062602991994029834",
    })
    b = np.array([float(x) for x in (
        "0.16666666666666666667", "0.16666666666666666667",
        "0.0", "0.66666666666666666667")])
    b_hat = np.array([float(x) for x in (
        "0.50269322573684235345", "0.27867551969005856226",
        "0.21863125457309908428", "0.0")])
    return MethodTableau(name="rok4a", s=4, gamma=g, alpha=alpha,
                         gamma_lower=gamma_lower, b=b, b_hat=b_hat,
                         order=4, embedded_order=3)


def rok4b() -> MethodTableau:
    """Six-stage, fourth-order, stiffly accurate Rosenbrock-Krylov method.

    Both the main and embedded weight vectors are L-stable.
    """
    g = 0.31
    alpha = _lower(6, {
        (2, 1): "1.0",
        (3, 1): "0.530633333333333", (3, 2): "-0.030633333333333",
        (4, 1): "0.894444444444444", (4, 2): "0.055555555555556",
        (4, 3): "0.05",
        (5, 1): "0.738333333333333", (5, 2): "-0.121666666666667",
        (5, 3): "0.333333333333333", (5, 4): "0.05",
        (6, 1): "-0.096929102825711", (6, 2): "-0.121666666666667",
        (6, 3): "1.045582889789120", (6, 4): "0.173012879703258",
        (6, 5): "0.0",
    })
    gamma_lower = _lower(6, {
        (2, 1): "-22.824608269858540",
        (3, 1): "-69.343635255712726", (3, 2): "-0.030633333333333",
        (4, 1): "404.7106882480958", (4, 2): "0.055555555555556",
        (4, 3): "0.05",
        (5, 1): "-0.571666666666667", (5, 2): "-0.121666666666667",
        (5, 3): "0.333333333333333", (5, 4): "0.05",
        (6, 1): "0.263595769492377", (6, 2): "-0.121666666666667",
        (6, 3): "-0.378916223122453", (6, 4): "-0.073012879703258",
        (6, 5): "0.0",
    })
    b = np.array([float(x) for x in (
        "0.166666666666667", "-0.243333333333333", "0.666666666666667",
        "0.100000000000000", "0.0", "0.31")])
    b_hat = np.array([float(x) for x in (
        "0.166666666666667", "-0.243333333333333", "0.666666666666667",
        "0.1", "0.31", "0.0")])
    return MethodTableau(name="rok4b", s=6, gamma=g, alpha=alpha,
                         gamma_lower=gamma_lower, b=b, b_hat=b_hat,
                         order=4, embedded_order=3, stiffly_accurate=True)


def rok4p() -> MethodTableau:
    """Five-stage, fourth-order, parabolic Rosenbrock-Krylov method.

    Satisfies the additional conditions b^T beta^j (2 beta^2 1 - alpha^2) = 0
    for j = 2..4, which prevent order reduction on semi-discrete parabolic
    problems.  Short-decimal entries are design choices; the remaining
    coefficients solve the order / parabolic / L-stability conditions and
    are stored to full precision.
    """
    g = float("0.572816062482135")
    alpha = _lower(5, {
        (2, 1): "0.7579",
        (3, 1): "0.1704", (3, 2): "0.8211",
        (4, 1): "1.19621852144621066", (4, 2): "0.2977",
        (4, 3): "-1.43361863493113728",
        (5, 1): "-0.0106503220481879921", (5, 2): "0.1421",
        (5, 3): "-0.129349712984898918", (5, 4): "0.3928",
    })
    gamma_lower = _lower(5, {
        (2, 1): "-0.7579",
        (3, 1): "-0.295086869764677795", (3, 2): "0.1789",
        (4, 1): "-1.83633310510715786", (4, 2): "-0.2477",
        (4, 3): "1.68140915392192647",
        (5, 1): "-0.197089957533689436", (5, 2): "-0.684644074172330530",
        (5, 3): "0.166330422891899282", (5, 4): "0.0",
    })
    b = np.array([float(x) for x in (
        "0.056", "0.116601256618699897", "0.1603",
        "-0.0311094275518692918", "0.698208170933169336")])
    b_hat = np.array([float(x) for x in (
        "-0.186875228695934925", "-0.250433723998311764",
        "0.326360726520730560", "0.110948226173516129", "1.0")])
    return MethodTableau(name="rok4p", s=5, gamma=g, alpha=alpha,
                         gamma_lower=gamma_lower, b=b, b_hat=b_hat,
                         order=4, embedded_order=3, parabolic=True)


def _from_transformed(name, gamma, a_entries, c_entries, m, e, s,
                      stiffly_accurate=False):
    """Recover (alpha, gamma_lower, b, b_hat) from the transformed scheme.

    Classical Rosenbrock codes publish coefficients for the substituted
    variables u_i = sum_j Gamma_ij k_j, in which the per-stage matrix-vector
    product disappears.  The correspondence is
    ``a = alpha Gamma^-1``, ``c = diag(1/gamma) - Gamma^-1``,
    ``m = Gamma^-T b``, so the original tableau follows by one triangular
    inversion.
    """
    A = _lower(s, a_entries)
    C = _lower(s, c_entries)
    ginv = np.eye(s) / gamma - C
    Gam = np.linalg.inv(ginv)
    alpha = A @ Gam
    b = Gam.T @ np.asarray(m, dtype=float)
    b_hat = Gam.T @ np.asarray(e, dtype=float)
    # scrub roundoff in the strict triangle
    alpha = np.tril(alpha, -1)
    gamma_lower = np.tril(Gam, -1)
    return MethodTableau(name=name, s=s, gamma=gamma, alpha=alpha,
                         gamma_lower=gamma_lower, b=b, b_hat=b_hat,
                         order=4, embedded_order=3,
                         stiffly_accurate=stiffly_accurate)


def classical_ros4() -> MethodTableau:
    """Classical four-stage, fourth-order, L-stable Rosenbrock method.

    Standard baseline coefficients (the 'L-stable' parameter set of the
    widely distributed ros4 implementation), transcribed in transformed
    form and converted at load.
    """
    g = 0.5728200000000000
    a = {(2, 1): "2.0",
         (3, 1): "1.867943637803922", (3, 2): "0.2344449711399156",
         (4, 1): "1.867943637803922", (4, 2): "0.2344449711399156",
         (4, 3): "0.0"}
    c = {(2, 1): "-7.137615036412310",
         (3, 1): "2.580708087951457", (3, 2): "0.6515950076447975",
         (4, 1): "-2.137148994382534", (4, 2): "-0.3214669691237626",
         (4, 3): "-0.6949742501781779"}
    m = [2.255570073418735, 0.2870493262186792,
         0.4353179431840180, 1.093502252409163]
    e = [-0.2815431932141155, -0.07276199124938920,
         -0.1082196201495311, -1.093502252409163]
    tab = _from_transformed("ros4", g, a, c, m, e, 4)
    # embedded weights: error vector e lives in the transformed variables
    return MethodTableau(name=tab.name, s=4, gamma=g, alpha=tab.alpha,
                         gamma_lower=tab.gamma_lower, b=tab.b,
                         b_hat=tab.b - tab.b_hat, order=4, embedded_order=3)


def classical_rodas4() -> MethodTableau:
    """Classical six-stage, fourth-order, stiffly accurate Rosenbrock method.

    Standard rodas baseline; the fifth stage value is the embedded
    third-order solution.
    """
    g = 0.25
    a = {(2, 1): "1.544000000000000",
         (3, 1): "0.9466785280815826", (3, 2): "0.2557011698983284",
         (4, 1): "3.314825187068521", (4, 2): "2.896124015972201",
         (4, 3): "0.9986419139977817",
         (5, 1): "1.221224509226641", (5, 2): "6.019134481288629",
         (5, 3): "12.53708332932087", (5, 4): "-0.6878860361058950",
         (6, 1): "1.221224509226641", (6, 2): "6.019134481288629",
         (6, 3): "12.53708332932087", (6, 4): "-0.6878860361058950",
         (6, 5): "1.0"}
    c = {(2, 1): "-5.668800000000000",
         (3, 1): "-2.430093356833875", (3, 2): "-0.2063599157091915",
         (4, 1): "-0.1073529058151375", (4, 2): "-9.594562251023355",
         (4, 3): "-20.47028614809616",
         (5, 1): "7.496443313967647", (5, 2): "-10.24680431464352",
         (5, 3): "-33.99990352819905", (5, 4): "11.70890893206160",
         (6, 1): "8.083246795921522", (6, 2): "-7.981132988064893",
         (6, 3): "-31.52159432874371", (6, 4): "16.31930543123136",
         (6, 5): "-6.058818238834054"}
    # y_{n+1} = y_n + sum u_j with unit weights on u_5, u_6; the embedded
    # solution drops u_6 (it is the stage-5 value, also order consistent).
    m = [1.221224509226641, 6.019134481288629, 12.53708332932087,
         -0.6878860361058950, 1.0, 1.0]
    e = [1.221224509226641, 6.019134481288629, 12.53708332932087,
         -0.6878860361058950, 1.0, 0.0]
    return _from_transformed("rodas4", g, a, c, m, e, 6,
                             stiffly_accurate=True)


def validate_tableau(t: MethodTableau) -> list:
    """Structural checks; returns a list of named violations (empty = valid)."""
    violations = []
    s = t.s
    shapes_ok = (t.alpha.shape == (s, s) and t.gamma_lower.shape == (s, s)
                 and t.b.shape == (s,) and t.b_hat.shape == (s,))
    if not shapes_ok:
        violations.append("shapes")
        return violations
    if (np.abs(np.triu(t.alpha)).max() > 0.0
            or np.abs(np.triu(t.gamma_lower)).max() > 0.0):
        violations.append("triangularity")
    if abs(t.b.sum() - 1.0) > 1e-12:
        violations.append("weights-sum")
    is_sa = np.abs(t.b - t.beta_full[s - 1, :]).max() <= 1e-10
    if is_sa != t.stiffly_accurate:
        violations.append("stiff-accuracy-flag")
    return violations


METHODS = {
    "rok4a": rok4a,
    "rok4b": rok4b,
    "rok4p": rok4p,
    "ros4": classical_ros4,
    "rodas4": classical_rodas4,
}

# methods whose order theory covers the Krylov-restricted Jacobian
ROK_METHOD_NAMES = frozenset({"rok4a", "rok4b", "rok4p"})


def get_method(name: str) -> MethodTableau:
    """Look up a tableau by registry name."""
    try:
        return METHODS[name]()
    except KeyError:
        raise UnknownMethod(
            f"unknown method {name!r}; available: {sorted(METHODS)}") from None
