"""Endpoints of rational pleating rays in the diagonal slice, the parabolic
generating pairs they carry, and Li-Oichi-Sato normalization.
"""

from __future__ import annotations

import cmath
import csv
from dataclasses import dataclass

from .errors import DegenerateError, InconsistentRootError, NoConvergenceError, NoSeedError
from .families import GeneratorPair, sst_matrices, x_to_a
from .markoff import Slope, associated_pair, psi_sq_minus4, word_matrix
from .mobius import ElementClass, UnitMatrix, classify, jorgensen_pair

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 200
RESIDUAL_TOL = 1e-10

# approximate endpoints, good enough to seed Newton onto the right root
TABULATED_SEEDS = {
    Slope(0, 1): complex(-2, 0),
    Slope(1, 3): complex(-0.5652, 1.0434),
    Slope(3, 8): complex(-0.2992, 1.0726),
    Slope(2, 5): complex(-0.1372, 1.1260),
    Slope(1, 2): complex(0.5, 1.3229),
}


@dataclass(frozen=True)
class EndpointResult:
    slope: Slope
    e: complex
    residual: float
    iterations: int


@dataclass(frozen=True)
class LOSParams:
    sigma: complex
    mu: complex

    def __post_init__(self):
        if self.sigma == 0:
            raise ValueError("sigma must be nonzero")

    def matrices(self) -> tuple[UnitMatrix, UnitMatrix]:
        """The normal form (M, N_{sigma, mu})."""
        s, m = self.sigma, self.mu
        M = UnitMatrix(1, 1, 0, 1)
        N = UnitMatrix(m * s, m * m * s - 1 / s, s, m * s)
        return M, N


def tabulated_seed(s: Slope) -> complex:
    try:
        return TABULATED_SEEDS[s]
    except KeyError:
        raise NoSeedError(f"no tabulated endpoint for slope {s}; supply a seed") from None


def endpoint(s: Slope, seed: complex | None = None) -> EndpointResult:
    """Solve psi_x(s)^2 = 4 by complex Newton iteration from ``seed``.

    The derivative is a central difference with step 1e-6 * max(1, |x|).
    Non-integer slopes must land in the closed upper half plane.
    """
    x = complex(tabulated_seed(s) if seed is None else seed)
    f = psi_sq_minus4(x, s)
    it = 0
    while abs(f) > NEWTON_TOL and it < NEWTON_MAX_ITER:
        h = 1e-6 * max(1.0, abs(x))
        df = (psi_sq_minus4(x + h, s) - psi_sq_minus4(x - h, s)) / (2 * h)
        if df == 0 or not cmath.isfinite(df):
            raise NoConvergenceError(f"vanishing derivative at x={x} for slope {s}")
        x = x - f / df
        f = psi_sq_minus4(x, s)
        it += 1
        if not cmath.isfinite(x):
            raise NoConvergenceError(f"Newton diverged for slope {s}")
    residual = abs(f)
    if residual > RESIDUAL_TOL:
        raise NoConvergenceError(
            f"Newton stalled for slope {s} at x={x} (residual {residual:.3g})")
    if s.is_integer:
        if abs(x.imag) <= 1e-9:
            x = complex(x.real, 0.0)
    elif x.imag < 0:
        raise NoConvergenceError(f"root for slope {s} fell in the lower half plane: {x}")
    return EndpointResult(s, x, residual, it)


def endpoint_pair(s: Slope, result: EndpointResult | None = None,
                  tol: float = 1e-8) -> GeneratorPair:
    """Parabolic generating pair (W_s, W_t) of the group at x = e_s.

    W_s is the primitive word of slope s and W_t that of its left Farey
    parent, both evaluated at (A_a, B) with -tr(A_a^2) = e_s.
    """
    if result is None:
        result = endpoint(s)
    a = x_to_a(result.e)
    A, B = sst_matrices(a)
    w, v = associated_pair(s)
    P = word_matrix(w, A, B)
    N = word_matrix(v, A, B)
    t = P.trace
    if abs(t * t - 4) > tol:
        raise InconsistentRootError(
            f"{w} is not parabolic at x={result.e} (tr^2 - 4 = {t * t - 4:.3g})")
    j = jorgensen_pair(P, N)
    if abs(j - 1) > tol:
        raise InconsistentRootError(f"J({w}, {v}) = {j} at x={result.e}, expected 1")
    return GeneratorPair(P, N, f"({w}, {v}) at e_{s}")


def canonical_los(sigma: complex, mu: complex, tol: float = 1e-12) -> LOSParams:
    """Representative of (sigma, mu) modulo (sigma, mu) ~ (+-sigma, +-mu).

    N -> -N flips sigma alone; replacing the parabolic by its inverse
    flips both.  The chosen representative has Im mu >= 0 (Re mu >= 0
    when mu is real) and likewise for sigma.
    """
    if mu.imag < -tol or (abs(mu.imag) <= tol and mu.real < 0):
        mu = -mu
    if sigma.imag < -tol or (abs(sigma.imag) <= tol and sigma.real < 0):
        sigma = -sigma
    return LOSParams(sigma, mu)


def los_normalize(P: UnitMatrix, N: UnitMatrix, tol: float = 1e-8) -> LOSParams:
    """Conjugate (P, N) to (M, N_{sigma, mu}) with M = [[1, 1], [0, 1]].

    P must be parabolic; N must not fix the fixed point of P.
    """
    if classify(P) is not ElementClass.PARABOLIC:
        raise DegenerateError("first element is not parabolic")
    if P.trace.real < 0:
        P = -P
    # send the fixed point of P to infinity with a unitary conjugation; the
    # fixed point is the kernel of P - I, taken from its larger row
    row1, row2 = (P.b, 1 - P.a), (1 - P.d, P.c)
    v1, v2 = row1 if abs(row1[0]) + abs(row1[1]) >= abs(row2[0]) + abs(row2[1]) else row2
    n = (abs(v1) ** 2 + abs(v2) ** 2) ** 0.5
    v1, v2 = v1 / n, v2 / n
    C = UnitMatrix(v1, -v2.conjugate(), v2, v1.conjugate()).inverse()
    P1 = C @ P @ C.inverse()
    t = P1.b
    if t == 0:
        raise DegenerateError("parabolic element degenerated to the identity")
    # scale z -> z / t so the translation length becomes 1
    r = cmath.sqrt(t)
    C = UnitMatrix(1 / r, 0, 0, r) @ C
    N1 = C @ N @ C.inverse()
    alpha, gamma, delta = N1.a, N1.c, N1.d
    if abs(gamma) <= tol * max(1.0, abs(alpha), abs(delta)):
        raise DegenerateError("N fixes the parabolic fixed point; the pair is elementary")
    # translate so the diagonal entries agree
    tau = (delta - alpha) / (2 * gamma)
    T = UnitMatrix(1, tau, 0, 1)
    C = T @ C
    N2 = C @ N @ C.inverse()
    sigma = N2.c
    mu = N2.a / sigma
    out = canonical_los(sigma, mu)
    _, normal = LOSParams(sigma, mu).matrices()
    if not N2.close_to(normal, tol * max(1.0, abs(N2.b))):
        raise DegenerateError("normalized pair does not match the LOS form")
    if not (C @ P @ C.inverse()).close_to(UnitMatrix(1, 1, 0, 1), tol):
        raise DegenerateError("parabolic element did not normalize to z + 1")
    return out


def write_endpoint_csv(results, path) -> None:
    """Columns: slope,p,q,re,im,residual,iterations."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["slope", "p", "q", "re", "im", "residual", "iterations"])
        for r in results:
            w.writerow([str(r.slope), r.slope.p, r.slope.q, repr(r.e.real),
                        repr(r.e.imag), repr(r.residual), r.iterations])
