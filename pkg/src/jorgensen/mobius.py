"""Unit-determinant complex 2x2 matrices and the Jorgensen number of a pair.

Points of the Riemann sphere are plain Python complex numbers, with
``INF`` (or any value for which ``cmath.isinf`` holds) standing for the
point at infinity.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

from .errors import DegenerateLineError

INF = complex("inf")

DEFAULT_TOL = 1e-9


def is_inf(z) -> bool:
    return cmath.isinf(z)


@dataclass(frozen=True)
class UnitMatrix:
    """Element of SL(2, C), renormalized so that det == 1.

    The constructor divides all four entries by the principal square
    root of the determinant, so ``UnitMatrix(2, 0, 0, 2)`` is the identity.
    Products and inverses skip that step: they preserve det == 1 exactly,
    and recomputing ad - bc from large entries only injects rounding noise.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if det == 0:
            raise ValueError("singular matrix")
        if det != 1:
            r = cmath.sqrt(det)
            a, b, c, d = a / r, b / r, c / r, d / r
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def _raw(cls, a: complex, b: complex, c: complex, d: complex) -> UnitMatrix:
        m = object.__new__(cls)
        object.__setattr__(m, "a", a)
        object.__setattr__(m, "b", b)
        object.__setattr__(m, "c", c)
        object.__setattr__(m, "d", d)
        return m

    @classmethod
    def identity(cls) -> UnitMatrix:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> UnitMatrix:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> UnitMatrix:
        return UnitMatrix._raw(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: UnitMatrix) -> UnitMatrix:
        return UnitMatrix._raw(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> UnitMatrix:
        return UnitMatrix._raw(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> UnitMatrix:
        base = self if n >= 0 else self.inverse()
        out = UnitMatrix.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def distance(self, other: UnitMatrix) -> float:
        """Max-entry distance between the two matrices (in SL, not PSL)."""
        return max(abs(self.a - other.a), abs(self.b - other.b),
                   abs(self.c - other.c), abs(self.d - other.d))

    def psl_distance(self, other: UnitMatrix) -> float:
        return min(self.distance(other), self.distance(-other))

    def close_to(self, other: UnitMatrix, tol: float = DEFAULT_TOL,
                 projective: bool = True) -> bool:
        if projective:
            return self.psl_distance(other) <= tol
        return self.distance(other) <= tol


IDENTITY = UnitMatrix.identity()


class ElementClass(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


def line_matrix(z, zp) -> UnitMatrix:
    """Half-turn about the oriented geodesic from ``z`` to ``zp``.

    For finite endpoints this is ``i/(zp - z) * [[z+zp, -2 z zp], [2, -z-zp]]``;
    an infinite endpoint uses the limiting form, with the orientation
    convention ``line_matrix(z, zp) == -line_matrix(zp, z)``.
    """
    if is_inf(z) and is_inf(zp):
        raise DegenerateLineError("both endpoints are infinite")
    if is_inf(zp):
        z = complex(z)
        return UnitMatrix(1j, -2j * z, 0, -1j)
    if is_inf(z):
        zp = complex(zp)
        return UnitMatrix(-1j, 2j * zp, 0, 1j)
    z, zp = complex(z), complex(zp)
    if z == zp:
        raise DegenerateLineError(f"degenerate line [{z}, {zp}]")
    s = 1j / (zp - z)
    return UnitMatrix(s * (z + zp), -2 * s * z * zp, 2 * s, -s * (z + zp))


def commutator(A: UnitMatrix, B: UnitMatrix) -> UnitMatrix:
    return A @ B @ A.inverse() @ B.inverse()


def jorgensen_pair(A: UnitMatrix, B: UnitMatrix) -> float:
    """|tr^2 A - 4| + |tr [A, B] - 2|."""
    t = A.trace
    return abs(t * t - 4) + abs(commutator(A, B).trace - 2)


def classify(M: UnitMatrix, tol: float = DEFAULT_TOL) -> ElementClass:
    if M.close_to(IDENTITY, tol):
        return ElementClass.IDENTITY
    t2 = M.trace ** 2
    if abs(t2 - 4) <= tol:
        return ElementClass.PARABOLIC
    if abs(t2.imag) <= tol and -tol <= t2.real < 4:
        return ElementClass.ELLIPTIC
    return ElementClass.LOXODROMIC


def apply(M: UnitMatrix, z):
    """Moebius action z -> (az + b)/(cz + d) on the Riemann sphere."""
    if is_inf(z):
        return INF if M.c == 0 else M.a / M.c
    num = M.a * z + M.b
    den = M.c * z + M.d
    if den == 0:
        return INF
    return num / den


def fixed_points(M: UnitMatrix):
    """Fixed points of M on the Riemann sphere (one or two values).

    Roots of c z^2 + (d - a) z - b = 0, computed without cancellation.
    """
    a, b, c, d = M.a, M.b, M.c, M.d
    if c == 0:
        if a == d:
            return (INF,)
        return (INF, b / (d - a))
    lin = d - a
    # equals tr^2 - 4 when det = 1, without the cancellation near tr = +-2
    disc = cmath.sqrt(lin * lin + 4 * b * c)
    if abs(lin - disc) > abs(lin + disc):
        disc = -disc
    q = -(lin + disc) / 2
    if q == 0:
        return (0j,)
    if disc == 0:
        return (q / c,)
    return (q / c, -b / q)
