"""Explicit two-generator families and their closed-form Jorgensen numbers.

Four families are provided:

* ``SST(a)``, a >= 1: the singular-solid-torus pair (A_a, B), with
  J = (3a^2 - 1)^2 / 4a^2 for 1 <= a <= (sqrt 7 + 2)/3.
* ``Kissing(k)``, k > 0: kissing Schottky groups, J = 4(k+1)^2/(k^2+1).
* ``Theta(theta)``, 0 < theta <= pi/4: Fuchsian Schottky groups,
  J = 4 cos^2 theta / sin^4 theta.
* ``Maskit(mu)``: Maskit-slice normalization, J = 4.

``realize(r)`` picks a family and parameter whose Jorgensen number is r.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError
from .mobius import UnitMatrix, commutator, jorgensen_pair, line_matrix

A0 = (math.sqrt(7) + 2) / 3


@dataclass(frozen=True)
class GeneratorPair:
    A: UnitMatrix
    B: UnitMatrix
    label: str = ""

    def jorgensen(self) -> float:
        return jorgensen_pair(self.A, self.B)

    def __iter__(self):
        return iter((self.A, self.B))


@dataclass(frozen=True)
class SST:
    a: float

    def __post_init__(self):
        if not self.a >= 1:
            raise DomainError(f"SST family needs a >= 1, got {self.a}")

    tag = "sst"

    def pair(self) -> GeneratorPair:
        return sst_pair(self.a)

    def jorgensen(self) -> float:
        return sst_jorgensen(self.a)


@dataclass(frozen=True)
class Kissing:
    k: float

    def __post_init__(self):
        if not self.k > 0:
            raise DomainError(f"kissing family needs k > 0, got {self.k}")

    tag = "kissing"

    def pair(self) -> GeneratorPair:
        return kissing_pair(self.k)

    def jorgensen(self) -> float:
        return kissing_jorgensen(self.k)


@dataclass(frozen=True)
class Theta:
    theta: float

    def __post_init__(self):
        if not 0 < self.theta <= math.pi / 4 + 1e-15:
            raise DomainError(f"theta family needs 0 < theta <= pi/4, got {self.theta}")

    tag = "theta"

    def pair(self) -> GeneratorPair:
        return theta_pair(self.theta)

    def jorgensen(self) -> float:
        return theta_jorgensen(self.theta)


@dataclass(frozen=True)
class Maskit:
    mu: complex

    tag = "maskit"

    def pair(self) -> GeneratorPair:
        return maskit_pair(self.mu)

    def jorgensen(self) -> float:
        return 4.0


FamilyParams = Union[SST, Kissing, Theta, Maskit]


def sst_matrices(a: complex) -> tuple[UnitMatrix, UnitMatrix]:
    """(A_a, B) for any nonzero complex a; no range check."""
    A = UnitMatrix(-3 * a / 2, 0.5, -0.5, -1 / (2 * a))
    B = UnitMatrix(1j, 0, 0, -1j)
    return A, B


def sst_pair(a: float) -> GeneratorPair:
    if not a >= 1:
        raise DomainError(f"SST family needs a >= 1, got {a}")
    A, B = sst_matrices(a)
    return GeneratorPair(A, B, f"sst(a={a})")


def sst_jorgensen(a: float) -> float:
    if not a >= 1:
        raise DomainError(f"SST family needs a >= 1, got {a}")
    return (3 * a * a - 1) ** 2 / (4 * a * a)


def a_to_x(a: complex) -> complex:
    """x = -tr(A_a^2) = -9a^2/4 - 1/(4a^2) + 1/2."""
    return -9 * a * a / 4 - 1 / (4 * a * a) + 0.5


def x_to_a(x: complex, tol: float = 1e-10) -> complex:
    """Inverse of ``a_to_x`` on the branch with |a| >= 1/sqrt(3).

    With u = a^2 the relation is 9u^2 + (4x - 2)u + 1 = 0; the root of
    larger modulus is taken and a is its principal square root (the sign
    of a only flips A_a, which is invisible in PSL).  Real x <= -2 gives
    real a >= 1.
    """
    x = complex(x)
    disc = cmath.sqrt((4 * x - 2) ** 2 - 36)
    u1 = (2 - 4 * x + disc) / 18
    u2 = (2 - 4 * x - disc) / 18
    u = u1 if abs(u1) >= abs(u2) else u2
    a = cmath.sqrt(u)
    if abs(a_to_x(a) - x) > tol * max(1.0, abs(x)):
        raise DomainError(f"a_to_x inversion failed for x={x}")
    if abs(a.imag) <= 1e-14 * abs(a) and a.real > 0:
        return complex(a.real, 0.0)
    return a


def kissing_pair(k: float) -> GeneratorPair:
    if not k > 0:
        raise DomainError(f"kissing family needs k > 0, got {k}")
    y = math.sqrt(2 / (k + 1 / k))
    x = math.sqrt(y * y + 1)
    A = UnitMatrix(x, 1j * k * y, y / (1j * k), x)
    B = UnitMatrix(x, y, y, x)
    return GeneratorPair(A, B, f"kissing(k={k})")


def kissing_jorgensen(k: float) -> float:
    if not k > 0:
        raise DomainError(f"kissing family needs k > 0, got {k}")
    return 4 * (k + 1) ** 2 / (k * k + 1)


def _check_theta(theta: float):
    if not 0 < theta <= math.pi / 4 + 1e-15:
        raise DomainError(f"theta family needs 0 < theta <= pi/4, got {theta}")


def theta_pair(theta: float) -> GeneratorPair:
    _check_theta(theta)
    s, c = math.sin(theta), math.cos(theta)
    A = UnitMatrix(1 / s, 1j * c / s, -1j * c / s, 1 / s)
    B = UnitMatrix(1 / s, c / s, c / s, 1 / s)
    return GeneratorPair(A, B, f"theta(theta={theta})")


def theta_jorgensen(theta: float) -> float:
    _check_theta(theta)
    s, c = math.sin(theta), math.cos(theta)
    return 4 * c * c / s ** 4


def maskit_pair(mu: complex) -> GeneratorPair:
    A = UnitMatrix(1, 2, 0, 1)
    B = UnitMatrix(-1j * mu, -1j, -1j, 0)
    return GeneratorPair(A, B, f"maskit(mu={mu})")


def realize(r: float) -> FamilyParams:
    """Family member with Jorgensen number exactly r.

    SST on [1, 4], kissing on (4, 8), theta on [8, inf).  At r = 8 the
    kissing group with k = 1 and the theta group with theta = pi/4 are
    the same representation; theta is returned.
    """
    if not r >= 1:
        raise DomainError(f"no non-elementary Kleinian group has J = {r} < 1")
    if r <= 4:
        return SST((math.sqrt(r) + math.sqrt(r + 3)) / 3)
    if r < 8:
        return Kissing((4 + math.sqrt(16 - (4 - r) ** 2)) / (r - 4))
    sin2 = 2 * (math.sqrt(1 + r) - 1) / r
    return Theta(math.asin(math.sqrt(sin2)))


def verify_sst_relations(a: float, tol: float = 1e-8, B: UnitMatrix | None = None) -> bool:
    """Check the defining relations of G_a numerically, up to sign.

    (A B A^-1 B^-1 A B)^2 = B^2 = (A B A^-1 B^-1 A)^2 = id, and
    A B A^-1 B^-1 A B equals the half-turn about [1, -1].  ``B`` may be
    overridden to test a perturbed pair.
    """
    if not a >= 1:
        raise DomainError(f"SST family needs a >= 1, got {a}")
    A, B0 = sst_matrices(a)
    if B is None:
        B = B0
    I = UnitMatrix.identity()
    Ai, Bi = A.inverse(), B.inverse()
    w1 = A @ B @ Ai @ Bi @ A @ B
    w2 = A @ B @ Ai @ Bi @ A
    Q = line_matrix(1, -1)
    checks = (w1 @ w1, B @ B, w2 @ w2)
    return all(m.close_to(I, tol) for m in checks) and w1.close_to(Q, tol)


def commutator_trace(pair: GeneratorPair) -> complex:
    return commutator(pair.A, pair.B).trace
