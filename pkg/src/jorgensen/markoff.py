"""Farey-tree combinatorics and Markoff maps.

Slopes ``n/m`` follow the convention that the primitive word of slope
``n/m`` has abelianization ``A^m B^n`` (B-exponent over A-exponent), so
``0/1 -> A``, ``1/0 -> B`` and ``1/1 -> AB``.

Regions of the Farey tessellation are reached from the base triangle
``(0/1, 1/0, 1/1)`` by Stern-Brocot descent.  Negative slopes live in the
mirror image of the positive quadrant: the reflection ``s -> -s`` is a
tessellation automorphism, and the Markoff map pulled back along it is
the Markoff map of the pair ``(A, B^-1)``, whose base triple is
``(tr A, tr B, tr A tr B - tr AB)``.
"""

from __future__ import annotations

import cmath
import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .mobius import UnitMatrix

# growth factor required of an escaping edge, and the number of regions
# with |psi| <= 2 tolerated before a point is declared outside
DEFAULT_GROWTH = 1.01
DEFAULT_TRAPPED = 8
INTERVAL_TOL = 1e-12


@dataclass(frozen=True, order=True)
class Slope:
    """Extended rational ``p/q`` with ``q >= 0`` and ``1/0`` for infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        g = math.gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @classmethod
    def parse(cls, text: str) -> Slope:
        text = text.strip()
        if "/" in text:
            p, q = text.split("/")
            return cls(int(p), int(q))
        return cls(int(text), 1)

    def __str__(self):
        return f"{self.p}/{self.q}"

    @property
    def is_integer(self) -> bool:
        return self.q == 1

    def adjacent(self, other: Slope) -> bool:
        return abs(self.p * other.q - self.q * other.p) == 1


ZERO = Slope(0, 1)
INFINITY = Slope(1, 0)
ONE = Slope(1, 1)


class BaseTriple(NamedTuple):
    """Traces at slopes 0/1, 1/0 and 1/1."""

    t_a: complex
    t_b: complex
    t_ab: complex

    @classmethod
    def from_matrices(cls, A: UnitMatrix, B: UnitMatrix) -> BaseTriple:
        return cls(A.trace, B.trace, (A @ B).trace)

    def mirrored(self) -> BaseTriple:
        return BaseTriple(self.t_a, self.t_b, self.t_a * self.t_b - self.t_ab)


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 40
    max_nodes: int = 20000
    # stop as soon as the bound drops to this value
    target: float = 1.0

    def __post_init__(self):
        if self.max_depth <= 0 or self.max_nodes <= 0 or self.target <= 0:
            raise ValueError("search budget entries must be positive")


def edge_step(x: complex, y: complex, z: complex) -> complex:
    """Value on the far side of edge (X, Y) given the near value z."""
    return x * y - z


def farey_path(s: Slope) -> tuple[str, ...]:
    """Stern-Brocot turns from the base triangle to the triangle where ``|s|``
    first appears as the new vertex.

    ``L`` moves towards 0/1 and ``R`` towards 1/0.  The path is empty for
    the base slopes 0/1, 1/0, 1/1 and, for negative slopes, it is the path
    of the mirror image (the descent then runs in the mirrored quadrant).
    """
    n, m = abs(s.p), s.q
    turns = []
    ln, lm, rn, rm = 0, 1, 1, 0
    if (n, m) in ((0, 1), (1, 0)):
        return ()
    while True:
        mn, mm = ln + rn, lm + rm
        if (mn, mm) == (n, m):
            return tuple(turns)
        if n * mm < mn * m:
            turns.append("L")
            rn, rm = mn, mm
        else:
            turns.append("R")
            ln, lm = mn, mm


def psi(base: BaseTriple, s: Slope) -> complex:
    """Value at ``s`` of the Markoff map extending ``base``."""
    if s.p < 0:
        base = base.mirrored()
    if s == ZERO:
        return base.t_a
    if s == INFINITY:
        return base.t_b
    vl, vr, vm = base.t_a, base.t_b, base.t_ab
    for turn in farey_path(s):
        if turn == "L":
            vl, vr, vm = vl, vm, vl * vm - vr
        else:
            vl, vr, vm = vm, vr, vm * vr - vl
    return vm


def diagonal_base(x: complex) -> BaseTriple:
    """Base traces (tr A, tr B, tr AB) = (sqrt(2 - x), 0, sqrt(x + 1)).

    Principal branches; every exported quantity depends only on squares.
    """
    x = complex(x)
    return BaseTriple(cmath.sqrt(2 - x), 0j, cmath.sqrt(x + 1))


def psi_sq_minus4(x: complex, s: Slope) -> complex:
    v = psi(diagonal_base(x), s)
    return v * v - 4


def primitive_word(s: Slope) -> str:
    """Christoffel word of slope ``s`` over ``A``, ``B`` (``b`` is B^-1).

    Built by concatenating the left and right Farey parents, which gives
    e.g. ``AAABAAB`` for 2/5.
    """
    word = _positive_word(abs(s.p), s.q)
    if s.p < 0:
        word = word.replace("B", "b")
    return word


def _positive_word(n: int, m: int) -> str:
    if (n, m) == (0, 1):
        return "A"
    if (n, m) == (1, 0):
        return "B"
    lw, rw = "A", "B"
    ln, lm, rn, rm = 0, 1, 1, 0
    while True:
        mn, mm = ln + rn, lm + rm
        mw = lw + rw
        if (mn, mm) == (n, m):
            return mw
        if n * mm < mn * m:
            rn, rm, rw = mn, mm, mw
        else:
            ln, lm, lw = mn, mm, mw


def left_parent(s: Slope) -> Slope:
    """Farey neighbour of ``s`` used as its associated primitive.

    For ``n/m`` with ``n, m > 0`` this is the left Stern-Brocot parent;
    0/1 and 1/0 are paired with each other.  Negative slopes mirror.
    """
    n, m = abs(s.p), s.q
    if (n, m) == (0, 1):
        return INFINITY
    if (n, m) == (1, 0):
        return ZERO
    ln, lm, rn, rm = 0, 1, 1, 0
    while True:
        mn, mm = ln + rn, lm + rm
        if (mn, mm) == (n, m):
            break
        if n * mm < mn * m:
            rn, rm = mn, mm
        else:
            ln, lm = mn, mm
    return Slope(-ln if s.p < 0 else ln, lm)


def associated_pair(s: Slope) -> tuple[str, str]:
    return primitive_word(s), primitive_word(left_parent(s))


def abelianization(word: str) -> tuple[int, int]:
    """Exponent sums (of A, of B) of a word over A, a, B, b."""
    m = word.count("A") - word.count("a")
    n = word.count("B") - word.count("b")
    return m, n


def word_matrix(word: str, A: UnitMatrix, B: UnitMatrix) -> UnitMatrix:
    letters = {"A": A, "B": B, "a": A.inverse(), "b": B.inverse()}
    out = UnitMatrix.identity()
    for ch in word:
        out = out @ letters[ch]
    return out


# --- infimum search over the diagonal slice -------------------------------


class Bowditch(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    INCONCLUSIVE = "inconclusive"


class PsiInf(NamedTuple):
    value: float
    argmin: Slope
    converged: bool


@dataclass
class SearchResult:
    value: float
    argmin: Slope
    converged: bool
    status: Bowditch
    nodes: int
    trapped: int


def _chain_bound(p: complex, q: complex, r: complex) -> float:
    """Lower bound for the regions beyond the pair (q, next) around p.

    Around a region with value p the neighbouring values satisfy
    z_{j+1} = p z_j - z_{j-1}, so z_j = alpha lam^j + beta lam^-j with
    lam + 1/lam = p.  Starting from z_0 = r, z_1 = q, the return value
    bounds |z_j| from below for every j >= 2.  Returns -1 when p is on
    [-2, 2] (no geometric growth).
    """
    disc = cmath.sqrt(p * p - 4)
    lam = (p + disc) / 2
    if abs(lam) < 1:
        lam = (p - disc) / 2
    al = abs(lam)
    if al <= 1 + 1e-12:
        return -1.0
    inv = 1 / lam
    alpha = (q - r * inv) / (lam - inv)
    beta = r - alpha
    return abs(alpha) * al * al - abs(beta) / (al * al)


def _escape_bound(p: complex, q: complex, r: complex, growth: float) -> float:
    """Certified lower bound on |psi| over the subtree beyond edge (P, Q).

    ``r`` is the value on the near side.  If both |p|, |q| >= 2 and the
    edge points away from r, every new value in the subtree is at least
    max(|p|, |q|).  If one of them is small but off [-2, 2], the chain
    around it grows geometrically and the bound comes from the closed
    form.  Returns -1 when nothing can be certified.
    """
    ap, aq = abs(p), abs(q)
    if ap >= 2 and aq >= 2:
        big = ap if ap > aq else aq
        return big if big >= growth * abs(r) else -1.0
    if ap < 2 <= aq:
        lb = _chain_bound(p, q, r)
    elif aq < 2 <= ap:
        lb = _chain_bound(q, p, r)
    else:
        return -1.0
    return lb if lb >= 2 else -1.0


def _objective(v: complex) -> float:
    return abs(v * v - 4) + 1


def survey(x: complex, budget: SearchBudget = SearchBudget(), *,
           need_value: bool = True, stop_outside: bool = False,
           growth: float = DEFAULT_GROWTH,
           trapped_limit: int = DEFAULT_TRAPPED) -> SearchResult:
    """Level-order search of the Farey tree for the diagonal-slice point x.

    Because tr B = 0, psi^2 is invariant under s -> s + 2 and s -> -s,
    so only 1/0 and the slopes in [0, 1] are visited.  A subtree is
    dropped once its certified escape bound ``lb`` satisfies
    ``lb^2 - 3 >= best`` (no region in it can improve the infimum); when
    ``need_value`` is false every certified subtree is dropped, which is
    all the membership test needs.

    Nodes are expanded breadth-first so a larger budget always explores
    a superset of the nodes of a smaller one.
    """
    t_a, t_b, t_ab = diagonal_base(x)
    best = _objective(t_b)
    argmin = INFINITY
    trapped = 0
    hit_interval = False
    for slope, v in ((ZERO, t_a), (ONE, t_ab)):
        o = _objective(v)
        if o < best:
            best, argmin = o, slope
        if abs(v) <= 2:
            trapped += 1
        if abs(v.imag) <= INTERVAL_TOL and abs(v.real) <= 2 + INTERVAL_TOL:
            hit_interval = True

    max_depth, max_nodes, target = budget.max_depth, budget.max_nodes, budget.target
    # entries: (ln, lm, rn, rm, vl, vr, vback, depth, bound)
    queue = deque()
    lb = _escape_bound(t_a, t_ab, t_b, growth)
    if lb < 0 or (need_value and lb * lb - 3 < best):
        queue.append((0, 1, 1, 1, t_a, t_ab, t_b, 1, lb))

    nodes = 0
    dropped_open = False     # an uncertified subtree was cut off by the budget
    dropped_value = False    # a subtree still relevant to the infimum was cut off
    reached_target = best <= target
    outside = hit_interval or trapped > trapped_limit
    while queue and not reached_target and not (stop_outside and outside):
        ln, lm, rn, rm, vl, vr, vb, depth, lb = queue.popleft()
        if lb >= 0 and (not need_value or lb * lb - 3 >= best):
            continue
        if nodes >= max_nodes:
            queue.appendleft((ln, lm, rn, rm, vl, vr, vb, depth, lb))
            break
        nodes += 1
        s = vl * vr - vb
        mn, mm = ln + rn, lm + rm
        o = abs(s * s - 4) + 1
        if o < best:
            best, argmin = o, (mn, mm)
            reached_target = best <= target
        if abs(s) <= 2:
            trapped += 1
        if abs(s.imag) <= INTERVAL_TOL and abs(s.real) <= 2 + INTERVAL_TOL:
            hit_interval = True
        if hit_interval or trapped > trapped_limit:
            outside = True
        child_depth = depth + 1
        for child in ((ln, lm, mn, mm, vl, s, vr), (mn, mm, rn, rm, s, vr, vl)):
            cb = _escape_bound(child[4], child[5], child[6], growth)
            if lb > cb:
                cb = lb
            if cb >= 0 and (not need_value or cb * cb - 3 >= best):
                continue
            if child_depth > max_depth:
                if cb < 0:
                    dropped_open = True
                dropped_value = True
                continue
            queue.append(child + (child_depth, cb))

    remaining_open = False
    remaining_value = False
    for entry in queue:
        lb = entry[-1]
        if lb < 0:
            remaining_open = remaining_value = True
            break
        if need_value and lb * lb - 3 < best:
            remaining_value = True

    if isinstance(argmin, tuple):
        argmin = Slope(*argmin)
    converged = reached_target or not (dropped_value or remaining_value)
    if outside:
        status = Bowditch.OUTSIDE
    elif dropped_open or remaining_open:
        status = Bowditch.INCONCLUSIVE
    else:
        status = Bowditch.INSIDE
    return SearchResult(best, argmin, converged, status, nodes, trapped)


def psi_inf(x: complex, budget: SearchBudget = SearchBudget(), *,
            growth: float = DEFAULT_GROWTH) -> PsiInf:
    """Upper bound for inf_s |psi_x(s)^2 - 4| + 1 over all slopes.

    The result never exceeds 5 (slope 1/0 always contributes exactly 5).
    ``converged`` is false when the budget ran out before every
    remaining subtree was certified irrelevant.
    """
    r = survey(x, budget, growth=growth)
    return PsiInf(r.value, r.argmin, r.converged)


def bowditch_test(x: complex, budget: SearchBudget = SearchBudget(), *,
                  growth: float = DEFAULT_GROWTH,
                  trapped_limit: int = DEFAULT_TRAPPED) -> Bowditch:
    """Heuristic membership test for the Bowditch set.

    Outside: some primitive trace lies on [-2, 2], or more than
    ``trapped_limit`` regions carry |psi| <= 2.  Inside: every branch of
    the tree was certified escaping within the budget.
    """
    r = survey(x, budget, need_value=False, stop_outside=True,
               growth=growth, trapped_limit=trapped_limit)
    return r.status
