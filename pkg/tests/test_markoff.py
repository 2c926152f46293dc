import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jorgensen.families import sst_jorgensen, sst_matrices, x_to_a
from jorgensen.markoff import (INFINITY, ONE, ZERO, BaseTriple, Bowditch, SearchBudget, Slope,
                               abelianization, associated_pair, bowditch_test, diagonal_base,
                               edge_step, farey_path, left_parent, primitive_word, psi,
                               psi_inf, psi_sq_minus4, survey, word_matrix)
from jorgensen.mobius import UnitMatrix

from conftest import np_mat

finite = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
slice_points = st.builds(complex, st.floats(-7, 8), st.floats(-5, 5))


def unit_matrices():
    return st.tuples(finite, finite, finite, finite).filter(
        lambda t: abs(t[0] * t[3] - t[1] * t[2]) > 0.1).map(lambda t: UnitMatrix(*t))


def slopes(max_q):
    out = [ZERO, INFINITY]
    for q in range(1, max_q + 1):
        for p in range(-2 * q, 2 * q + 1):
            if math.gcd(p, q) == 1 and (p, q) != (0, 1):
                out.append(Slope(p, q))
    return out


# reference closed forms of psi^2 - 4 on the diagonal slice
POLYNOMIALS = {
    Slope(0, 1): lambda x: (-x + 2) - 4,
    Slope(1, 3): lambda x: (-x + 1) ** 2 * (x + 1) - 4,
    Slope(3, 8): lambda x: (-x + 2) * (x + 1) * (x ** 3 - x ** 2 - 1) ** 2 - 4,
    Slope(2, 5): lambda x: x ** 4 * (-x + 2) - 4,
    Slope(1, 2): lambda x: (-x + 2) * (x + 1) - 4,
}


class TestSlope:
    def test_normalization(self):
        assert Slope(2, 4) == Slope(1, 2)
        assert Slope(-1, -2) == Slope(1, 2)
        assert Slope(1, -2) == Slope(-1, 2)
        assert Slope(-3, 0) == INFINITY
        with pytest.raises(ValueError):
            Slope(0, 0)

    def test_parse_and_str(self):
        assert Slope.parse("3/8") == Slope(3, 8)
        assert Slope.parse(" -2/5 ") == Slope(-2, 5)
        assert Slope.parse("4") == Slope(4, 1)
        assert str(Slope(6, 16)) == "3/8"

    def test_adjacency(self):
        assert Slope(1, 3).adjacent(Slope(1, 2))
        assert Slope(1, 3).adjacent(Slope(2, 5))
        assert not Slope(1, 3).adjacent(Slope(3, 5))


def test_edge_step_involution():
    assert edge_step(2, 3, 1) == 5
    assert edge_step(2, 3, edge_step(2, 3, 1)) == 1


@given(finite, finite, finite)
def test_edge_step_involution_random(x, y, z):
    assert edge_step(x, y, edge_step(x, y, z)) == pytest.approx(z, abs=1e-12 * (1 + abs(x * y)))


@pytest.mark.parametrize("s, path", [
    (ZERO, ()), (INFINITY, ()), (ONE, ()),
    (Slope(1, 2), ("L",)), (Slope(2, 1), ("R",)),
    (Slope(1, 3), ("L", "L")), (Slope(2, 5), ("L", "L", "R")),
    (Slope(3, 8), ("L", "L", "R", "L")), (Slope(-2, 5), ("L", "L", "R")),
])
def test_farey_path(s, path):
    assert farey_path(s) == path


def _sb_reconstruct(path):
    l, r = (0, 1), (1, 0)
    for t in path:
        m = (l[0] + r[0], l[1] + r[1])
        if t == "L":
            r = m
        else:
            l = m
    return l[0] + r[0], l[1] + r[1]


@pytest.mark.parametrize("s", slopes(10))
def test_farey_path_reaches_slope(s):
    if s in (ZERO, INFINITY):
        return
    assert _sb_reconstruct(farey_path(s)) == (abs(s.p), s.q)


@pytest.mark.parametrize("s, word", [
    (ZERO, "A"), (INFINITY, "B"), (ONE, "AB"), (Slope(1, 2), "AAB"),
    (Slope(1, 3), "AAAB"), (Slope(2, 5), "AAABAAB"), (Slope(3, 8), "AAABAAABAAB"),
    (Slope(-1, 2), "AAb"),
])
def test_primitive_words(s, word):
    assert primitive_word(s) == word


def _cyclic_rotations(w):
    return {w[i:] + w[:i] for i in range(len(w))}


def test_words_agree_with_tabulated_cyclic_forms():
    assert "AAAB" in _cyclic_rotations(primitive_word(Slope(1, 3)))
    assert "AAABAAB" in _cyclic_rotations(primitive_word(Slope(2, 5)))


@pytest.mark.parametrize("s", slopes(20))
def test_abelianization(s):
    assert abelianization(primitive_word(s)) == (s.q, s.p)


def test_left_parent_and_associated_pair():
    assert left_parent(Slope(2, 5)) == Slope(1, 3)
    assert left_parent(Slope(1, 2)) == ZERO
    assert left_parent(ZERO) == INFINITY
    assert left_parent(INFINITY) == ZERO
    assert left_parent(Slope(-3, 8)) == Slope(-1, 3)
    assert associated_pair(Slope(1, 3)) == ("AAAB", "A")
    for s in slopes(9):
        assert s.adjacent(left_parent(s))


@given(unit_matrices(), unit_matrices())
def test_psi_matches_word_traces(A, B):
    # independent oracle: multiply out the primitive word with numpy
    base = BaseTriple.from_matrices(A, B)
    letters = {"A": np_mat(A), "B": np_mat(B)}
    letters["a"] = np.linalg.inv(letters["A"])
    letters["b"] = np.linalg.inv(letters["B"])
    for s in slopes(8):
        m = np.eye(2, dtype=complex)
        for ch in primitive_word(s):
            m = m @ letters[ch]
        want = np.trace(m)
        assert psi(base, s) == pytest.approx(want, rel=1e-6, abs=1e-6 * max(1, abs(want)))


@given(unit_matrices(), unit_matrices())
def test_vertex_relation_on_farey_triangles(A, B):
    # x^2 + y^2 + z^2 - xyz = tr[A, B] + 2 on every complementary triangle
    base = BaseTriple.from_matrices(A, B)
    mu = base.t_a ** 2 + base.t_b ** 2 + base.t_ab ** 2 - base.t_a * base.t_b * base.t_ab
    for l, r in [((0, 1), (1, 1)), ((1, 3), (1, 2)), ((2, 5), (1, 2)), ((1, 1), (1, 0))]:
        m = (l[0] + r[0], l[1] + r[1])
        x, y, z = (psi(base, Slope(*v)) for v in (l, r, m))
        scale = max(1, abs(x), abs(y), abs(z)) ** 3
        assert x * x + y * y + z * z - x * y * z == pytest.approx(mu, abs=1e-8 * scale)


@given(st.tuples(finite, finite, finite))
def test_branch_independence_of_squares(t):
    # flipping the signs of the base traces in a consistent way leaves psi^2 unchanged
    ta, tb, tab = t
    base = BaseTriple(ta, tb, tab)
    flipped = BaseTriple(-ta, tb, -tab)
    for s in slopes(6):
        a, b = psi(base, s), psi(flipped, s)
        assert a * a == pytest.approx(b * b, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("s", list(POLYNOMIALS))
def test_psi_polynomials(s):
    rng = np.random.default_rng(7)
    for _ in range(100):
        x = complex(rng.uniform(-7, 8), rng.uniform(-5, 5))
        want = POLYNOMIALS[s](x)
        assert psi_sq_minus4(x, s) == pytest.approx(want, rel=1e-8, abs=1e-8)


def test_diagonal_slice_matches_sst_group():
    # on the real ray x = -tr(A_a^2) the diagonal traces are those of (A_a, B)
    for a in (1.0, 1.3, 2.0):
        A, B = sst_matrices(a)
        x = -(A @ A).trace
        base = diagonal_base(x)
        for s in slopes(6):
            got = psi(base, s) ** 2
            want = word_matrix(primitive_word(s), A, B).trace ** 2
            assert got == pytest.approx(want, rel=1e-9, abs=1e-9)


def test_diagonal_symmetries():
    x = 0.3 + 1.1j
    for s in slopes(6):
        if s.q == 0:
            continue
        v = psi_sq_minus4(x, s)
        assert psi_sq_minus4(x, Slope(s.p + 2 * s.q, s.q)) == pytest.approx(v, rel=1e-9, abs=1e-9)
        assert psi_sq_minus4(x, Slope(-s.p, s.q)) == pytest.approx(v, rel=1e-9, abs=1e-9)


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(0, 10)
    with pytest.raises(ValueError):
        SearchBudget(10, 10, target=0)


def test_psi_inf_at_endpoint_is_one():
    r = psi_inf(complex(0.5, math.sqrt(7) / 2), SearchBudget(25, 5000))
    assert r.value == pytest.approx(1.0, abs=1e-8)
    assert r.argmin == Slope(1, 2)


def test_psi_inf_cli_example_value():
    r = psi_inf(0.5 + 1.3228756j)
    assert r.value == pytest.approx(1.0, abs=1e-6)


def test_psi_inf_never_exceeds_five():
    for x in (7.5, -6.9 + 4.9j, 3 + 3j, 100j):
        assert psi_inf(x, SearchBudget(10, 200)).value <= 5.0


@pytest.mark.parametrize("x", np.linspace(-5, -2, 13))
def test_psi_inf_on_real_segment_equals_sst(x):
    want = sst_jorgensen(x_to_a(x).real)
    r = psi_inf(x, SearchBudget(25, 5000))
    assert r.value == pytest.approx(want, abs=1e-6)
    assert r.converged


@given(slice_points)
def test_budget_monotonicity(x):
    small = psi_inf(x, SearchBudget(8, 100))
    big = psi_inf(x, SearchBudget(12, 400))
    assert big.value <= small.value


@given(slice_points)
def test_psi_inf_is_attained_value(x):
    r = psi_inf(x, SearchBudget(8, 100))
    v = psi(diagonal_base(x), r.argmin)
    assert abs(v * v - 4) + 1 == pytest.approx(r.value, rel=1e-9)


@given(slice_points)
def test_psi_inf_conjugation_symmetry(x):
    a = psi_inf(x, SearchBudget(10, 300)).value
    b = psi_inf(x.conjugate(), SearchBudget(10, 300)).value
    assert a == pytest.approx(b, rel=1e-9)


def test_bowditch_statuses():
    budget = SearchBudget(25, 5000)
    assert bowditch_test(-3.5, budget) is Bowditch.INSIDE
    assert bowditch_test(3 + 3j, budget) is Bowditch.INSIDE
    assert bowditch_test(0.5, budget) is Bowditch.OUTSIDE
    # a pleating endpoint puts a primitive trace at +-2
    assert bowditch_test(complex(0.5, math.sqrt(7) / 2), budget) is Bowditch.OUTSIDE


def test_survey_reports_nodes():
    r = survey(0.5, SearchBudget(10, 50))
    assert r.nodes <= 50
    assert not r.converged
