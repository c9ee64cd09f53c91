import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_fundamental, naive_power, sqrt_convergents
from pellregion.core import (
    PellInstance,
    Solution,
    expand_signs,
    first_terms,
    fundamental_solution,
    is_square,
    make_instance,
    solution_stream,
    sqrt_continued_fraction,
    term,
    unit_power,
)
from pellregion.errors import DIsOne, InvalidInstance, NonPositive, PerfectSquare

NONSQUARE_50 = [D for D in range(2, 51) if not is_square(D)]


def fund(D):
    return fundamental_solution(make_instance(D))


class TestMakeInstance:
    def test_valid(self):
        assert make_instance(2) == PellInstance(2)
        assert make_instance(61).D == 61

    @pytest.mark.parametrize("D,exc", [(0, NonPositive), (-3, NonPositive), (1, DIsOne),
                                       (4, PerfectSquare), (49, PerfectSquare), (10**40, PerfectSquare)])
    def test_invalid(self, D, exc):
        with pytest.raises(exc):
            make_instance(D)
        assert issubclass(exc, InvalidInstance)

    def test_rejects_non_int(self):
        with pytest.raises(TypeError):
            make_instance(2.0)


def test_sqrt_continued_fraction_matches_euclid():
    for D in NONSQUARE_50:
        a0, period = sqrt_continued_fraction(D)
        seq = [a0] + period * 3
        conv = sqrt_convergents(D, len(seq))
        # rebuild convergents from the periodic expansion and compare
        p_prev, p, q_prev, q = 0, 1, 1, 0
        for k, a in enumerate(seq[: len(conv)]):
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
            assert (p, q) == conv[k]


@pytest.mark.parametrize("D,expected", [(2, (3, 2)), (3, (2, 1)), (5, (9, 4)), (13, (649, 180)),
                                        (61, (1766319049, 226153980))])
def test_fundamental_fixtures(D, expected):
    f = fund(D)
    assert (f.alpha, f.beta) == expected
    assert f.is_solution()


@pytest.mark.parametrize("D", NONSQUARE_50)
def test_fundamental_is_minimal(D):
    assert (fund(D).alpha, fund(D).beta) == brute_fundamental(D)


def test_fundamental_is_cached():
    assert fund(61) is fund(61)


def test_large_D_fundamental_satisfies_pell():
    for D in (109, 181, 991, 10007, 1000003):
        f = fund(D)
        assert f.is_solution() and f.alpha > 1 and f.beta > 0


class TestTerm:
    def test_fixtures(self):
        assert term(fund(2), 0) == (0, 1, 0)
        assert term(fund(2), 2)[1:] == (17, 12)
        assert term(fund(3), 2)[1:] == (7, 4)
        assert term(fund(2), 1)[1:] == (3, 2)

    def test_negative_index(self):
        with pytest.raises(ValueError):
            term(fund(2), -1)

    @pytest.mark.parametrize("D", [2, 3, 5, 6, 7, 13, 61])
    def test_pell_identity_and_monotonicity(self, D):
        terms = first_terms(fund(D), 31)
        for t in terms:
            assert t.u * t.u - D * t.v * t.v == 1
        for prev, nxt in zip(terms, terms[1:]):
            assert nxt.u > prev.u and nxt.v > prev.v

    @pytest.mark.parametrize("D", [2, 3, 7, 61])
    def test_recurrence_matches_binary_power_and_naive(self, D):
        f = fund(D)
        for n in range(31):
            t = term(f, n)
            assert t == unit_power(f, n)
            assert (t.u, t.v) == naive_power(f.alpha, f.beta, D, n)


@given(st.sampled_from(NONSQUARE_50), st.integers(0, 60))
@settings(max_examples=200)
def test_unit_power_property(D, n):
    t = unit_power(fund(D), n)
    assert t.u * t.u - D * t.v * t.v == 1
    assert t == term(fund(D), n)


def test_solution_stream():
    assert [t[1:] for t in first_terms(fund(2), 3)] == [(1, 0), (3, 2), (17, 12)]
    assert [t[1:] for t in first_terms(fund(3), 3)] == [(1, 0), (2, 1), (7, 4)]
    for D in (5, 61):
        assert next(solution_stream(fund(D)))[1:] == (1, 0)


def test_solution_stream_is_independent_per_caller():
    f = fund(2)
    s1, s2 = solution_stream(f), solution_stream(f)
    next(s1), next(s1)
    assert next(s2).n == 0


class TestExpandSigns:
    def test_v_zero_collapses(self):
        assert expand_signs(term(fund(2), 0)) == {Solution(1, 0), Solution(-1, 0)}

    def test_four_signs(self):
        assert expand_signs(term(fund(2), 1)) == {(3, 2), (3, -2), (-3, 2), (-3, -2)}

    def test_all_solve(self):
        pts = expand_signs(term(fund(2), 2))
        assert len(pts) == 4
        assert all(x * x - 2 * y * y == 1 for x, y in pts)
