from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from branchcov.polycore import (
    AlgebraicReal,
    UniPoly,
    as_rat,
    cauchy_bound,
    elementary_symmetric_all,
    elementary_symmetric_eval,
    isolate_real_roots,
    rat_str,
    resultant,
    squarefree_decompose,
    squarefree_part,
    sturm_count,
    sylvester_resultant,
)
from strategies import T, small_rats, sym_rat, to_sympy, unipolys

CUBIC = UniPoly([-2, 5, -4, 1])  # (t - 1)^2 (t - 2)


def test_as_rat_parsing():
    assert as_rat("3/4") == Fraction(3, 4)
    assert as_rat("-0.5") == Fraction(-1, 2)
    assert as_rat("1e-3") == Fraction(1, 1000)
    assert as_rat(7) == 7
    for bad in (0.5, True, "x", None):
        with pytest.raises((TypeError, ValueError)):
            as_rat(bad)


def test_rat_str():
    assert rat_str(Fraction(3, 1)) == "3"
    assert rat_str(Fraction(-3, 2)) == "-3/2"


def test_sturm_count_examples():
    assert sturm_count(UniPoly([1, 0, 1])) == 0
    assert sturm_count(UniPoly([-1, 0, 1])) == 2
    assert sturm_count(CUBIC) == 2


def test_sturm_count_half_open_interval():
    p = UniPoly([-1, 0, 1])
    assert sturm_count(p, -1, 1) == 1  # (-1, 1] holds only 1
    assert sturm_count(p, -2, -1) == 1
    assert sturm_count(p, 0, Fraction(1, 2)) == 0


def test_sturm_count_zero_polynomial():
    with pytest.raises(ValueError, match="undefined root count"):
        sturm_count(UniPoly([]))


def test_squarefree_examples():
    assert squarefree_decompose(CUBIC) == [(UniPoly([-2, 1]), 1), (UniPoly([-1, 1]), 2)]
    assert squarefree_decompose(UniPoly([-1, 0, 1])) == [(UniPoly([-1, 0, 1]), 1)]
    assert squarefree_decompose(UniPoly.from_roots([1, 1, 1, 1])) == [(UniPoly([-1, 1]), 4)]
    with pytest.raises(ValueError):
        squarefree_decompose(UniPoly([]))


def test_isolate_examples():
    roots = isolate_real_roots(UniPoly([-1, 0, 1]))
    assert [(r.exact(), m) for r, m in roots] == [(-1, 1), (1, 1)]
    assert [(r.exact(), m) for r, m in isolate_real_roots(CUBIC)] == [(1, 2), (2, 1)]
    assert len(isolate_real_roots(UniPoly([1, 0, 1]))) == 0
    with pytest.raises(ValueError):
        isolate_real_roots(UniPoly([]))


def test_irrational_root_refinement():
    r2 = isolate_real_roots(UniPoly([-2, 0, 1])).values()[1]
    assert not r2.is_rational
    fine = r2.refined(Fraction(1, 10**15))
    assert fine.width <= Fraction(1, 10**15)
    assert fine.lo**2 < 2 < fine.hi**2
    with pytest.raises(ValueError):
        r2.exact()


def test_algebraic_equality_across_defining_polynomials():
    a = isolate_real_roots(UniPoly([-2, 0, 1])).values()[1]
    # sqrt 2 is also a root of t^4 - 4
    b = [r for r in isolate_real_roots(UniPoly([-4, 0, 0, 0, 1])).values() if r > AlgebraicReal.rational(0)][0]
    assert a == b
    assert a < AlgebraicReal.rational(Fraction(3, 2))
    assert AlgebraicReal.rational(1) < a


def test_algebraic_json_roundtrip():
    for r in isolate_real_roots(UniPoly([-2, 0, 1])).values() + [AlgebraicReal.rational(Fraction(5, 3))]:
        back = AlgebraicReal.from_json(r.to_json())
        assert back == r and (back.lo, back.hi) == (r.lo, r.hi)


def test_resultant_examples():
    assert resultant(UniPoly([-1, 1]), UniPoly([1, 1])) == 2
    assert resultant(UniPoly([-1, 0, 1]), UniPoly([-1, 1])) == 0
    assert resultant(UniPoly([-2, 0, 1]), UniPoly([-2, 0, 1])) == 0
    with pytest.raises(ValueError):
        resultant(UniPoly([]), UniPoly([1, 1]))


def test_cauchy_bound_contains_roots():
    p = UniPoly([6, -5, -2, 1])
    bound = cauchy_bound(p)
    assert all(abs(r.lo) < bound and abs(r.hi) < bound for r in isolate_real_roots(p).values())


def test_elementary_symmetric_examples():
    assert [elementary_symmetric_eval([1, 1, 2], k) for k in (1, 2, 3)] == [4, 5, 2]
    assert [elementary_symmetric_eval([1, -1], k) for k in (1, 2)] == [0, -1]
    assert all(elementary_symmetric_eval([0, 0, 0], k) == 0 for k in (1, 2, 3))
    with pytest.raises(ValueError):
        elementary_symmetric_eval([1, 2], 3)
    with pytest.raises(ValueError):
        elementary_symmetric_eval([1, 2], 0)


# -- properties, with sympy as the independent oracle ------------------------


def sylvester_det_sympy(p: UniPoly, q: UniPoly):
    """Sylvester determinant built here and evaluated by sympy."""
    m, n = p.degree, q.degree
    pc = [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]
    qc = [sympy.Rational(c.numerator, c.denominator) for c in reversed(q.coeffs)]
    rows = [[0] * i + pc + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + qc + [0] * (m - 1 - i) for i in range(m)]
    return sympy.Matrix(rows).det()


@given(unipolys(6))
def test_sturm_count_matches_isolation_and_sympy(p):
    n_distinct = len(set(sympy.real_roots(to_sympy(p)))) if p.degree > 0 else 0
    roots = isolate_real_roots(p)
    assert sturm_count(p) == len(roots) == n_distinct


@given(unipolys(6))
def test_multiplicities_match_sympy(p):
    if p.degree == 0:
        return
    expected: list[list] = []
    for r in sympy.real_roots(to_sympy(p)):
        if expected and expected[-1][0] == r:
            expected[-1][1] += 1
        else:
            expected.append([r, 1])
    got = list(isolate_real_roots(p))
    assert [m for _, m in got] == [m for _, m in expected]
    for (root, _), (sym_root, _) in zip(got, expected):
        if isinstance(sym_root, sympy.Rational):
            assert root.is_rational and root.exact() == sym_rat(sym_root)
        else:
            assert not root.is_rational
            lo, hi = sympy.Rational(root.lo.numerator, root.lo.denominator), sympy.Rational(root.hi.numerator, root.hi.denominator)
            assert lo < sym_root < hi


@given(unipolys(6))
def test_isolating_intervals_disjoint_and_isolating(p):
    sf = squarefree_part(p)
    roots = isolate_real_roots(p).values()
    for r in roots:
        if not r.is_rational:
            assert sturm_count(sf, r.lo, r.hi) == 1
    for r, s in combinations(roots, 2):
        assert r.hi < s.lo


@given(unipolys(5), st.integers(1, 6))
def test_refinement_keeps_root(p, steps):
    for r in isolate_real_roots(p).values():
        cur = r
        for _ in range(steps):
            nxt = cur.refined(cur.width / 2) if cur.width else cur
            assert nxt.width <= cur.width / 2
            assert cur.lo <= nxt.lo and nxt.hi <= cur.hi
            cur = nxt
        if not cur.is_rational:
            assert cur.defining(cur.lo) * cur.defining(cur.hi) < 0
        else:
            assert p(cur.lo) == 0


@given(unipolys(4), unipolys(4), unipolys(4))
def test_resultant_multiplicative(p, q, r):
    assert resultant(p, q * r) == resultant(p, q) * resultant(p, r)


@given(unipolys(5), unipolys(5))
def test_resultant_matches_sylvester_and_sympy(p, q):
    res = resultant(p, q)
    assert res == sylvester_resultant(p, q)
    if p.degree > 0 and q.degree > 0:
        assert res == sym_rat(sylvester_det_sympy(p, q))


@given(unipolys(5))
def test_squarefree_decomposition_reassembles(p):
    if p.degree == 0:
        return
    parts = squarefree_decompose(p)
    prod = UniPoly([p.lc])
    for g, m in parts:
        for _ in range(m):
            prod = prod * g
        assert sturm_count(g) == len(isolate_real_roots(g))
    assert prod == p
    for (g, _), (h, _) in combinations(parts, 2):
        assert resultant(g, h) != 0


@given(st.lists(small_rats, min_size=1, max_size=5))
def test_vieta_expansion(xs):
    n = len(xs)
    e = elementary_symmetric_all(xs)
    vieta = UniPoly([(-1) ** (n - i) * e[n - i] for i in range(n + 1)])
    assert vieta == UniPoly.from_roots(xs)
    assert e[1:] == [elementary_symmetric_eval(xs, k) for k in range(1, n + 1)]
