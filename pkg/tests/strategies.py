"""Shared hypothesis strategies and sympy converters for the tests."""

from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from branchcov.multipoly import PolyFunction
from branchcov.polycore import UniPoly

T = sympy.Symbol("t")

small_rats = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def unipolys(max_degree: int = 6, nonzero: bool = True):
    coeffs = st.lists(small_rats, min_size=1, max_size=max_degree + 1)
    polys = coeffs.map(UniPoly)
    return polys.filter(lambda p: not p.is_zero()) if nonzero else polys


def to_sympy(p: UniPoly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], T)


def sym_rat(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def g_of_sigma(g: PolyFunction, n: int) -> PolyFunction:
    """The polynomial x -> g(sigma(x)) in x1..xn, built from the recurrence e_k(x, x_i) = e_k + x_i e_(k-1)."""
    e = [PolyFunction.constant(n, 1)]
    for i in range(n):
        xi = PolyFunction.var(n, i)
        nxt = [e[0]]
        for k in range(1, i + 2):
            nxt.append((e[k] if k < len(e) else PolyFunction.constant(n, 0)) + xi * e[k - 1])
        e = nxt
    return g.compose(e[1:])
