"""The covering of coefficient space by elementary symmetric polynomials.

``sigma_map`` sends ``x in R^n`` to ``(s_1(x), ..., s_n(x))``. Its image is the
set of hyperbolic points: coefficient vectors ``a`` whose polynomial
``t^n - a_1 t^(n-1) + a_2 t^(n-2) - ... + (-1)^n a_n`` has only real roots.
The fiber over ``a`` is the set of distinct orderings of that root multiset and
every fiber point has ramification index ``prod(k_i!)`` for root multiplicities
``k_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from branchcov.intervals import Interval
from branchcov.multipoly import PolyFunction, resultant_in
from branchcov.polycore import (
    AlgebraicReal,
    RootMultiset,
    UniPoly,
    as_rat,
    elementary_symmetric_all,
    isolate_real_roots,
    rat_str,
)

FIBER_DEGREE_CAP = 6
RESULTANT_DEGREE_CAP = 4

EXACT = "exact"
INTERVAL = "interval"
DEFAULT_WIDTH = Fraction(1, 10**12)


class NotHyperbolicError(ValueError):
    """Raised when a fiber-level operation gets a point outside the image of sigma."""


class IrrationalFiberError(ValueError):
    pass


@dataclass(frozen=True)
class SigmaPoint:
    coords: tuple[Fraction, ...]

    def __init__(self, coords: Sequence):
        object.__setattr__(self, "coords", tuple(as_rat(c) for c in coords))
        if not self.coords:
            raise ValueError("a point needs at least one coordinate")

    @property
    def n(self) -> int:
        return len(self.coords)

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coords]


@dataclass(frozen=True)
class HyperbolicCertificate:
    point: SigmaPoint
    roots: RootMultiset
    profile: tuple[int, ...]

    @property
    def index(self) -> int:
        return math.prod(math.factorial(k) for k in self.profile)

    @property
    def fiber_size(self) -> int:
        return math.factorial(self.point.n) // self.index


@dataclass(frozen=True)
class BezFiber:
    point: SigmaPoint
    points: tuple[tuple[AlgebraicReal, ...], ...]
    index: int
    sheet_total: int
    # per point: positions into the ascending distinct-root list
    labels: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def is_rational(self) -> bool:
        return all(v.is_rational for v in self.points[0])

    def exact_points(self) -> list[tuple[Fraction, ...]]:
        return [tuple(v.exact() for v in p) for p in self.points]


def _point(a) -> SigmaPoint:
    return a if isinstance(a, SigmaPoint) else SigmaPoint(a)


def vieta_poly(a) -> UniPoly:
    """t^n + sum_k (-1)^k a_k t^(n-k)."""
    a = _point(a)
    n = a.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    for k, ak in enumerate(a.coords, start=1):
        coeffs[n - k] = ak if k % 2 == 0 else -ak
    return UniPoly(coeffs)


def sigma_map(x: Sequence) -> SigmaPoint:
    values = [as_rat(v) for v in x]
    return SigmaPoint(elementary_symmetric_all(values)[1:])


def is_hyperbolic(a) -> HyperbolicCertificate | None:
    a = _point(a)
    roots = isolate_real_roots(vieta_poly(a))
    if roots.total_multiplicity != a.n:
        return None
    profile = tuple(sorted(roots.multiplicities, reverse=True))
    return HyperbolicCertificate(a, roots, profile)


def _certificate(a) -> HyperbolicCertificate:
    cert = is_hyperbolic(a)
    if cert is None:
        raise NotHyperbolicError("point outside N")
    return cert


def multiset_permutations(counts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct arrangements of the multiset {i repeated counts[i]}, lexicographic."""
    counts = list(counts)
    n = sum(counts)
    out: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(out) == n:
            yield tuple(out)
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                out.append(i)
                yield from rec()
                out.pop()
                counts[i] += 1

    yield from rec()


def fiber(a) -> BezFiber:
    a = _point(a)
    if a.n > FIBER_DEGREE_CAP:
        raise ValueError(f"degree cap exceeded (n={a.n} > {FIBER_DEGREE_CAP})")
    cert = _certificate(a)
    values = cert.roots.values()
    labels = tuple(multiset_permutations(cert.roots.multiplicities))
    points = tuple(tuple(values[i] for i in lab) for lab in labels)
    return BezFiber(a, points, cert.index, math.factorial(a.n), labels)


def ramification_index(a) -> int:
    return _certificate(a).index


def is_branch_point(x: Sequence) -> bool:
    """True when two coordinates coincide (x lies on a diagonal hyperplane)."""
    vals = list(x)
    return any(vals[i] == vals[j] for i in range(len(vals)) for j in range(i + 1, len(vals)))


def is_collapse_point(x: Sequence) -> bool:
    vals = list(x)
    return all(v == vals[0] for v in vals[1:])


def section(a) -> tuple[AlgebraicReal, ...]:
    """Roots in ascending order, each repeated by its multiplicity."""
    cert = _certificate(a)
    return tuple(r for r, m in cert.roots for _ in range(m))


def _check_perm(gamma: Sequence[int], n: int) -> tuple[int, ...]:
    gamma = tuple(gamma)
    if sorted(gamma) != list(range(n)):
        raise ValueError(f"invalid permutation {gamma} of 0..{n - 1}")
    return gamma


def section_gamma(a, gamma: Sequence[int]) -> tuple[AlgebraicReal, ...]:
    """Permuted section: coordinate i is ``section(a)[gamma[i]]`` (0-based one-line form)."""
    a = _point(a)
    gamma = _check_perm(gamma, a.n)
    s = section(a)
    return tuple(s[gamma[i]] for i in range(a.n))


# ---------------------------------------------------------------------------
# Functions pushed down along the covering


def _fiber_values(fib: BezFiber, f: PolyFunction, mode: str, width: Fraction):
    """f evaluated on each distinct fiber point (exact or enclosing intervals)."""
    if f.nvars != fib.point.n:
        raise ValueError(f"function has {f.nvars} variables, point has {fib.point.n}")
    if mode == EXACT:
        if not fib.is_rational:
            raise IrrationalFiberError("irrational roots; use interval mode")
        return [f.evaluate(p) for p in fib.exact_points()]
    if mode != INTERVAL:
        raise ValueError(f"unknown mode {mode!r}")
    distinct = [v.refined(width) for v in _distinct_roots(fib)]
    boxes = [Interval(v.lo, v.hi) for v in distinct]
    return [f.evaluate([boxes[i] for i in lab]) for lab in fib.labels]


def _distinct_roots(fib: BezFiber) -> list[AlgebraicReal]:
    out: list[AlgebraicReal] = [None] * (max(fib.labels[0]) + 1)  # type: ignore[list-item]
    for lab, pt in zip(fib.labels, fib.points):
        for i, v in zip(lab, pt):
            out[i] = v
    return out


def _refine_until(compute, width: Fraction):
    """Shrink root enclosures until every interval produced is narrower than ``width``."""
    root_width = Fraction(1, 2**20)
    while True:
        result = compute(root_width)
        widths = [r.width for r in _flatten(result) if isinstance(r, Interval)]
        if not widths or max(widths) <= width:
            return result
        root_width /= 2**16


def _flatten(obj):
    if isinstance(obj, (list, tuple)):
        for o in obj:
            yield from _flatten(o)
    else:
        yield obj


def mu_eval(a, f: PolyFunction, mode: str = EXACT, width=DEFAULT_WIDTH):
    """Index-weighted mean of f over the fiber: (1/n!) * sum index(x) f(x)."""
    fib = fiber(a)
    width = as_rat(width)

    def compute(rw):
        vals = _fiber_values(fib, f, mode, rw)
        total = sum((v * fib.index for v in vals[1:]), vals[0] * fib.index)
        return total * Fraction(1, fib.sheet_total)

    if mode == EXACT:
        return compute(None)
    return _refine_until(compute, width)


def _weighted_values(fib: BezFiber, vals: list) -> list:
    return [v for v in vals for _ in range(fib.index)]


def symfun_all(a, f: PolyFunction, mode: str = EXACT, width=DEFAULT_WIDTH) -> list:
    """[s_1, ..., s_{n!}] of the f-values over the fiber, each repeated by its index."""
    fib = fiber(a)
    width = as_rat(width)

    def compute(rw):
        vals = _weighted_values(fib, _fiber_values(fib, f, mode, rw))
        return elementary_symmetric_all(vals)[1:]

    if mode == EXACT:
        return compute(None)
    return _refine_until(compute, width)


def symfun_eval(a, f: PolyFunction, k: int, mode: str = EXACT, width=DEFAULT_WIDTH):
    a = _point(a)
    d = math.factorial(a.n)
    if not 1 <= k <= d:
        raise ValueError(f"k={k} outside 1..{d}")
    return symfun_all(a, f, mode, width)[k - 1]


def power_sum_eval(a, f: PolyFunction, k: int, mode: str = EXACT, width=DEFAULT_WIDTH):
    """sum over the fiber of index(x) * f(x)**k."""
    fib = fiber(a)
    width = as_rat(width)

    def compute(rw):
        vals = _fiber_values(fib, f, mode, rw)
        return sum((v**k * fib.index for v in vals[1:]), vals[0] ** k * fib.index)

    if mode == EXACT:
        return compute(None)
    return _refine_until(compute, width)


def integral_poly(a, f: PolyFunction, mode: str = EXACT, width=DEFAULT_WIDTH):
    """t^d + sum_k (-1)^k s_k(f) t^(d-k) with d = n!.

    Exact mode returns a :class:`UniPoly`; interval mode returns the ascending
    list of coefficient enclosures.
    """
    syms = symfun_all(a, f, mode, width)
    d = len(syms)
    coeffs: list = [None] * (d + 1)
    coeffs[d] = Fraction(1)
    for k, s in enumerate(syms, start=1):
        coeffs[d - k] = s if k % 2 == 0 else -s
    if mode == EXACT:
        return UniPoly(coeffs)
    return [c if isinstance(c, Interval) else Interval(c) for c in coeffs]


def _horner(coeffs: Sequence, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def annihilation_residuals(a, f: PolyFunction, mode: str = EXACT, width=DEFAULT_WIDTH) -> list:
    """p(f(x)) for each fiber point x, where p is :func:`integral_poly`.

    Exact mode gives rationals (all zero); interval mode gives enclosures of
    width at most ``width``, refined from the roots up.
    """
    fib = fiber(a)
    width = as_rat(width)
    if mode == EXACT:
        p = integral_poly(fib.point, f, EXACT)
        return [p(v) for v in _fiber_values(fib, f, EXACT, None)]

    def compute(rw):
        vals = _fiber_values(fib, f, INTERVAL, rw)
        weighted = _weighted_values(fib, vals)
        syms = elementary_symmetric_all(weighted)[1:]
        d = len(syms)
        coeffs: list = [Fraction(0)] * (d + 1)
        coeffs[d] = Fraction(1)
        for k, s in enumerate(syms, start=1):
            coeffs[d - k] = s if k % 2 == 0 else -s
        return [_horner(coeffs, v) for v in vals]

    return _refine_until(compute, width)


# ---------------------------------------------------------------------------
# Real parts of complex roots: the eliminant R(u, x)


def coefficient_poly(a) -> UniPoly:
    """z^n + sum_j a_j z^(n-j): the polynomial whose roots' real parts R(a, .) annihilates."""
    a = _point(a)
    n = a.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    for j, aj in enumerate(a.coords, start=1):
        coeffs[n - j] = aj
    return UniPoly(coeffs)


def _complex_power_parts(k: int, nv: int, xi: int, yi: int) -> tuple[PolyFunction, PolyFunction]:
    """Real and imaginary parts of (x + i y)^k as polynomials in nv variables."""
    re: dict = {}
    im: dict = {}
    for m in range(k + 1):
        exps = [0] * nv
        exps[xi] = k - m
        exps[yi] = m
        c = math.comb(k, m)
        if m % 2 == 0:
            re[tuple(exps)] = c * (-1) ** (m // 2)
        else:
            im[tuple(exps)] = c * (-1) ** ((m - 1) // 2)
    return PolyFunction(nv, re), PolyFunction(nv, im)


def split_real_imaginary(n: int) -> tuple[PolyFunction, PolyFunction]:
    """P(u, x + iy) = P1 + i P2 for P(u, z) = z^n + sum u_j z^(n-j).

    Variables are ordered (u_1, ..., u_n, x, y).
    """
    nv = n + 2
    xi, yi = n, n + 1
    p1, p2 = _complex_power_parts(n, nv, xi, yi)
    for j in range(1, n + 1):
        r, i = _complex_power_parts(n - j, nv, xi, yi)
        u = PolyFunction.var(nv, j - 1)
        p1 = p1 + u * r
        p2 = p2 + u * i
    return p1, p2


@lru_cache(maxsize=None)
def real_part_resultant(n: int) -> PolyFunction:
    """R(u, x) = Res_y(P1, P2), a polynomial in (u_1, ..., u_n, x)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > RESULTANT_DEGREE_CAP:
        raise ValueError(f"degree cap exceeded (n={n} > {RESULTANT_DEGREE_CAP})")
    p1, p2 = split_real_imaginary(n)
    return resultant_in(p1, p2, n + 1)


def resultant_residuals(a, roots: Sequence[AlgebraicReal] | None = None, width=DEFAULT_WIDTH) -> list:
    """R(a, zeta) for each real root zeta of :func:`coefficient_poly` (or the given roots).

    Rational roots give exact Fractions; irrational ones give enclosures of
    width at most ``width``.
    """
    a = _point(a)
    width = as_rat(width)
    big_r = real_part_resultant(a.n)
    in_x = big_r.partial_evaluate({i: c for i, c in enumerate(a.coords)}).to_unipoly()
    if roots is None:
        roots = isolate_real_roots(coefficient_poly(a)).values()
    out = []
    for z in roots:
        if z.is_rational:
            out.append(in_x(z.exact()))
            continue
        rw = Fraction(1, 2**20)
        while True:
            enc = in_x(z.interval(rw))
            if enc.width <= width:
                break
            rw /= 2**16
        out.append(enc)
    return out


def signed_coefficients(a) -> SigmaPoint:
    """(-a_1, a_2, -a_3, ...): maps the Vieta convention onto :func:`coefficient_poly`."""
    a = _point(a)
    return SigmaPoint([c if k % 2 == 0 else -c for k, c in enumerate(a.coords, start=1)])


def describe(a) -> dict:
    """JSON-ready summary of the covering over ``a``."""
    a = _point(a)
    cert = is_hyperbolic(a)
    if cert is None:
        roots = isolate_real_roots(vieta_poly(a))
        return {
            "n": a.n,
            "point": a.to_json(),
            "hyperbolic": False,
            "real_roots": [[r.to_json(), m] for r, m in roots],
            "profile": None,
            "fiber": None,
            "index": None,
            "d": None,
            "collapse": None,
            "branch": None,
        }
    fib = fiber(a)
    s = section(a)
    return {
        "n": a.n,
        "point": a.to_json(),
        "hyperbolic": True,
        "real_roots": [[r.to_json(), m] for r, m in cert.roots],
        "profile": list(cert.profile),
        "fiber": [[_coord_json(v) for v in p] for p in fib.points],
        "index": fib.index,
        "d": len(fib),
        "sheets": fib.sheet_total,
        "collapse": is_collapse_point(s),
        "branch": is_branch_point(s),
    }


def _coord_json(v: AlgebraicReal):
    if v.is_rational:
        return rat_str(v.exact())
    return [rat_str(v.lo), rat_str(v.hi)]
