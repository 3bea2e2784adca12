"""Exact univariate polynomial arithmetic over the rationals.

Coefficients are :class:`fractions.Fraction` values stored in ascending degree
order. Real roots are isolated with Sturm sequences and represented as
:class:`AlgebraicReal` values (squarefree defining polynomial plus an isolating
rational interval).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from itertools import zip_longest
from typing import Iterable, Sequence

Rat = Fraction


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: silently accepting them would defeat exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def rat_str(value: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    value = as_rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class UniPoly:
    """Immutable univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> UniPoly:
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> UniPoly:
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> UniPoly:
        """Monic polynomial with the given roots (repeated as listed)."""
        p = cls([1])
        for r in roots:
            p = p * cls([-as_rat(r), 1])
        return p

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly([{', '.join(rat_str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0 or mag != 1:
                body = rat_str(mag) + ("*" if k else "")
            else:
                body = ""
            if k >= 2:
                body += f"t^{k}"
            elif k == 1:
                body += "t"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> UniPoly:
        return UniPoly._raw([-c for c in self.coeffs])

    def __add__(self, other) -> UniPoly:
        other = _coerce(other)
        return UniPoly._raw(
            [a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=Fraction(0))]
        )

    __radd__ = __add__

    def __sub__(self, other) -> UniPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> UniPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> UniPoly:
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        if k < 0:
            raise ValueError("negative exponent")
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple[UniPoly, UniPoly]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lc = other.coeffs[-1]
        db = len(other.coeffs) - 1
        for k in range(dq, -1, -1):
            c = rem[k + db] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly._raw(quot), UniPoly._raw(rem[:db])

    def __floordiv__(self, other) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> UniPoly:
        return divmod(self, other)[1]

    def exact_div(self, other) -> UniPoly:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        """Horner evaluation; works for Fractions and interval objects."""
        if not self.coeffs:
            return Fraction(0) if not hasattr(x, "lo") else x * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        if not hasattr(acc, "lo") and hasattr(x, "lo"):
            return x * 0 + acc
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly._raw([c / lc for c in self.coeffs])

    def compose_linear(self, scale, shift) -> UniPoly:
        """Return p(scale*t + shift)."""
        lin = UniPoly([shift, scale])
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * lin + UniPoly([c])
        return out

    def sign_at(self, x) -> int:
        """Sign of p at a rational point, or at +-infinity when x is a float inf."""
        if isinstance(x, float) and math.isinf(x):
            if not self.coeffs:
                return 0
            s = 1 if self.lc > 0 else -1
            if x < 0 and self.degree % 2:
                s = -s
            return s
        v = self(x)
        return (v > 0) - (v < 0)


def _coerce(value) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly([value])


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def _require_nonzero(p: UniPoly, what: str) -> None:
    if p.is_zero():
        raise ValueError(f"{what}: zero polynomial")


# ---------------------------------------------------------------------------
# Sturm sequences and root counting


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Signed remainder sequence p, p', -rem(p, p'), ..."""
    _require_nonzero(p, "undefined root count")
    seq = [p, p.derivative()]
    while seq[-1]:
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _variations(seq: Sequence[UniPoly], x) -> int:
    count, prev = 0, 0
    for q in seq:
        s = q.sign_at(x)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def squarefree_part(p: UniPoly) -> UniPoly:
    _require_nonzero(p, "squarefree part")
    if p.degree <= 0:
        return UniPoly([1])
    return (p // poly_gcd(p, p.derivative())).monic()


_NEG_INF = float("-inf")
_POS_INF = float("inf")


def _bound(value, default: float):
    if value is None:
        return default
    if isinstance(value, float) and math.isinf(value):
        return value
    return as_rat(value)


def sturm_count(p: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi].

    ``None`` (or a float infinity) stands for an unbounded end.
    """
    if p.is_zero():
        raise ValueError("undefined root count")
    lo, hi = _bound(lo, _NEG_INF), _bound(hi, _POS_INF)
    if lo >= hi:
        return 0
    seq = sturm_sequence(squarefree_part(p))
    return _variations(seq, lo) - _variations(seq, hi)


def squarefree_decompose(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: pairwise coprime monic squarefree factors with multiplicities.

    The product of ``factor ** mult`` equals ``p`` up to its leading coefficient.
    """
    _require_nonzero(p, "squarefree decomposition")
    p = p.monic()
    if p.degree <= 0:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, k))
        b = b // g
        c = d // g
        d = c - b.derivative()
        k += 1
    return out


def cauchy_bound(p: UniPoly) -> Fraction:
    """Integer bound B with every real root of p in (-B, B)."""
    _require_nonzero(p, "root bound")
    lc = abs(p.lc)
    m = max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))
    return Fraction(math.floor(1 + m) + 1)


# ---------------------------------------------------------------------------
# Algebraic reals


class AlgebraicReal:
    """A real root of a squarefree rational polynomial, pinned by an interval.

    Invariant: ``defining`` has exactly one root in the closed interval
    ``[lo, hi]``; either ``lo == hi`` (a rational root) or neither endpoint is a
    root, so the defining polynomial changes sign across the interval.
    Instances are immutable; :meth:`refined` returns a narrower copy.
    """

    __slots__ = ("defining", "lo", "hi")

    def __init__(self, defining: UniPoly, lo, hi, *, check: bool = True):
        lo, hi = as_rat(lo), as_rat(hi)
        if lo > hi:
            raise ValueError("empty isolating interval")
        self.defining = defining
        self.lo = lo
        self.hi = hi
        if check:
            if lo == hi:
                if defining(lo) != 0:
                    raise ValueError("degenerate interval is not a root")
            else:
                if defining(lo) == 0 or defining(hi) == 0:
                    raise ValueError("interval endpoint is a root")
                if sturm_count(defining, lo, hi) != 1:
                    raise ValueError("interval does not isolate exactly one root")

    @classmethod
    def rational(cls, value) -> AlgebraicReal:
        value = as_rat(value)
        return cls(UniPoly([-value, 1]), value, value, check=False)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid_rational(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def exact(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("algebraic real is not known to be rational")
        return self.lo

    def _bisect(self) -> AlgebraicReal:
        p = self.defining
        mid = (self.lo + self.hi) / 2
        vm = p(mid)
        if vm == 0:
            return AlgebraicReal(p, mid, mid, check=False)
        if (p(self.lo) > 0) != (vm > 0):
            return AlgebraicReal(p, self.lo, mid, check=False)
        return AlgebraicReal(p, mid, self.hi, check=False)

    def refined(self, width) -> AlgebraicReal:
        """Copy whose isolating interval has width at most ``width``."""
        width = as_rat(width)
        if width <= 0:
            raise ValueError("target width must be positive")
        cur = self
        while cur.width > width:
            cur = cur._bisect()
        return cur

    def interval(self, width=None):
        from branchcov.intervals import Interval

        cur = self if width is None else self.refined(width)
        return Interval(cur.lo, cur.hi)

    def __float__(self) -> float:
        return float(self.refined(Fraction(1, 2**60)).lo)

    def _compare(self, other: AlgebraicReal) -> int:
        if self.is_rational and other.is_rational:
            return (self.lo > other.lo) - (self.lo < other.lo)
        if self.hi < other.lo:
            return -1
        if other.hi < self.lo:
            return 1
        if self.is_rational:
            return -other._compare(self)
        g = poly_gcd(self.defining, other.defining)
        a, b = self, other
        if g.degree > 0 and _has_root_in(g, a) and _has_root_in(g, b):
            # both are roots of g: equal iff g has a single root in the hull
            while True:
                lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
                if a.hi < b.lo:
                    return -1
                if b.hi < a.lo:
                    return 1
                if _count_closed(g, lo, hi) == 1:
                    return 0
                a, b = a._shrink(), b._shrink()
        # distinct numbers: refine until the intervals separate
        while True:
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            a, b = a._shrink(), b._shrink()

    def _shrink(self) -> AlgebraicReal:
        return self if self.is_rational else self._bisect()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.rational(other)
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        return self._compare(other) == 0

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.rational(other)
        return self._compare(other) < 0

    def __le__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.rational(other)
        return self._compare(other) <= 0

    def __gt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.rational(other)
        return self._compare(other) > 0

    def __ge__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.rational(other)
        return self._compare(other) >= 0

    __hash__ = None  # equal values may carry different defining polynomials

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicReal({rat_str(self.lo)})"
        return f"AlgebraicReal(root of {self.defining} in [{rat_str(self.lo)}, {rat_str(self.hi)}])"

    def to_json(self):
        if self.is_rational:
            return rat_str(self.lo)
        return {
            "defining": [rat_str(c) for c in self.defining.coeffs],
            "interval": [rat_str(self.lo), rat_str(self.hi)],
        }

    @classmethod
    def from_json(cls, data) -> AlgebraicReal:
        if isinstance(data, str):
            return cls.rational(data)
        return cls(UniPoly(data["defining"]), *data["interval"])


def _count_closed(p: UniPoly, lo: Fraction, hi: Fraction) -> int:
    n = sturm_count(p, lo, hi)
    if p(lo) == 0:
        n += 1
    return n


def _has_root_in(g: UniPoly, a: AlgebraicReal) -> bool:
    if a.is_rational:
        return g(a.lo) == 0
    return sturm_count(g, a.lo, a.hi) >= 1


# ---------------------------------------------------------------------------
# Root isolation


def integer_leading_coefficient(p: UniPoly) -> int:
    """|lc| of the primitive integer polynomial proportional to p."""
    den = reduce(math.lcm, (c.denominator for c in p.coeffs), 1)
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(math.gcd, ints, 0)
    return abs(ints[-1] // g)


def _rationalize(root: AlgebraicReal) -> AlgebraicReal:
    """Replace the interval by the exact value when the root is rational.

    A rational root p/q of an integer polynomial has q dividing the leading
    coefficient L; distinct such fractions are at least 1/L**2 apart, so once
    the interval is narrower than that the only candidate is the best
    approximation of the midpoint with denominator <= L.
    """
    if root.is_rational:
        return root
    p = root.defining
    if p.degree == 1:
        value = -p.coeffs[0] / p.coeffs[1]
        return AlgebraicReal(p, value, value, check=False)
    big = integer_leading_coefficient(p)
    narrow = root.refined(Fraction(1, 2 * big * big))
    if narrow.is_rational:
        return narrow
    cand = narrow.mid_rational().limit_denominator(big)
    if narrow.lo <= cand <= narrow.hi and p(cand) == 0:
        return AlgebraicReal(p, cand, cand, check=False)
    return root


def _isolate_squarefree(p: UniPoly) -> list[AlgebraicReal]:
    """Isolate the real roots of a squarefree polynomial by Sturm bisection."""
    if p.degree <= 0:
        return []
    if p.degree == 1:
        value = -p.coeffs[0] / p.coeffs[1]
        return [AlgebraicReal(p, value, value, check=False)]
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    out: list[AlgebraicReal] = []
    stack = [(-bound, bound, _variations(seq, -bound) - _variations(seq, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_rationalize(_pin_root(p, seq, lo, hi)))
            continue
        mid = (lo + hi) / 2
        vm = _variations(seq, mid)
        left = _variations(seq, lo) - vm
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def _pin_root(p: UniPoly, seq: list[UniPoly], lo: Fraction, hi: Fraction) -> AlgebraicReal:
    """Turn (lo, hi] holding one root into a valid closed isolating interval."""
    if p(hi) == 0:
        return AlgebraicReal(p, hi, hi, check=False)
    # lo may be the (excluded) root of the neighbouring interval
    while p(lo) == 0:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return AlgebraicReal(p, mid, mid, check=False)
        if _variations(seq, mid) - _variations(seq, hi) == 1:
            lo = mid
        else:
            hi = mid
    return AlgebraicReal(p, lo, hi, check=False)


class RootMultiset:
    """Distinct real roots (ascending) paired with multiplicities."""

    __slots__ = ("roots",)

    def __init__(self, roots: Iterable[tuple[AlgebraicReal, int]]):
        self.roots: tuple[tuple[AlgebraicReal, int], ...] = tuple(roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.roots)

    def values(self) -> list[AlgebraicReal]:
        return [r for r, _ in self.roots]

    def __repr__(self) -> str:
        return f"RootMultiset({list(self.roots)!r})"


def isolate_real_roots(p: UniPoly) -> RootMultiset:
    """All real roots of ``p`` with multiplicity, sorted ascending."""
    _require_nonzero(p, "isolate_real_roots")
    found: list[tuple[AlgebraicReal, int]] = []
    for factor, mult in squarefree_decompose(p):
        for root in _isolate_squarefree(factor):
            found.append((root, mult))
    found.sort(key=lambda rm: _SortKey(rm[0]))
    return RootMultiset(_separate(found))


def _separate(found: list[tuple[AlgebraicReal, int]]) -> list[tuple[AlgebraicReal, int]]:
    """Shrink neighbouring isolating intervals (distinct roots) until they are disjoint."""
    out = list(found)
    for i in range(1, len(out)):
        (a, ma), (b, mb) = out[i - 1], out[i]
        while a.hi >= b.lo:
            if a.width >= b.width:
                a = a._bisect()
            else:
                b = b._bisect()
        out[i - 1], out[i] = (a, ma), (b, mb)
    return out


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v: AlgebraicReal):
        self.v = v

    def __lt__(self, other: _SortKey) -> bool:
        return self.v < other.v


# ---------------------------------------------------------------------------
# Resultants


def resultant(p: UniPoly, q: UniPoly) -> Fraction:
    """Res(p, q) via the subresultant polynomial remainder sequence.

    Equals the Sylvester determinant, i.e. ``lc(p)**deg(q) * prod q(alpha)``
    over the roots alpha of p.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    a, b = p, q
    da, db = a.degree, b.degree
    if da == 0:
        return a.lc**db
    if db == 0:
        return b.lc**da
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -s
    g = Fraction(1)
    h = Fraction(1)
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = pseudo_remainder(a, b)
        a = b
        if r.is_zero():
            return Fraction(0)
        b = UniPoly._raw([c / (g * h**delta) for c in r.coeffs])
        g = a.lc
        h = h ** (1 - delta) * g**delta if delta else h
        if b.degree == 0:
            h = h ** (1 - a.degree) * b.lc ** a.degree
            return s * h


def pseudo_remainder(a: UniPoly, b: UniPoly) -> UniPoly:
    """prem(a, b) = remainder of lc(b)**(deg a - deg b + 1) * a divided by b."""
    delta = a.degree - b.degree
    if delta < 0:
        return a
    scaled = UniPoly._raw([c * b.lc ** (delta + 1) for c in a.coeffs])
    return scaled % b


def sylvester_matrix(p: UniPoly, q: UniPoly) -> list[list[Fraction]]:
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - i - len(pc)))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - i - len(qc)))
    return rows


def determinant(rows: list[list[Fraction]]) -> Fraction:
    """Gaussian elimination over the rationals."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = m[r][col] / pv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def sylvester_resultant(p: UniPoly, q: UniPoly) -> Fraction:
    """Resultant as the Sylvester determinant (slow reference route)."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if p.degree == 0:
        return p.lc**q.degree
    if q.degree == 0:
        return q.lc**p.degree
    return determinant(sylvester_matrix(p, q))


# ---------------------------------------------------------------------------
# Elementary symmetric functions


def elementary_symmetric_all(values: Sequence) -> list:
    """[e_0, e_1, ..., e_n] of the given values (e_0 = 1).

    Works for any ring elements supporting + and * (Fractions, intervals).
    """
    e = [Fraction(1)]
    for v in values:
        nxt = e + [Fraction(0)]
        for k in range(len(e), 0, -1):
            nxt[k] = nxt[k] + e[k - 1] * v
        e = nxt
    return e


def elementary_symmetric_eval(x: Sequence, k: int):
    """sigma_k(x_1, ..., x_n) for 1 <= k <= n."""
    n = len(x)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    return elementary_symmetric_all([as_rat(v) if isinstance(v, (int, str)) else v for v in x])[k]


def poly_product(polys: Iterable[UniPoly]) -> UniPoly:
    return reduce(lambda a, b: a * b, polys, UniPoly([1]))
