"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Mapping, Sequence

from branchcov.polycore import UniPoly, as_rat, rat_str


class PolyFunction:
    """Polynomial in ``nvars`` variables stored as ``{exponents: coefficient}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            c = as_rat(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, nvars: int, c) -> PolyFunction:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, index: int) -> PolyFunction:
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> PolyFunction:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = {e: c for e, c in terms.items() if c}
        return obj

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyFunction):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == PolyFunction.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> PolyFunction:
        if isinstance(other, PolyFunction):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return PolyFunction.constant(self.nvars, other)

    def __neg__(self) -> PolyFunction:
        return PolyFunction._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> PolyFunction:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return PolyFunction._raw(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other) -> PolyFunction:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> PolyFunction:
        return self._coerce(other) - self

    def __mul__(self, other) -> PolyFunction:
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return PolyFunction._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PolyFunction:
        if k < 0:
            raise ValueError("negative exponent")
        result = PolyFunction.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        """Evaluate at rationals or intervals (anything with + and *)."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = Fraction(0)
        powers: dict[tuple[int, int], object] = {}
        for exps, c in self.terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = point[i] ** e
                    term = powers[key] * term
            total = term + total
        return total

    def compose(self, subs: Sequence[PolyFunction]) -> PolyFunction:
        """Substitute polynomial ``subs[i]`` for variable i."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitution per variable")
        if not subs:
            return self
        m = subs[0].nvars
        out = PolyFunction(m)
        cache: dict[tuple[int, int], PolyFunction] = {}
        for exps, c in self.terms.items():
            term = PolyFunction.constant(m, c)
            for i, e in enumerate(exps):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = subs[i] ** e
                    term = term * cache[(i, e)]
            out = out + term
        return out

    def partial_evaluate(self, values: Mapping[int, object]) -> PolyFunction:
        """Fix some variables to rationals; remaining variables keep their order."""
        keep = [i for i in range(self.nvars) if i not in values]
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            coef = c
            for i, v in values.items():
                coef *= as_rat(v) ** exps[i]
            e = tuple(exps[i] for i in keep)
            out[e] = out.get(e, Fraction(0)) + coef
        return PolyFunction._raw(len(keep), out)

    def to_unipoly(self) -> UniPoly:
        if self.nvars != 1:
            raise ValueError("not univariate")
        deg = max((e[0] for e in self.terms), default=-1)
        cs = [Fraction(0)] * (deg + 1)
        for (e,), c in self.terms.items():
            cs[e] = c
        return UniPoly(cs)

    def coefficients_in(self, index: int) -> list[PolyFunction]:
        """Coefficients (ascending) w.r.t. variable ``index``, in the other variables."""
        deg = max((e[index] for e in self.terms), default=-1)
        parts: list[dict] = [dict() for _ in range(deg + 1)]
        for exps, c in self.terms.items():
            rest = exps[:index] + exps[index + 1 :]
            parts[exps[index]][rest] = c
        return [PolyFunction._raw(self.nvars - 1, p) for p in parts]

    def __repr__(self) -> str:
        return f"PolyFunction({self.nvars}, {self.to_str()!r})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names else [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[exps]
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{rat_str(mag)}*{mono}"
            else:
                body = rat_str(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# Infix parser: + - * / ^ ** and parentheses over named variables and
# rational literals. Division is only allowed by constants.

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def parse_poly(text: str, nvars: int, prefix: str = "x") -> PolyFunction:
    """Parse e.g. ``"x1^2 - 3/2*x2 + 1"`` into a polynomial in x1..x{nvars}."""
    names = {f"{prefix}{i + 1}": i for i in range(nvars)}
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from exc
    return _build(tree.body, names, nvars, text)


def _build(node, names, nvars, text) -> PolyFunction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return PolyFunction.constant(nvars, node.value)
    if isinstance(node, ast.Name):
        if node.id not in names:
            raise ValueError(f"unknown variable {node.id!r} in {text!r}")
        return PolyFunction.var(nvars, names[node.id])
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _build(node.operand, names, nvars, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _build(node.left, names, nvars, text)
        if isinstance(node.op, ast.Pow):
            exp = node.right
            if isinstance(exp, ast.Constant) and isinstance(exp.value, int) and exp.value >= 0:
                return left ** exp.value
            raise ValueError(f"exponents must be nonnegative integer literals in {text!r}")
        right = _build(node.right, names, nvars, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.total_degree > 0 or right.is_zero():
                raise ValueError(f"division by a non-constant or zero in {text!r}")
            c = right.terms[(0,) * nvars]
            return left * (1 / c)
    raise ValueError(f"unsupported syntax in polynomial {text!r}")


# ---------------------------------------------------------------------------
# Determinants and resultants with polynomial entries


def poly_determinant(rows: Sequence[Sequence[PolyFunction]]) -> PolyFunction:
    """Division-free determinant by Laplace expansion with memoized minors."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    nv = rows[0][0].nvars
    memo: dict[tuple[int, int], PolyFunction] = {}

    def minor(row: int, cols: int) -> PolyFunction:
        # determinant of rows[row:] restricted to the column bitmask ``cols``
        if row == n:
            return PolyFunction.constant(nv, 1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = PolyFunction(nv)
        sign = 1
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = rows[row][c]
            if not entry.is_zero():
                sub = minor(row + 1, cols & ~(1 << c))
                if not sub.is_zero():
                    term = entry * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return minor(0, (1 << n) - 1)


def resultant_in(p: PolyFunction, q: PolyFunction, index: int) -> PolyFunction:
    """Resultant of p and q with respect to variable ``index`` (Sylvester determinant)."""
    pc = p.coefficients_in(index)
    qc = q.coefficients_in(index)
    if not pc or not qc:
        raise ValueError("resultant of a zero polynomial")
    m, n = len(pc) - 1, len(qc) - 1
    nv = p.nvars - 1
    if m == 0:
        return pc[0] ** n
    if n == 0:
        return qc[0] ** m
    zero = PolyFunction(nv)
    size = m + n
    rows = []
    prev = list(reversed(pc))
    qrev = list(reversed(qc))
    for i in range(n):
        rows.append([zero] * i + prev + [zero] * (size - i - len(prev)))
    for i in range(m):
        rows.append([zero] * i + qrev + [zero] * (size - i - len(qrev)))
    return poly_determinant(rows)
