"""Finite topological spaces as preorders, and continuous maps between them.

A point set ``{0, ..., n-1}`` carries a preorder ``<=``; the open sets are the
up-sets, so the smallest open set containing ``x`` is ``U_x = {y : x <= y}``
and the closure of a set is its down-closure. Subsets are int bitmasks.
"""

from __future__ import annotations

import json
from typing import Iterator, Sequence

SIZE_CAP = 10
ENUM_CAP = 5


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(points: Sequence[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` (including 0 and mask)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class FinSpace:
    __slots__ = ("n", "up", "down", "full", "_opens", "_nbhds")

    def __init__(self, n: int, up: Sequence[int]):
        self.n = n
        self.up = tuple(up)
        self.full = (1 << n) - 1
        if len(self.up) != n:
            raise ValueError("need one up-set per point")
        for x in range(n):
            if not self.up[x] >> x & 1:
                raise ValueError(f"relation not reflexive at {x}")
            for y in bits(self.up[x]):
                if self.up[y] & ~self.up[x]:
                    raise ValueError(f"relation not transitive at {x} <= {y}")
        down = [0] * n
        for x in range(n):
            for y in bits(self.up[x]):
                down[y] |= 1 << x
        self.down = tuple(down)
        self._opens = None
        self._nbhds: dict[int, list[int]] = {}

    # -- constructors and serialization

    @classmethod
    def from_matrix(cls, leq: Sequence[Sequence]) -> FinSpace:
        n = len(leq)
        if any(len(row) != n for row in leq):
            raise ValueError("relation matrix must be square")
        return cls(n, [mask_of([j for j in range(n) if leq[i][j]]) for i in range(n)])

    @classmethod
    def from_relations(cls, n: int, pairs: Sequence[tuple[int, int]]) -> FinSpace:
        """Reflexive-transitive closure of the given ``x <= y`` pairs."""
        up = [1 << x for x in range(n)]
        for x, y in pairs:
            up[x] |= 1 << y
        changed = True
        while changed:
            changed = False
            for x in range(n):
                acc = up[x]
                for y in bits(up[x]):
                    acc |= up[y]
                if acc != up[x]:
                    up[x] = acc
                    changed = True
        return cls(n, up)

    @classmethod
    def discrete(cls, n: int) -> FinSpace:
        return cls(n, [1 << x for x in range(n)])

    @classmethod
    def indiscrete(cls, n: int) -> FinSpace:
        return cls(n, [(1 << n) - 1] * n)

    @classmethod
    def chain(cls, n: int) -> FinSpace:
        return cls(n, [((1 << n) - 1) & ~((1 << x) - 1) for x in range(n)])

    def matrix(self) -> list[list[int]]:
        return [[self.up[i] >> j & 1 for j in range(self.n)] for i in range(self.n)]

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSpace) and self.up == other.up

    def __hash__(self) -> int:
        return hash(self.up)

    def __repr__(self) -> str:
        return f"FinSpace({self.n}, {list(self.up)})"

    # -- order and topology

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def up_closure(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.up[x]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.down[x]
        return out

    closure = down_closure

    def is_open(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def is_closed(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def interior(self, mask: int) -> int:
        return mask_of([x for x in range(self.n) if self.up[x] & ~mask == 0])

    def is_dense(self, mask: int, within: int | None = None) -> bool:
        within = self.full if within is None else within
        return self.down_closure(mask) & within == within

    def opens(self) -> tuple[int, ...]:
        if self._opens is None:
            self._opens = tuple(m for m in range(1 << self.n) if self.is_open(m))
        return self._opens

    def open_neighborhoods(self, x: int) -> list[int]:
        """Open sets containing x, smallest (U_x) first."""
        if x not in self._nbhds:
            ux = self.up[x]
            out = [m for m in self.opens() if m & ux == ux]
            out.sort(key=lambda m: (popcount(m), m))
            self._nbhds[x] = out
        return list(self._nbhds[x])

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of a subset (order-connectivity inside it)."""
        mask = self.full if mask is None else mask
        out = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for x in bits(frontier):
                    grow |= (self.up[x] | self.down[x]) & mask
                frontier = grow & ~comp
                comp |= grow
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self, mask: int | None = None) -> bool:
        mask = self.full if mask is None else mask
        return mask != 0 and len(self.components(mask)) == 1

    def subspace(self, mask: int) -> tuple[FinSpace, list[int]]:
        """Induced preorder on a subset, with new-index -> old-index list."""
        idx = list(bits(mask))
        pos = {p: i for i, p in enumerate(idx)}
        up = [mask_of([pos[q] for q in bits(self.up[p] & mask)]) for p in idx]
        return FinSpace(len(idx), up), idx


class FinMap:
    __slots__ = ("domain", "codomain", "f", "fibers", "_quasi")

    def __init__(self, domain: FinSpace, codomain: FinSpace, f: Sequence[int]):
        self.domain = domain
        self.codomain = codomain
        self.f = tuple(f)
        if len(self.f) != domain.n:
            raise ValueError("map needs one value per domain point")
        if any(not 0 <= v < codomain.n for v in self.f):
            raise ValueError("map value outside the codomain")
        fibers = [0] * codomain.n
        for x, y in enumerate(self.f):
            fibers[y] |= 1 << x
        self.fibers = tuple(fibers)
        self._quasi: tuple[dict | None] | None = None

    def __repr__(self) -> str:
        return f"FinMap({self.domain!r}, {self.codomain!r}, {list(self.f)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.f == other.f
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.f))

    def to_json(self) -> dict:
        return {"domain": self.domain.matrix(), "codomain": self.codomain.matrix(), "map": list(self.f)}

    @classmethod
    def from_json(cls, data) -> FinMap:
        if isinstance(data, str):
            data = json.loads(data)
        for key in ("domain", "codomain", "map"):
            if key not in data:
                raise ValueError(f"instance JSON is missing {key!r}")
        fmap = cls(FinSpace.from_matrix(data["domain"]), FinSpace.from_matrix(data["codomain"]), data["map"])
        if not fmap.is_continuous():
            raise ValueError("map is not order-preserving (not continuous)")
        return fmap

    def image(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= 1 << self.f[x]
        return out

    def preimage(self, mask: int) -> int:
        out = 0
        for y in bits(mask):
            out |= self.fibers[y]
        return out

    def fiber_size(self, y: int, within: int | None = None) -> int:
        fib = self.fibers[y]
        return popcount(fib if within is None else fib & within)

    def is_continuous(self) -> bool:
        X, Y = self.domain, self.codomain
        return all(self.image(X.up[x]) & ~Y.up[self.f[x]] == 0 for x in range(X.n))

    def is_surjective(self) -> bool:
        return self.image(self.domain.full) == self.codomain.full

    def is_open_map(self) -> bool:
        Y = self.codomain
        return all(Y.is_open(self.image(u)) for u in self.domain.up)

    def is_closed_map(self) -> bool:
        Y = self.codomain
        return all(Y.is_closed(self.image(d)) for d in self.domain.down)

    def separation_witness(self) -> tuple[int, int] | None:
        X = self.domain
        for fib in self.fibers:
            pts = list(bits(fib))
            for i, x in enumerate(pts):
                for x2 in pts[i + 1 :]:
                    if X.up[x] & X.up[x2]:
                        return (x, x2)
        return None

    def is_separated(self) -> bool:
        return self.separation_witness() is None

    def quasi_witness(self) -> dict | None:
        """None for a finite quasi-covering, otherwise the first failed property."""
        if self._quasi is None:
            self._quasi = (self._quasi_witness(),)
        return self._quasi[0]

    def _quasi_witness(self) -> dict | None:
        if not self.is_continuous():
            return {"reason": "not continuous"}
        if not self.is_surjective():
            missing = next(bits(self.codomain.full & ~self.image(self.domain.full)))
            return {"reason": "not surjective", "point": missing}
        for x, u in enumerate(self.domain.up):
            if not self.codomain.is_open(self.image(u)):
                return {"reason": "not open", "point": x}
        for x, d in enumerate(self.domain.down):
            if not self.codomain.is_closed(self.image(d)):
                return {"reason": "not closed", "point": x}
        pair = self.separation_witness()
        if pair is not None:
            return {"reason": "not separated", "points": list(pair)}
        return None

    def is_quasi_covering(self) -> bool:
        return self.quasi_witness() is None

    def restrict(self, T: int, Z: int) -> tuple[FinMap, list[int], list[int]]:
        """The map T -> Z between induced subspaces (requires f(T) inside Z)."""
        if self.image(T) & ~Z:
            raise ValueError("image of T leaves Z")
        sx, xidx = self.domain.subspace(T)
        sy, yidx = self.codomain.subspace(Z)
        ypos = {p: i for i, p in enumerate(yidx)}
        return FinMap(sx, sy, [ypos[self.f[p]] for p in xidx]), xidx, yidx


def lift_mask(mask: int, idx: Sequence[int]) -> int:
    """Translate a subspace mask back to the ambient indices."""
    return mask_of([idx[i] for i in bits(mask)])


def lower_mask(mask: int, idx: Sequence[int]) -> int:
    pos = {p: i for i, p in enumerate(idx)}
    return mask_of([pos[p] for p in bits(mask) if p in pos])


# ---------------------------------------------------------------------------
# Enumeration


def _extend(spaces: list[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    """All preorders on k+1 points restricting to each given preorder on k points."""
    out = []
    for up in spaces:
        sp = FinSpace(k, up) if k else None
        down_sets = [m for m in range(1 << k) if sp is None or sp.is_closed(m)]
        up_sets = [m for m in range(1 << k) if sp is None or sp.is_open(m)]
        new = 1 << k
        for D in down_sets:
            # every element of D must lie below every element of U
            below_all = (1 << k) - 1
            for d in bits(D):
                below_all &= up[d]
            for U in up_sets:
                if U & ~below_all:
                    continue
                ups = list(up)
                for d in bits(D):
                    ups[d] |= new
                out.append(tuple(ups) + (U | new,))
    return out


def enumerate_spaces(max_points: int, min_points: int | None = None) -> Iterator[FinSpace]:
    """All labeled preorders with between ``min_points`` and ``max_points`` points.

    ``min_points`` defaults to ``max_points``, so ``enumerate_spaces(3)`` yields
    the 29 preorders on exactly three labeled points.
    """
    if max_points > ENUM_CAP:
        raise ValueError(f"bound exceeded: max_points={max_points} > {ENUM_CAP}")
    if max_points < 0:
        raise ValueError("max_points must be nonnegative")
    min_points = max_points if min_points is None else min_points
    level: list[tuple[int, ...]] = [()]
    for k in range(max_points + 1):
        if k >= min_points and k >= 1:
            for up in level:
                yield FinSpace(k, up)
        if k < max_points:
            level = _extend(level, k)


def continuous_maps(X: FinSpace, Y: FinSpace, surjective: bool = False) -> Iterator[FinMap]:
    """Order-preserving maps X -> Y by backtracking over points in index order."""
    n = X.n
    # constraints between x and earlier points
    below = [[p for p in range(x) if X.leq(p, x)] for x in range(n)]
    above = [[p for p in range(x) if X.leq(x, p)] for x in range(n)]
    values = [0] * n

    def rec(x: int) -> Iterator[tuple[int, ...]]:
        if x == n:
            yield tuple(values)
            return
        for v in range(Y.n):
            if all(Y.leq(values[p], v) for p in below[x]) and all(Y.leq(v, values[p]) for p in above[x]):
                values[x] = v
                yield from rec(x + 1)

    for vals in rec(0):
        if surjective and len(set(vals)) != Y.n:
            continue
        yield FinMap(X, Y, vals)


def quasi_coverings(max_domain: int, max_codomain: int) -> Iterator[FinMap]:
    """Every labeled finite quasi-covering with the given size bounds."""
    codomains = [Y for m in range(1, max_codomain + 1) for Y in enumerate_spaces(m)]
    for nx in range(1, max_domain + 1):
        for X in enumerate_spaces(nx):
            for Y in codomains:
                if Y.n > nx:
                    continue
                for fmap in continuous_maps(X, Y, surjective=True):
                    if fmap.is_quasi_covering():
                        yield fmap
