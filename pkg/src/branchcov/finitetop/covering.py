"""Branching data of continuous maps between finite spaces.

Everything is computed by exhaustive search over open sets, which is cheap at
the sizes handled here (at most ``SIZE_CAP`` points). :class:`Analysis` caches
the expensive pieces for one map so that many checks can share them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from branchcov.finitetop.space import SIZE_CAP, FinMap, bits, mask_of, popcount, subsets

FAMILY_CAP = 4096


def _check_size(fmap: FinMap) -> None:
    if fmap.domain.n > SIZE_CAP or fmap.codomain.n > SIZE_CAP:
        raise ValueError(f"space size above cap ({SIZE_CAP} points)")


def is_injective_on(fmap: FinMap, mask: int) -> bool:
    return popcount(fmap.image(mask)) == popcount(mask)


def is_local_homeomorphism_on(fmap: FinMap, U: int) -> bool:
    """f(U) open and f restricted to U is a homeomorphism onto f(U)."""
    X, Y = fmap.domain, fmap.codomain
    if not is_injective_on(fmap, U):
        return False
    if not Y.is_open(fmap.image(U)):
        return False
    pts = list(bits(U))
    for u in pts:
        for v in pts:
            # a continuous bijection of finite spaces is a homeomorphism iff it reflects the order
            if Y.leq(fmap.f[u], fmap.f[v]) and not X.leq(u, v):
                return False
    return True


def branching_mask(fmap: FinMap, within: int | None = None) -> int:
    """Points x of an open set where f is not injective on the smallest open set U_x.

    For an open map this is exactly the set of points at which f fails to be a
    local homeomorphism. ``within`` restricts to an open subset of the domain.
    """
    X = fmap.domain
    within = X.full if within is None else within
    out = 0
    for x in bits(within):
        if not is_injective_on(fmap, X.up[x] & within):
            out |= 1 << x
    return out


def branching_mask_exhaustive(fmap: FinMap) -> int:
    """Points with no open neighborhood on which f is a homeomorphism onto an open set."""
    _check_size(fmap)
    X = fmap.domain
    out = 0
    for x in range(X.n):
        if not any(is_local_homeomorphism_on(fmap, U) for U in X.open_neighborhoods(x)):
            out |= 1 << x
    return out


def branching_locus(fmap: FinMap, exhaustive: bool = False) -> set[int]:
    _check_size(fmap)
    m = branching_mask_exhaustive(fmap) if exhaustive else branching_mask(fmap)
    return set(bits(m))


@dataclass
class NeighborhoodFamily:
    V: int
    U: tuple[int, ...]
    kind: str
    fiber: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "V": list(bits(self.V)),
            "fiber": list(self.fiber),
            "U": [list(bits(u)) for u in self.U],
        }


def distinguished_v0(fmap: FinMap, y: int, W: Sequence[int]) -> int:
    """V0 = (Y minus f(X minus union W)) intersected with every f(W_j)."""
    X, Y = fmap.domain, fmap.codomain
    union = 0
    for w in W:
        union |= w
    v0 = Y.full & ~fmap.image(X.full & ~union)
    for w in W:
        v0 &= fmap.image(w)
    return v0


def distinguished_neighborhood(fmap: FinMap, y: int, W: Sequence[int], V: int | None = None) -> NeighborhoodFamily:
    """V0 from disjoint open neighborhoods W of the fiber points (ascending order).

    Returns the characteristic family ``U_j = W_j & f^-1(V)`` for the open set
    ``V`` (default ``V0``).
    """
    X, Y = fmap.domain, fmap.codomain
    fiber = tuple(bits(fmap.fibers[y]))
    W = tuple(W)
    if len(W) != len(fiber):
        raise ValueError("need one open set per fiber point")
    for x, w in zip(fiber, W):
        if not w >> x & 1:
            raise ValueError(f"W does not cover fiber point {x}")
        if not X.is_open(w):
            raise ValueError("W members must be open")
    for i in range(len(W)):
        for j in range(i + 1, len(W)):
            if W[i] & W[j]:
                raise ValueError("W members are not pairwise disjoint")
    v0 = distinguished_v0(fmap, y, W)
    if V is None:
        V = v0
    elif V & ~v0 or not Y.is_open(V) or not V >> y & 1:
        raise ValueError("V must be an open neighborhood of y inside V0")
    pre = fmap.preimage(V)
    return NeighborhoodFamily(V, tuple(w & pre for w in W), "distinguished", fiber)


def characteristic_families(fmap: FinMap, y: int, V: int) -> Iterator[tuple[int, ...]]:
    """Families (U_x for x in the fiber of y, ascending) with f^-1(V) = disjoint union and f(U_x) = V.

    Members of such a partition of the open set f^-1(V) into open sets are
    unions of its connected components, so the search assigns components.
    """
    X = fmap.domain
    fiber = list(bits(fmap.fibers[y]))
    r = len(fiber)
    pre = fmap.preimage(V)
    anchored = [0] * r
    free = []
    for comp in X.components(pre):
        owners = [j for j, x in enumerate(fiber) if comp >> x & 1]
        if len(owners) > 1:
            return
        if owners:
            anchored[owners[0]] |= comp
        else:
            free.append(comp)
    if r ** len(free) > FAMILY_CAP:
        raise ValueError("too many characteristic families to enumerate")
    for choice in product(range(r), repeat=len(free)):
        fam = list(anchored)
        for comp, j in zip(free, choice):
            fam[j] |= comp
        if all(fmap.image(u) == V for u in fam):
            yield tuple(fam)


class Analysis:
    """Cached branching data for one map (assumed to be a quasi-covering)."""

    def __init__(self, fmap: FinMap):
        _check_size(fmap)
        self.fmap = fmap
        self.X = fmap.domain
        self.Y = fmap.codomain
        self.B = branching_mask(fmap)
        self.R = fmap.image(self.B)
        self.Xreg = self.X.full & ~fmap.preimage(self.R)
        self.dense = self.X.is_dense(self.Xreg)
        self.C = mask_of([x for x in range(self.X.n) if fmap.fibers[fmap.f[x]] == 1 << x])
        self._families: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        self._sheets: dict[tuple[int, int], int | None] = {}
        self._special: dict[int, tuple[int, tuple[int, ...], tuple[int, ...]] | None] = {}
        self._branched: BranchedResult | None = None

    def fiber_counts(self) -> list[int]:
        return [popcount(m) for m in self.fmap.fibers]

    def families(self, y: int, V: int) -> list[tuple[int, ...]]:
        key = (y, V)
        if key not in self._families:
            self._families[key] = list(characteristic_families(self.fmap, y, V))
        return self._families[key]

    def is_distinguished(self, y: int, V: int) -> bool:
        return bool(V >> y & 1) and self.Y.is_open(V) and bool(self.families(y, V))

    def distinguished_sets(self, y: int) -> list[int]:
        return [V for V in self.Y.open_neighborhoods(y) if self.families(y, V)]

    def sheet_count(self, U: int, V: int) -> int | None:
        """Number of sheets of f on U_reg over V minus R_{f|U}, or None if not constant.

        ``U`` must be a characteristic neighborhood with respect to ``V``;
        a non-None result means U is exceptional.
        """
        key = (U, V)
        if key in self._sheets:
            return self._sheets[key]
        f = self.fmap
        B_U = branching_mask(f, U)
        R_U = f.image(B_U)
        W = V & ~R_U
        U_reg = U & f.preimage(W)
        result = None
        if W:
            counts = {f.fiber_size(w, U_reg) for w in bits(W)}
            if len(counts) == 1:
                k = counts.pop()
                if k >= 1 and branching_mask(f, U_reg) == 0:
                    result = k
        self._sheets[key] = result
        return result

    def exceptional_neighborhoods(self, x: int) -> Iterator[tuple[int, int, int]]:
        """(V, U, sheets) for every exceptional neighborhood U of x."""
        y = self.fmap.f[x]
        fiber = list(bits(self.fmap.fibers[y]))
        j = fiber.index(x)
        seen = set()
        for V in self.Y.open_neighborhoods(y):
            for fam in self.families(y, V):
                U = fam[j]
                if (V, U) in seen:
                    continue
                seen.add((V, U))
                k = self.sheet_count(U, V)
                if k is not None:
                    yield V, U, k

    def special(self, y: int):
        """First special neighborhood of y found: (V, family, sheet counts) or None."""
        if y not in self._special:
            found = None
            for V in self.Y.open_neighborhoods(y):
                for fam in self.families(y, V):
                    counts = [self.sheet_count(U, V) for U in fam]
                    if all(k is not None for k in counts):
                        found = (V, fam, tuple(counts))
                        break
                if found:
                    break
            self._special[y] = found
        return self._special[y]

    def is_special(self, y: int, V: int) -> bool:
        return any(all(self.sheet_count(U, V) is not None for U in fam) for fam in self.families(y, V))

    def branched(self) -> BranchedResult:
        if self._branched is None:
            self._branched = self._compute_branched()
        return self._branched

    def _compute_branched(self) -> BranchedResult:
        f = self.fmap
        witness = f.quasi_witness()
        res = BranchedResult(
            is_quasi=witness is None,
            is_branched=False,
            witness=witness,
            B=self.B,
            R=self.R,
            Xreg=self.Xreg,
            C=self.C,
        )
        if witness is not None:
            return res
        if not self.dense:
            res.witness = {"reason": "regular locus not dense", "missing": list(bits(self.X.full & ~self.X.closure(self.Xreg)))}
            return res
        b: dict[int, int] = {}
        for y in range(self.Y.n):
            sp = self.special(y)
            if sp is None:
                res.witness = {"reason": "no special neighborhood", "point": y}
                return res
            V, fam, counts = sp
            for x, k in zip(bits(f.fibers[y]), counts):
                b[x] = k
        res.is_branched = True
        res.b = b
        res.d = {}
        counts = self.fiber_counts()
        for comp in self.Y.components():
            generic = {counts[y] for y in bits(comp & ~self.R)}
            res.d[comp] = generic.pop() if len(generic) == 1 else None
        return res


@dataclass
class BranchedResult:
    is_quasi: bool
    is_branched: bool
    witness: dict | None
    B: int
    R: int
    Xreg: int
    C: int
    b: dict[int, int] = field(default_factory=dict)
    # codomain component mask -> generic fiber count
    d: dict[int, int | None] = field(default_factory=dict)

    @property
    def degree(self) -> int | None:
        """The common d when every base component has the same generic count."""
        values = set(self.d.values())
        if len(values) == 1:
            return values.pop()
        return None

    def to_json(self) -> dict:
        return {
            "is_quasi": self.is_quasi,
            "is_branched": self.is_branched,
            "witness": self.witness,
            "B": list(bits(self.B)),
            "R": list(bits(self.R)),
            "X_reg": list(bits(self.Xreg)),
            "C": list(bits(self.C)),
            "b": {str(x): k for x, k in sorted(self.b.items())},
            "d": [{"component": list(bits(c)), "d": k} for c, k in sorted(self.d.items())],
        }


def is_quasi_covering(fmap: FinMap) -> tuple[bool, dict | None]:
    w = fmap.quasi_witness()
    return w is None, w


def is_branched_covering(fmap: FinMap) -> BranchedResult:
    return Analysis(fmap).branched()


def open_subsets_within(X, mask: int) -> Iterator[int]:
    """Open sets of the whole space contained in ``mask``."""
    for s in subsets(mask):
        if X.is_open(s):
            yield s
