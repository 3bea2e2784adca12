"""Registry of checkable statements about quasi-coverings and branched coverings.

Each entry tests one statement on one map. Its hypotheses are checked first;
instances that do not meet them are reported as not qualifying, never as
failures. Statements quantified over auxiliary data (subsets, neighborhoods,
subcoverings) are checked exhaustively, or on a seeded random sample when a
``budget`` is given.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

from branchcov.finitetop.covering import Analysis, branching_mask_exhaustive, open_subsets_within
from branchcov.finitetop.space import FinMap, bits, lift_mask, popcount, subsets


class NotQualifying(Exception):
    pass


class _Failure(Exception):
    def __init__(self, params: dict, detail: str):
        self.params = params
        self.detail = detail


@dataclass
class LemmaVerdict:
    lemma: str
    instance: dict
    qualifying: bool
    holds: bool | None
    checked: int = 0
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "instance": self.instance,
            "qualifying": self.qualifying,
            "holds": self.holds,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }


class Context:
    def __init__(self, fmap: FinMap, rng: random.Random | None, budget: int | None, params: dict | None):
        self.fmap = fmap
        self.X = fmap.domain
        self.Y = fmap.codomain
        self.rng = rng or random.Random(0)
        self.budget = budget
        self.params = params
        self.checked = 0
        self._an: Analysis | None = None

    @property
    def an(self) -> Analysis:
        if self._an is None:
            self._an = Analysis(self.fmap)
        return self._an

    def require(self, cond: bool) -> None:
        if not cond:
            raise NotQualifying

    def quasi(self) -> None:
        self.require(self.fmap.is_quasi_covering())

    def branched(self):
        self.quasi()
        res = self.an.branched()
        self.require(res.is_branched)
        return res

    def choose(self, items: Iterable, key: str | None = None) -> list:
        """Parameter values to try: all of them, a sample, or a replayed one."""
        items = list(items)
        if self.params is not None and key is not None and key in self.params:
            want = self.params[key]
            return [it for it in items if _encode(it) == want]
        if self.budget is not None and len(items) > self.budget:
            return self.rng.sample(items, self.budget)
        return items

    def check(self, cond: bool, params: dict, detail: str) -> None:
        self.checked += 1
        if not cond:
            raise _Failure({k: _encode(v) for k, v in params.items()}, detail)


def _encode(v):
    if isinstance(v, tuple):
        return [_encode(x) for x in v]
    return v


Check = Callable[[Context], None]
REGISTRY: dict[str, tuple[str, Check]] = {}


def lemma(name: str, summary: str):
    def deco(fn: Check) -> Check:
        REGISTRY[name] = (summary, fn)
        return fn

    return deco


def check_lemma(
    name: str,
    fmap: FinMap,
    rng: random.Random | None = None,
    budget: int | None = None,
    params: dict | None = None,
) -> LemmaVerdict:
    if name not in REGISTRY:
        raise KeyError(f"unknown lemma id {name!r}")
    ctx = Context(fmap, rng, budget, params)
    inst = fmap.to_json()
    try:
        REGISTRY[name][1](ctx)
    except NotQualifying:
        return LemmaVerdict(name, inst, False, None, ctx.checked)
    except _Failure as fail:
        cex = {"lemma": name, "instance": inst, "params": fail.params, "detail": fail.detail}
        return LemmaVerdict(name, inst, True, False, ctx.checked, cex)
    return LemmaVerdict(name, inst, True, True, ctx.checked)


def replay(counterexample: dict) -> LemmaVerdict:
    """Re-run a recorded counterexample on exactly its parameters."""
    fmap = FinMap.from_json(counterexample["instance"])
    return check_lemma(counterexample["lemma"], fmap, params=counterexample["params"])


def lemma_ids() -> list[str]:
    return list(REGISTRY)


# ---------------------------------------------------------------------------
# helpers


def _restricted(fmap: FinMap, T: int, Z: int):
    g, xidx, yidx = fmap.restrict(T, Z)
    return g, xidx, yidx


def _fiber(fmap: FinMap, y: int) -> list[int]:
    return list(bits(fmap.fibers[y]))


def _disjoint(masks: Sequence[int]) -> bool:
    acc = 0
    for m in masks:
        if acc & m:
            return False
        acc |= m
    return True


def _union(masks: Iterable[int]) -> int:
    acc = 0
    for m in masks:
        acc |= m
    return acc


def _nonempty_subsets(full: int) -> list[int]:
    return [s for s in subsets(full) if s]


# ---------------------------------------------------------------------------
# general topology


@lemma("trivial", "image of A meet a full preimage; restrictions stay open/closed")
def _trivial(ctx: Context) -> None:
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    ctx.require(f.is_surjective())
    for A, Z in ctx.choose(product(range(1 << X.n), range(1 << Y.n)), "A,Z"):
        T = f.preimage(Z)
        ctx.check(f.image(A & T) == f.image(A) & f.image(T), {"A,Z": (A, Z)}, "f(A & T) != f(A) & f(T)")
    is_open, is_closed = f.is_open_map(), f.is_closed_map()
    for Z in ctx.choose(range(1, 1 << Y.n), "Z"):
        T = f.preimage(Z)
        for t in bits(T):
            if is_open:
                img = f.image(X.up[t] & T)
                ctx.check(Y.up_closure(img) & Z == img, {"Z": Z}, "restriction not open")
            if is_closed:
                img = f.image(X.down[t] & T)
                ctx.check(Y.down_closure(img) & Z == img, {"Z": Z}, "restriction not closed")


@lemma("opcl", "closures commute with preimages (open maps) and images (closed maps)")
def _opcl(ctx: Context) -> None:
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    ctx.require(f.is_continuous())
    is_open, is_closed = f.is_open_map(), f.is_closed_map()
    ctx.require(is_open or is_closed)
    if is_open:
        for S in ctx.choose(range(1 << Y.n), "S"):
            ctx.check(X.closure(f.preimage(S)) == f.preimage(Y.closure(S)), {"S": S}, "Cl f^-1(S) != f^-1 Cl S")
    if is_closed:
        for A in ctx.choose(range(1 << X.n), "A"):
            ctx.check(f.image(X.closure(A)) == Y.closure(f.image(A)), {"A": A}, "f(Cl A) != Cl f(A)")


@lemma("fqc", "restriction over any subset of the base is a quasi-covering")
def _fqc(ctx: Context) -> None:
    ctx.quasi()
    f = ctx.fmap
    for Z in ctx.choose(_nonempty_subsets(ctx.Y.full), "Z"):
        g, _, _ = _restricted(f, f.preimage(Z), Z)
        ctx.check(g.is_quasi_covering(), {"Z": Z}, "restriction is not a quasi-covering")


# ---------------------------------------------------------------------------
# distinguished and characteristic neighborhoods


def _disjoint_open_choices(ctx: Context, y: int) -> list[tuple[int, ...]]:
    nbhds = [ctx.X.open_neighborhoods(x) for x in _fiber(ctx.fmap, y)]
    total = 1
    for n in nbhds:
        total *= len(n)
    if total > 4096:
        picks = {tuple(ctx.rng.choice(n) for n in nbhds) for _ in range(256)}
        choices = sorted(picks)
    else:
        choices = list(product(*nbhds))
    return [W for W in choices if _disjoint(W)]


@lemma("disting", "V0 formula yields characteristic families for every smaller V")
def _disting(ctx: Context) -> None:
    ctx.quasi()
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    counts = ctx.an.fiber_counts()
    for y in ctx.choose(range(Y.n), "y"):
        fiber = _fiber(f, y)
        r = len(fiber)
        for W in ctx.choose(_disjoint_open_choices(ctx, y), "W"):
            p = {"y": y, "W": W}
            union = _union(W)
            v0 = (Y.full & ~f.image(X.full & ~union))
            for w in W:
                v0 &= f.image(w)
            ctx.check(Y.is_open(v0) and bool(v0 >> y & 1), p, "V0 is not an open neighborhood of y")
            ctx.check(f.preimage(v0) & ~union == 0, p, "f^-1(V0) not inside the union of W")
            for V in open_subsets_within(Y, v0):
                if not V >> y & 1:
                    continue
                U = [w & f.preimage(V) for w in W]
                q = {"y": y, "W": W, "V": V}
                ctx.check(all(u >> x & 1 for u, x in zip(U, fiber)), q, "U_j misses x_j")
                ctx.check(_disjoint(U) and _union(U) == f.preimage(V), q, "f^-1(V) is not the disjoint union")
                ctx.check(all(f.image(u) == V for u in U), q, "f(U_j) != V")
                ctx.check(all(counts[z] >= r for z in bits(V)), q, "a fiber over V is smaller than r")
                ctx.check(ctx.an.is_distinguished(y, V), q, "family search misses a distinguished V")


@lemma("intersection", "a characteristic family can be shrunk inside given neighborhoods")
def _intersection(ctx: Context) -> None:
    ctx.quasi()
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    for y in ctx.choose(range(Y.n), "y"):
        fiber = _fiber(f, y)
        r = len(fiber)
        for V in ctx.choose(ctx.an.distinguished_sets(y), "V"):
            for fam in ctx.choose(ctx.an.families(y, V), "U"):
                nb = [X.open_neighborhoods(x) for x in fiber]
                Ws = [tuple(ctx.rng.choice(n) for n in nb) for _ in range(4)] + [tuple(X.up[x] for x in fiber)]
                for k in range(1, r + 1):
                    for W in ctx.choose(Ws, "W"):
                        p = {"y": y, "V": V, "U": fam, "W": W, "k": k}
                        ok = False
                        for Vt in open_subsets_within(Y, V):
                            if not Vt >> y & 1:
                                continue
                            pre = f.preimage(Vt)
                            Ut = [pre & fam[i] & (W[i] if i < k else X.full) for i in range(r)]
                            if not all(u >> x & 1 for u, x in zip(Ut, fiber)):
                                continue
                            if not (_disjoint(Ut) and _union(Ut) == pre):
                                continue
                            if not all(f.image(u) == Vt for u in Ut):
                                continue
                            if all(
                                f.fiber_size(z, Ut[i]) == f.fiber_size(z, fam[i]) for z in bits(Vt) for i in range(r)
                            ):
                                ok = True
                                break
                        ctx.check(ok, p, "no shrunken distinguished neighborhood")


@lemma("ccs0", "over a connected distinguished V the family is the set of components")
def _ccs0(ctx: Context) -> None:
    ctx.quasi()
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    for y in ctx.choose(range(Y.n), "y"):
        for V in ctx.an.distinguished_sets(y):
            if not Y.is_connected(V):
                continue
            comps = set(X.components(f.preimage(V)))
            for fam in ctx.an.families(y, V):
                ctx.check(set(fam) == comps, {"y": y, "V": V, "U": fam}, "family differs from components")


@lemma("genbranch", "y off R iff fiber cardinality is constant near y")
def _genbranch(ctx: Context) -> None:
    ctx.quasi()
    Y = ctx.Y
    counts = ctx.an.fiber_counts()
    for y in ctx.choose(range(Y.n), "y"):
        constant = any(len({counts[z] for z in bits(W)}) == 1 for W in Y.open_neighborhoods(y))
        off_r = not ctx.an.R >> y & 1
        ctx.check(off_r == constant, {"y": y}, "R membership disagrees with local constancy")


@lemma("max", "maximal fibers lie over regular points")
def _max(ctx: Context) -> None:
    ctx.quasi()
    counts = ctx.an.fiber_counts()
    d = max(counts)
    for y in range(ctx.Y.n):
        if counts[y] == d:
            ctx.check(not ctx.an.R >> y & 1, {"y": y}, "maximal fiber over R")


@lemma("nowhere", "images of closed nowhere dense sets are closed nowhere dense")
def _nowhere(ctx: Context) -> None:
    ctx.quasi()
    ctx.require(ctx.an.dense)
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    cands = [Z for Z in range(1 << X.n) if X.is_closed(Z) and X.interior(Z) == 0]
    for Z in ctx.choose(cands, "Z"):
        img = f.image(Z)
        ctx.check(Y.is_closed(img) and Y.interior(img) == 0, {"Z": Z}, "image not closed nowhere dense")


# ---------------------------------------------------------------------------
# exceptional neighborhoods and the ramification index


def _members(ctx: Context) -> list[tuple[int, int, int]]:
    """(y, V, U) for characteristic neighborhoods of every fiber point."""
    out = []
    for y in range(ctx.Y.n):
        for V in ctx.an.distinguished_sets(y):
            for fam in ctx.an.families(y, V):
                for U in fam:
                    out.append((y, V, U))
    return sorted(set(out))


@lemma("cuenta0", "an open dense constant-count part makes a neighborhood exceptional")
def _cuenta0(ctx: Context) -> None:
    ctx.quasi()
    f, X = ctx.fmap, ctx.X
    for y, V, U in ctx.choose(_members(ctx), "y,V,U"):
        for G in open_subsets_within(X, U):
            if not G or not X.is_dense(G, U):
                continue
            sizes = {f.fiber_size(z, G) for z in bits(f.image(G))}
            if len(sizes) != 1:
                continue
            d = sizes.pop()
            ctx.check(ctx.an.sheet_count(U, V) == d, {"y,V,U": (y, V, U), "G": G}, "sheet count differs from d")


@lemma("intersection-branched", "disjoint exceptional neighborhoods give arbitrarily small special ones")
def _intersection_branched(ctx: Context) -> None:
    ctx.quasi()
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    for y in ctx.choose(range(Y.n), "y"):
        fiber = _fiber(f, y)
        options = []
        for x in fiber:
            options.append(sorted({U for _, U, _ in ctx.an.exceptional_neighborhoods(x)}))
        if not all(options):
            continue
        found = any(_disjoint(choice) for choice in product(*options))
        if not found:
            continue
        for O in Y.open_neighborhoods(y):
            ok = any(ctx.an.is_special(y, V) for V in open_subsets_within(Y, O) if V >> y & 1)
            ctx.check(ok, {"y": y, "O": O}, "no special neighborhood inside O")


@lemma("indexwell", "the sheet count does not depend on the exceptional neighborhood")
def _indexwell(ctx: Context) -> None:
    res = ctx.branched()
    for x in ctx.choose(range(ctx.X.n), "x"):
        ks = {k for _, _, k in ctx.an.exceptional_neighborhoods(x)}
        ctx.check(ks == {res.b[x]}, {"x": x}, f"sheet counts {sorted(ks)}")


@lemma("cuenta-i", "over a special neighborhood the covering is d_y-branched with d_y = sum of b")
def _cuenta_i(ctx: Context) -> None:
    res = ctx.branched()
    f, Y = ctx.fmap, ctx.Y
    d_at = [sum(res.b[x] for x in bits(f.fibers[z])) for z in range(Y.n)]
    for y in ctx.choose(range(Y.n), "y"):
        specials = [V for V in Y.open_neighborhoods(y) if ctx.an.is_special(y, V)]
        for V in ctx.choose(specials, "V"):
            p = {"y": y, "V": V}
            T = f.preimage(V)
            g, xidx, yidx = _restricted(f, T, V)
            gres = Analysis(g).branched()
            ctx.check(gres.is_branched, p, "restriction over V not branched")
            Rg = lift_mask(gres.R, yidx)
            for w in bits(V & ~Rg):
                ctx.check(popcount(f.fibers[w]) == d_at[y], p, "generic fiber differs from d_y")
            for z in bits(V):
                ctx.check(d_at[z] == d_at[y], p, "d_z != d_y")


@lemma("cuenta-ii", "over a connected base a branched covering is d-branched")
def _cuenta_ii(ctx: Context) -> None:
    ctx.branched()
    ctx.require(ctx.Y.is_connected())
    counts = ctx.an.fiber_counts()
    generic = {counts[y] for y in bits(ctx.Y.full & ~ctx.an.R)}
    ctx.check(len(generic) == 1, {}, f"generic fiber counts {sorted(generic)}")


@lemma("cuenta-iii", "exceptional families fit inside any given neighborhoods")
def _cuenta_iii(ctx: Context) -> None:
    ctx.branched()
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    for y in ctx.choose(range(Y.n), "y"):
        fiber = _fiber(f, y)
        nb = [X.open_neighborhoods(x) for x in fiber]
        total = 1
        for n in nb:
            total *= len(n)
        choices = list(product(*nb)) if total <= 256 else [tuple(ctx.rng.choice(n) for n in nb) for _ in range(64)]
        for W in ctx.choose(choices, "W"):
            ok = False
            for V in Y.open_neighborhoods(y):
                for fam in ctx.an.families(y, V):
                    if all(u & ~w == 0 for u, w in zip(fam, W)) and all(
                        ctx.an.sheet_count(u, V) is not None for u in fam
                    ):
                        ok = True
                        break
                if ok:
                    break
            ctx.check(ok, {"y": y, "W": W}, "no exceptional family inside W")


@lemma("cuenta-iv", "b is the maximal local fiber size and is upper semicontinuous")
def _cuenta_iv(ctx: Context) -> None:
    res = ctx.branched()
    f, X = ctx.fmap, ctx.X
    for x in ctx.choose(range(X.n), "x"):
        for V, U, k in ctx.an.exceptional_neighborhoods(x):
            p = {"x": x, "V": V, "U": U}
            top = max(f.fiber_size(z, U) for z in bits(f.image(U)))
            ctx.check(res.b[x] == top, p, "b(x) is not the maximal fiber size in U")
            ctx.check(all(res.b[x2] <= res.b[x] for x2 in bits(U)), p, "b grows inside U")
    for e in range(1, max(res.b.values()) + 1):
        level = sum(1 << x for x, k in res.b.items() if k <= e)
        ctx.check(X.is_open(level), {"e": e}, "{b <= e} is not open")


@lemma("cuenta-v", "b(x) = 1 exactly off the branching locus")
def _cuenta_v(ctx: Context) -> None:
    res = ctx.branched()
    for x in range(ctx.X.n):
        ctx.check((res.b[x] == 1) == (not res.B >> x & 1), {"x": x}, "b = 1 disagrees with B")


# ---------------------------------------------------------------------------
# restriction laws


@lemma("restr", "restriction over W <= Z <= Cl(W) keeps B, R and X_reg")
def _restr(ctx: Context) -> None:
    res = ctx.branched()
    f, Y = ctx.fmap, ctx.Y
    pairs = []
    for W in Y.opens():
        if not W:
            continue
        cl = Y.closure(W)
        for extra in subsets(cl & ~W):
            pairs.append((W, W | extra))
    for W, Z in ctx.choose(pairs, "W,Z"):
        p = {"W,Z": (W, Z)}
        T = f.preimage(Z)
        g, xidx, yidx = _restricted(f, T, Z)
        gres = Analysis(g).branched()
        ctx.check(gres.is_branched, p, "restriction not branched")
        ctx.check(lift_mask(gres.B, xidx) == res.B & T, p, "B_T != B & T")
        ctx.check(lift_mask(gres.Xreg, xidx) == res.Xreg & T, p, "T_reg != X_reg & T")
        ctx.check(lift_mask(gres.R, yidx) == res.R & Z, p, "R_T != R & Z")


@lemma("rcc", "branched iff branched over every base component")
def _rcc(ctx: Context) -> None:
    f, Y = ctx.fmap, ctx.Y
    ctx.require(f.is_continuous())
    whole = Analysis(f).branched().is_branched
    parts = True
    for comp in Y.components():
        g, _, _ = _restricted(f, f.preimage(comp), comp)
        if g.domain.n == 0:
            parts = False
            break
        gres = Analysis(g).branched()
        if not gres.is_branched or gres.degree is None:
            parts = False
            break
    ctx.check(whole == parts, {}, "global verdict differs from componentwise verdicts")


@lemma("opcl2", "restriction to an open and closed subset stays branched")
def _opcl2(ctx: Context) -> None:
    res = ctx.branched()
    f, X = ctx.fmap, ctx.X
    comps = X.components()
    choices = [sum(c for i, c in enumerate(comps) if sel >> i & 1) for sel in range(1, 1 << len(comps))]
    for T in ctx.choose(choices, "T"):
        p = {"T": T}
        Z = f.image(T)
        g, xidx, yidx = _restricted(f, T, Z)
        gres = Analysis(g).branched()
        ctx.check(gres.is_branched, p, "restriction not branched")
        ctx.check(lift_mask(gres.B, xidx) == res.B & T, p, "B_T != B & T")
        ctx.check(lift_mask(gres.R, yidx) & ~(res.R & Z) == 0, p, "R_T not inside R & Z")
        ctx.check(res.Xreg & T & ~lift_mask(gres.Xreg, xidx) == 0, p, "X_reg & T not inside T_reg")


@lemma("sc", "connected regular part of distinguished neighborhoods forces branching")
def _sc(ctx: Context) -> None:
    ctx.quasi()
    Y = ctx.Y
    regular = Y.full & ~ctx.an.R
    for y in range(Y.n):
        ctx.require(any(Y.is_connected(V & regular) for V in ctx.an.distinguished_sets(y)))
    ctx.check(ctx.an.branched().is_branched, {}, "hypotheses hold but the map is not branched")


# ---------------------------------------------------------------------------
# collapsing set


@lemma("collapse-closed", "the collapsing set is closed")
def _collapse_closed(ctx: Context) -> None:
    ctx.quasi()
    ctx.check(ctx.X.is_closed(ctx.an.C), {}, "collapsing set not closed")


@lemma("collapse-index", "for a d-branched covering C = {b = d}")
def _collapse_index(ctx: Context) -> None:
    res = ctx.branched()
    d = res.degree
    ctx.require(d is not None)
    want = sum(1 << x for x, k in res.b.items() if k == d)
    ctx.check(res.C == want, {}, "collapsing set differs from {b = d}")


@lemma("colapseinB", "collapse points of a d-branched subcovering (d > 1) are branch points")
def _colapse_in_b(ctx: Context) -> None:
    ctx.quasi()
    f = ctx.fmap
    for C in ctx.choose(_nonempty_subsets(ctx.X.full), "C"):
        D = f.image(C)
        g, xidx, _ = _restricted(f, C, D)
        if not g.is_quasi_covering():
            continue
        gres = Analysis(g).branched()
        if not gres.is_branched or gres.degree is None or gres.degree <= 1:
            continue
        ctx.check(lift_mask(gres.C, xidx) & ~ctx.an.B == 0, {"C": C}, "collapse point off B")


@lemma("semiquasi", "between Hausdorff spaces open closed surjections are quasi-coverings")
def _semiquasi(ctx: Context) -> None:
    f, X, Y = ctx.fmap, ctx.X, ctx.Y
    # a finite Hausdorff space is discrete
    ctx.require(all(u == 1 << x for x, u in enumerate(X.up)) and all(u == 1 << y for y, u in enumerate(Y.up)))
    ctx.require(f.is_surjective() and f.is_open_map() and f.is_closed_map())
    ctx.check(f.is_quasi_covering(), {}, "not a quasi-covering")
    for y in range(Y.n):
        for O in Y.open_neighborhoods(y):
            ok = any(ctx.an.is_distinguished(y, V) for V in open_subsets_within(Y, O) if V >> y & 1)
            ctx.check(ok, {"y": y, "O": O}, "no distinguished neighborhood inside O")


@lemma("ss", "branch points are exactly where f is non-injective on every neighborhood")
def _ss(ctx: Context) -> None:
    ctx.quasi()
    f, X = ctx.fmap, ctx.X
    counts = ctx.an.fiber_counts()
    ctx.check(max(counts) <= X.n, {}, "fiber larger than the space")
    noninj = 0
    for x in range(X.n):
        if all(popcount(f.image(U)) < popcount(U) for U in X.open_neighborhoods(x)):
            noninj |= 1 << x
    ctx.check(noninj == ctx.an.B, {}, "non-injectivity test disagrees with B")
    ctx.check(branching_mask_exhaustive(f) == ctx.an.B, {}, "local homeomorphism search disagrees with B")


@lemma("ramification-formula", "b(x) >= k iff every neighborhood of x has k points in one fiber")
def _ramification_formula(ctx: Context) -> None:
    res = ctx.branched()
    f, X = ctx.fmap, ctx.X
    top = max(ctx.an.fiber_counts())
    for x in range(X.n):
        for k in range(1, top + 1):
            every = all(
                any(f.fiber_size(z, O) >= k for z in bits(f.image(O))) for O in X.open_neighborhoods(x)
            )
            ctx.check(every == (res.b[x] >= k), {"x": x, "k": k}, "formula disagrees with b")


def run_registry(
    fmap: FinMap,
    rng: random.Random | None = None,
    budget: int | None = None,
    ids: Sequence[str] | None = None,
) -> list[LemmaVerdict]:
    """Run the given lemma checks (default: all) on one map, sharing cached analysis."""
    shared = Analysis(fmap) if fmap.is_continuous() else None
    out = []
    for name in ids or REGISTRY:
        ctx = Context(fmap, rng, budget, None)
        ctx._an = shared
        inst = None
        try:
            REGISTRY[name][1](ctx)
        except NotQualifying:
            out.append(LemmaVerdict(name, {}, False, None, ctx.checked))
            continue
        except _Failure as fail:
            inst = fmap.to_json()
            cex = {"lemma": name, "instance": inst, "params": fail.params, "detail": fail.detail}
            out.append(LemmaVerdict(name, inst, True, False, ctx.checked, cex))
            continue
        out.append(LemmaVerdict(name, {}, True, True, ctx.checked))
    return out

