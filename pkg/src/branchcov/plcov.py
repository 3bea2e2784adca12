"""Piecewise-linear coverings: a finite union of rational segments projected to x.

The total space is a union of graphs ``y = slope*x + intercept`` over closed
subintervals of a base interval ``[a, b]``. Fiber counts are constant between
consecutive critical values, so every topological question reduces to exact
checks at finitely many points. At a point ``p`` of the total space, ``L`` and
``R`` count the distinct segment germs leaving ``p`` to the left and right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from branchcov.polycore import as_rat, rat_str

Point = tuple[Fraction, Fraction]


class PLValidationError(ValueError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("invalid covering: " + "; ".join(problems))


@dataclass(frozen=True, order=True)
class Segment:
    x_lo: Fraction
    x_hi: Fraction
    slope: Fraction
    intercept: Fraction

    @classmethod
    def make(cls, x_lo, x_hi, slope, intercept) -> Segment:
        return cls(as_rat(x_lo), as_rat(x_hi), as_rat(slope), as_rat(intercept))

    @classmethod
    def through(cls, p: Sequence, q: Sequence) -> Segment:
        """Segment joining two points with distinct x-coordinates."""
        (x0, y0), (x1, y1) = (tuple(map(as_rat, p)), tuple(map(as_rat, q)))
        if x0 == x1:
            raise ValueError("vertical segment")
        if x0 > x1:
            x0, y0, x1, y1 = x1, y1, x0, y0
        m = (y1 - y0) / (x1 - x0)
        return cls(x0, x1, m, y0 - m * x0)

    def y_at(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept

    def covers(self, x: Fraction) -> bool:
        return self.x_lo <= x <= self.x_hi

    def contains(self, p: Point) -> bool:
        return self.covers(p[0]) and self.y_at(p[0]) == p[1]

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return (self.x_lo, self.y_at(self.x_lo)), (self.x_hi, self.y_at(self.x_hi))

    def same_line(self, other: Segment) -> bool:
        return self.slope == other.slope and self.intercept == other.intercept

    def clip(self, lo: Fraction, hi: Fraction) -> Segment | None:
        new_lo, new_hi = max(lo, self.x_lo), min(hi, self.x_hi)
        if new_lo >= new_hi:
            return None
        return Segment(new_lo, new_hi, self.slope, self.intercept)

    def to_json(self) -> dict:
        return {
            "x": [rat_str(self.x_lo), rat_str(self.x_hi)],
            "slope": rat_str(self.slope),
            "intercept": rat_str(self.intercept),
        }

    @classmethod
    def from_json(cls, data: dict) -> Segment:
        try:
            lo, hi = data["x"]
            return cls.make(lo, hi, data["slope"], data["intercept"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad segment {data!r}: {exc}") from exc


def intersection(s: Segment, t: Segment) -> Point | None:
    """Common point of two non-parallel segments (None if parallel or disjoint)."""
    if s.slope == t.slope:
        return None
    x = (t.intercept - s.intercept) / (s.slope - t.slope)
    if s.covers(x) and t.covers(x):
        return (x, s.y_at(x))
    return None


def _touch(s: Segment, t: Segment) -> bool:
    if s.slope != t.slope:
        return intersection(s, t) is not None
    if s.intercept != t.intercept:
        return False
    return s.x_lo <= t.x_hi and t.x_lo <= s.x_hi


def point_json(p: Point) -> list[str]:
    return [rat_str(p[0]), rat_str(p[1])]


def point_from_json(data: Sequence) -> Point:
    x, y = data
    return (as_rat(x), as_rat(y))


class PLCovering:
    """Base interval plus a validated list of segments."""

    def __init__(self, base: Sequence, segments: Iterable[Segment]):
        a, b = (as_rat(v) for v in base)
        self.base = (a, b)
        self.segments = tuple(sorted(segments))
        problems = validate(self.base, self.segments)
        if problems:
            raise PLValidationError(problems)

    @property
    def a(self) -> Fraction:
        return self.base[0]

    @property
    def b(self) -> Fraction:
        return self.base[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, PLCovering) and self.base == other.base and self.segments == other.segments

    def __repr__(self) -> str:
        return f"PLCovering(base=[{rat_str(self.a)}, {rat_str(self.b)}], {len(self.segments)} segments)"

    def to_json(self) -> dict:
        return {"base": [rat_str(self.a), rat_str(self.b)], "segments": [s.to_json() for s in self.segments]}

    @classmethod
    def from_json(cls, data) -> PLCovering:
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "base" not in data or "segments" not in data:
            raise ValueError("covering JSON needs 'base' and 'segments'")
        base = data["base"]
        if not isinstance(base, list) or len(base) != 2:
            raise ValueError("'base' must be a pair of rationals")
        return cls(base, [Segment.from_json(s) for s in data["segments"]])


def validate(base: tuple[Fraction, Fraction], segments: Sequence[Segment]) -> list[str]:
    a, b = base
    problems = []
    if not a < b:
        problems.append(f"base [{rat_str(a)}, {rat_str(b)}] is empty or inverted")
    if not segments:
        problems.append("no segments")
    for i, s in enumerate(segments):
        if not s.x_lo < s.x_hi:
            problems.append(f"segment {i} is vertical or degenerate")
        if s.x_lo < a or s.x_hi > b:
            problems.append(f"segment {i} leaves the base interval")
    for i, s in enumerate(segments):
        for j in range(i + 1, len(segments)):
            t = segments[j]
            if s.same_line(t) and max(s.x_lo, t.x_lo) < min(s.x_hi, t.x_hi):
                problems.append(f"segments {i} and {j} overlap collinearly")
    return problems


# ---------------------------------------------------------------------------
# Fibers and local germ counts


def critical_values(cov: PLCovering) -> list[Fraction]:
    """Base endpoints, segment endpoints and pairwise intersection abscissae."""
    xs = {cov.a, cov.b}
    segs = cov.segments
    for s in segs:
        xs.add(s.x_lo)
        xs.add(s.x_hi)
    for i, s in enumerate(segs):
        for t in segs[i + 1 :]:
            p = intersection(s, t)
            if p is not None:
                xs.add(p[0])
    return sorted(xs)


def fiber_at(cov: PLCovering, x0) -> list[Point]:
    x0 = as_rat(x0)
    if not cov.a <= x0 <= cov.b:
        raise ValueError(f"x0={rat_str(x0)} outside the base")
    ys = {s.y_at(x0) for s in cov.segments if s.covers(x0)}
    return [(x0, y) for y in sorted(ys)]


def fiber_count(cov: PLCovering, x0) -> int:
    return len(fiber_at(cov, x0))


def branch_counts(cov: PLCovering, p: Sequence) -> tuple[int, int]:
    """(L, R): distinct germs of the total space at p going left and right."""
    p = (as_rat(p[0]), as_rat(p[1]))
    through = [s for s in cov.segments if s.contains(p)]
    if not through:
        raise ValueError(f"point {point_json(p)} is not on the total space")
    left = {s.slope for s in through if s.x_lo < p[0]}
    right = {s.slope for s in through if s.x_hi > p[0]}
    return len(left), len(right)


def _sample_points(cov: PLCovering) -> list[tuple[str, object, Fraction]]:
    """One sample per critical value and per open gap: (kind, label, x)."""
    crit = critical_values(cov)
    out: list[tuple[str, object, Fraction]] = []
    for i, c in enumerate(crit):
        out.append(("at", c, c))
        if i + 1 < len(crit):
            nxt = crit[i + 1]
            out.append(("between", (c, nxt), (c + nxt) / 2))
    return out


@dataclass
class FiberStep:
    kind: str  # "at" a critical value or "between" two of them
    where: object
    count: int

    def to_json(self) -> dict:
        if self.kind == "at":
            return {"at": rat_str(self.where), "count": self.count}
        lo, hi = self.where
        return {"between": [rat_str(lo), rat_str(hi)], "count": self.count}


def fiber_profile(cov: PLCovering) -> list[FiberStep]:
    return [FiberStep(kind, where, fiber_count(cov, x)) for kind, where, x in _sample_points(cov)]


# ---------------------------------------------------------------------------
# Analysis


@dataclass
class BranchReport:
    base: tuple[Fraction, Fraction]
    is_quasi: bool
    quasi_witness: dict | None
    is_branched: bool
    branched_witness: dict | None
    d_profile: list[FiberStep]
    d: int | None
    B: list[Point]
    R: list[Fraction]
    C_points: list[Point]
    C_arcs: list[tuple[Fraction, Fraction, Fraction, Fraction]]
    counts: dict[Point, tuple[int, int]] = field(default_factory=dict)
    b: dict[Point, int] = field(default_factory=dict)

    def index(self, p: Sequence) -> int:
        """b at any total-space point: 1 away from the recorded special points."""
        p = (as_rat(p[0]), as_rat(p[1]))
        return self.b.get(p, 1)

    def to_json(self) -> dict:
        return {
            "base": [rat_str(v) for v in self.base],
            "is_quasi": self.is_quasi,
            "quasi_witness": self.quasi_witness,
            "is_branched": self.is_branched,
            "branched_witness": self.branched_witness,
            "d": self.d,
            "d_profile": [s.to_json() for s in self.d_profile],
            "B": [point_json(p) for p in self.B],
            "R": [rat_str(x) for x in self.R],
            "C": {
                "points": [point_json(p) for p in self.C_points],
                "arcs": [
                    {"x": [rat_str(x0), rat_str(x1)], "slope": rat_str(m), "intercept": rat_str(c)}
                    for x0, x1, m, c in self.C_arcs
                ],
            },
            "counts": [
                {"point": point_json(p), "L": lr[0], "R": lr[1]} for p, lr in sorted(self.counts.items())
            ],
            "b": [{"point": point_json(p), "index": k} for p, k in sorted(self.b.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> BranchReport:
        def step(s):
            if "at" in s:
                return FiberStep("at", as_rat(s["at"]), s["count"])
            lo, hi = s["between"]
            return FiberStep("between", (as_rat(lo), as_rat(hi)), s["count"])

        return cls(
            base=tuple(as_rat(v) for v in data["base"]),
            is_quasi=data["is_quasi"],
            quasi_witness=data["quasi_witness"],
            is_branched=data["is_branched"],
            branched_witness=data["branched_witness"],
            d_profile=[step(s) for s in data["d_profile"]],
            d=data["d"],
            B=[point_from_json(p) for p in data["B"]],
            R=[as_rat(x) for x in data["R"]],
            C_points=[point_from_json(p) for p in data["C"]["points"]],
            C_arcs=[
                (as_rat(a["x"][0]), as_rat(a["x"][1]), as_rat(a["slope"]), as_rat(a["intercept"]))
                for a in data["C"]["arcs"]
            ],
            counts={point_from_json(c["point"]): (c["L"], c["R"]) for c in data["counts"]},
            b={point_from_json(e["point"]): e["index"] for e in data["b"]},
        )


def special_points(cov: PLCovering) -> list[Point]:
    """All total-space points over critical values (the only candidates for B)."""
    pts: list[Point] = []
    for c in critical_values(cov):
        pts.extend(fiber_at(cov, c))
    return pts


def _relevant_counts(cov: PLCovering, p: Point, lr: tuple[int, int]) -> tuple[int, ...]:
    if p[0] == cov.a:
        return (lr[1],)
    if p[0] == cov.b:
        return (lr[0],)
    return lr


def analyze(cov: PLCovering) -> BranchReport:
    profile = fiber_profile(cov)
    points = special_points(cov)
    counts = {p: branch_counts(cov, p) for p in points}

    quasi_witness = None
    for step in profile:
        if step.count == 0:
            where = step.where if step.kind == "at" else step.where[0]
            quasi_witness = {"reason": "not surjective", "x": rat_str(where)}
            break
    if quasi_witness is None:
        for p in points:
            if min(_relevant_counts(cov, p, counts[p])) == 0:
                L, R = counts[p]
                quasi_witness = {"reason": "not open", "point": point_json(p), "L": L, "R": R}
                break
    is_quasi = quasi_witness is None

    B = [p for p in points if max(_relevant_counts(cov, p, counts[p])) >= 2]
    R = sorted({p[0] for p in B})

    branched_witness = None
    if is_quasi:
        for p in B:
            L, Rc = counts[p]
            if cov.a < p[0] < cov.b and L != Rc:
                branched_witness = {"point": point_json(p), "L": L, "R": Rc}
                break
    else:
        branched_witness = {"reason": "not a quasi-covering"}
    is_branched = is_quasi and branched_witness is None

    generic = {s.count for s in profile if s.kind == "between"}
    d = generic.pop() if len(generic) == 1 else None

    b: dict[Point, int] = {}
    if is_branched:
        for p in points:
            b[p] = max(_relevant_counts(cov, p, counts[p]))

    C_points = [pts[0] for x in critical_values(cov) if len(pts := fiber_at(cov, x)) == 1]
    C_arcs = []
    for s in profile:
        if s.kind == "between" and s.count == 1:
            lo, hi = s.where
            seg = next(t for t in cov.segments if t.covers(lo) and t.covers(hi))
            C_arcs.append((lo, hi, seg.slope, seg.intercept))

    return BranchReport(
        base=cov.base,
        is_quasi=is_quasi,
        quasi_witness=quasi_witness,
        is_branched=is_branched,
        branched_witness=None if is_branched else branched_witness,
        d_profile=profile,
        d=d,
        B=B,
        R=R,
        C_points=C_points,
        C_arcs=C_arcs,
        counts=counts,
        b=b,
    )


def in_collapse_set(report: BranchReport, p: Sequence) -> bool:
    p = (as_rat(p[0]), as_rat(p[1]))
    if p in report.C_points:
        return True
    return any(x0 < p[0] < x1 and m * p[0] + c == p[1] for x0, x1, m, c in report.C_arcs)


# ---------------------------------------------------------------------------
# Sub-coverings


def restrict(cov: PLCovering, z_lo, z_hi) -> PLCovering:
    """The covering over [z_lo, z_hi] with segments clipped exactly."""
    z_lo, z_hi = as_rat(z_lo), as_rat(z_hi)
    if not z_lo < z_hi:
        raise ValueError("empty or inverted subinterval")
    if z_lo < cov.a or z_hi > cov.b:
        raise ValueError("subinterval leaves the base")
    clipped = [c for s in cov.segments if (c := s.clip(z_lo, z_hi)) is not None]
    for s in cov.segments:
        # a segment meeting [z_lo, z_hi] in a single point leaves an isolated point
        for x in (z_lo, z_hi):
            if s.covers(x) and s.clip(z_lo, z_hi) is None:
                p = (x, s.y_at(x))
                if not any(c.contains(p) for c in clipped):
                    raise ValueError(f"restriction isolates the point {point_json(p)}")
    return PLCovering((z_lo, z_hi), clipped)


def components(cov: PLCovering) -> list[list[int]]:
    """Connected components of the total space as lists of segment indices."""
    segs = cov.segments
    parent = list(range(len(segs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if _touch(segs[i], segs[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(segs)):
        groups.setdefault(find(i), []).append(i)

    def key(g: list[int]):
        s = segs[g[0]]
        return (s.x_lo, s.y_at(s.x_lo))

    return sorted(groups.values(), key=key)


def select_components(cov: PLCovering, which: Iterable[int]) -> PLCovering:
    comps = components(cov)
    which = sorted(set(which))
    if not which:
        raise ValueError("select at least one component")
    for w in which:
        if not 0 <= w < len(comps):
            raise ValueError(f"invalid component index {w} (have {len(comps)})")
    idx = [i for w in which for i in comps[w]]
    segs = [cov.segments[i] for i in idx]
    spans = sorted((min(cov.segments[i].x_lo for i in comps[w]), max(cov.segments[i].x_hi for i in comps[w])) for w in which)
    lo, hi = spans[0]
    for s_lo, s_hi in spans[1:]:
        if s_lo > hi:
            raise ValueError("selected components project onto a disconnected set")
        hi = max(hi, s_hi)
    return PLCovering((lo, hi), segs)


def component_points(cov: PLCovering, which: Iterable[int]) -> list[Point]:
    """Special points of ``cov`` lying in the selected components."""
    comps = components(cov)
    segs = [cov.segments[i] for w in which for i in comps[w]]
    return [p for p in special_points(cov) if any(s.contains(p) for s in segs)]


# ---------------------------------------------------------------------------
# Independent check of b by looking at nearby fibers


def local_index_by_sampling(cov: PLCovering, p: Sequence) -> tuple[int, int]:
    """Fiber points near p just left and right of p[0], counted inside a small box."""
    p = (as_rat(p[0]), as_rat(p[1]))
    crit = critical_values(cov)
    gaps = [abs(c - p[0]) for c in crit if c != p[0]]
    eps = min(gaps) / 4 if gaps else Fraction(1)
    ys = sorted({y for _, y in fiber_at(cov, p[0])})
    sep = [abs(y - p[1]) for y in ys if y != p[1]]
    delta = min(sep) / 2 if sep else Fraction(1)
    steep = max((abs(s.slope) for s in cov.segments), default=Fraction(0))
    if steep * eps >= delta / 2:
        eps = delta / (4 * (steep + 1))

    def near(x: Fraction) -> int:
        if not cov.a <= x <= cov.b:
            return 0
        return sum(1 for _, y in fiber_at(cov, x) if abs(y - p[1]) < delta)

    return near(p[0] - eps), near(p[0] + eps)


# ---------------------------------------------------------------------------
# Random coverings


def random_covering(rng, max_sheets: int = 3, grid: int = 4, span: int = 3) -> PLCovering:
    """Union of PL sheets over a shared grid; identical pieces merge, so sheets may fuse."""
    n_sheets = rng.randint(1, max_sheets)
    a = Fraction(rng.randint(-2, 0))
    b = a + rng.randint(1, 3)
    xs = [a + (b - a) * Fraction(i, grid) for i in range(grid + 1)]
    segs: set[Segment] = set()
    for _ in range(n_sheets):
        ys = [Fraction(rng.randint(-span, span), rng.choice([1, 2])) for _ in xs]
        for i in range(grid):
            segs.add(Segment.through((xs[i], ys[i]), (xs[i + 1], ys[i + 1])))
    return PLCovering((a, b), _merge_collinear(segs))


def _merge_collinear(segs: Iterable[Segment]) -> list[Segment]:
    """Join collinear segments that overlap; touching ones are left separate."""
    by_line: dict[tuple[Fraction, Fraction], list[Segment]] = {}
    for s in segs:
        by_line.setdefault((s.slope, s.intercept), []).append(s)
    out = []
    for (m, c), group in by_line.items():
        group.sort()
        lo, hi = group[0].x_lo, group[0].x_hi
        for s in group[1:]:
            if s.x_lo < hi:
                hi = max(hi, s.x_hi)
            else:
                out.append(Segment(lo, hi, m, c))
                lo, hi = s.x_lo, s.x_hi
        out.append(Segment(lo, hi, m, c))
    return out
