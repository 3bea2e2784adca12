from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from branchcov import fixtures
from branchcov.plcov import (
    BranchReport,
    PLCovering,
    PLValidationError,
    Segment,
    analyze,
    branch_counts,
    component_points,
    components,
    critical_values,
    fiber_at,
    fiber_count,
    local_index_by_sampling,
    random_covering,
    restrict,
    select_components,
    special_points,
)
from invariants import check_pl_branched, pl_sample_points

F = Fraction


def load(name: str) -> PLCovering:
    return PLCovering.from_json(fixtures.load(name)["covering"])


def horizontal_pair() -> PLCovering:
    return PLCovering((0, 1), [Segment.make(0, 1, 0, 0), Segment.make(0, 1, 0, 1)])


def branched_coverings(seed: int, count: int):
    """The first ``count`` branched random coverings from a seeded stream."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        cov = random_covering(rng)
        rep = analyze(cov)
        if rep.is_branched:
            out.append((cov, rep))
    return out


# -- examples ----------------------------------------------------------------


def test_critical_values_examples():
    assert {F(-2), F(0), F(2)} <= set(critical_values(load("notbranched-i")))
    assert critical_values(load("x-cross")) == [-1, 0, 1]
    assert critical_values(PLCovering((0, 1), [Segment.make(0, 1, 0, 5)])) == [0, 1]


def test_fiber_examples():
    nb = load("notbranched-i")
    assert set(fiber_at(nb, 0)) == {(0, F(3, 2)), (0, 3)}
    assert fiber_count(nb, 1) == 3
    assert fiber_at(load("x-cross"), 0) == [(0, 0)]
    with pytest.raises(ValueError):
        fiber_at(nb, 3)


def test_branch_counts_examples():
    assert branch_counts(load("notbranched-i"), (0, F(3, 2))) == (1, 2)
    assert branch_counts(load("x-cross"), (0, 0)) == (2, 2)
    assert branch_counts(load("x-cross"), (F(1, 2), F(1, 2))) == (1, 1)
    with pytest.raises(ValueError):
        branch_counts(load("x-cross"), (0, 1))


def test_analyze_notbranched_i():
    rep = analyze(load("notbranched-i"))
    assert rep.is_quasi and not rep.is_branched
    assert rep.branched_witness == {"point": ["0", "3/2"], "L": 1, "R": 2}
    assert rep.B == [(0, F(3, 2)), (0, 3)] and rep.R == [0]


def test_analyze_x_cross():
    rep = analyze(load("x-cross"))
    assert rep.is_branched and rep.d == 2
    assert rep.index((0, 0)) == 2 and rep.B == [(0, 0)] and rep.C_points == [(0, 0)]


def test_analyze_disjoint_horizontals():
    rep = analyze(horizontal_pair())
    assert rep.is_branched and rep.d == 2 and rep.B == [] and rep.R == []
    assert all(rep.index(p) == 1 for p in special_points(horizontal_pair()))


def test_analyze_notbranched_ii_surrogate():
    cov = load("notbranched-ii-pl")
    rep = analyze(cov)
    assert rep.is_quasi and not rep.is_branched
    assert [s.count for s in rep.d_profile] == [4, 4, 2, 4, 4]
    assert branch_counts(cov, (0, 2)) == (1, 3) and branch_counts(cov, (0, -2)) == (3, 1)


def test_not_quasi_when_a_segment_stops_inside():
    cov = PLCovering((0, 2), [Segment.make(0, 2, 0, 0), Segment.make(0, 1, 0, 1)])
    rep = analyze(cov)
    assert not rep.is_quasi and not rep.is_branched
    assert rep.quasi_witness["point"] == ["1", "1"]


def test_validation_errors():
    with pytest.raises(PLValidationError) as err:
        PLCovering((0, 1), [Segment.make(0, 1, 1, 0), Segment.make(F(1, 2), 2, 1, 0)])
    assert len(err.value.problems) == 2  # leaves the base, overlaps collinearly
    with pytest.raises(PLValidationError, match="vertical or degenerate"):
        PLCovering((0, 1), [Segment.make(1, 1, 0, 0)])
    with pytest.raises(ValueError):
        PLCovering.from_json({"base": ["0"], "segments": []})
    with pytest.raises(ValueError):
        PLCovering.from_json({"base": ["0", "1"], "segments": [{"x": ["0", "1"], "slope": "a", "intercept": "0"}]})


def test_restrict_examples():
    nb = load("notbranched-i")
    inner = analyze(restrict(nb, -1, 1))
    assert not inner.is_branched and inner.branched_witness == analyze(nb).branched_witness
    right = analyze(restrict(nb, 1, 2))
    assert right.is_branched and right.d == 3 and right.B == []
    half = analyze(restrict(load("x-cross"), -1, 0))
    assert half.is_branched and half.index((0, 0)) == 2
    for lo, hi in ((1, 1), (1, 0), (-3, 0)):
        with pytest.raises(ValueError):
            restrict(nb, lo, hi)


def test_select_components_examples():
    nb = load("notbranched-i")
    comps = components(nb)
    assert len(comps) == 2
    m1 = analyze(select_components(nb, [0]))
    assert m1.is_quasi and not m1.is_branched
    assert [s.count for s in m1.d_profile if s.kind == "between"] == [1, 2]
    x = load("x-cross")
    assert select_components(x, [0]) == x
    one = analyze(select_components(horizontal_pair(), [1]))
    assert one.is_branched and one.d == 1
    with pytest.raises(ValueError):
        select_components(nb, [2])


def test_report_json_roundtrip():
    for name in ("notbranched-i", "notbranched-ii-pl", "x-cross"):
        cov = load(name)
        rep = analyze(cov)
        assert BranchReport.from_json(json.loads(json.dumps(rep.to_json()))) == rep
        assert PLCovering.from_json(json.dumps(cov.to_json())) == cov


# -- properties --------------------------------------------------------------


@given(st.integers(0, 10**6))
def test_fiber_count_piecewise_constant(seed):
    cov = random_covering(random.Random(seed))
    crit = critical_values(cov)
    for lo, hi in zip(crit, crit[1:]):
        counts = {fiber_count(cov, lo + (hi - lo) * F(k, 7)) for k in range(1, 7)}
        assert len(counts) == 1


@given(st.integers(0, 10**6))
def test_genbranch_trace(seed):
    # y outside R iff the fiber count is constant near y
    cov = random_covering(random.Random(seed))
    rep = analyze(cov)
    if not rep.is_quasi:
        return
    crit = critical_values(cov)
    R = set(rep.R)
    for i, c in enumerate(crit):
        near = [fiber_count(cov, c)]
        if i > 0:
            near.append(fiber_count(cov, (crit[i - 1] + c) / 2))
        if i + 1 < len(crit):
            near.append(fiber_count(cov, (c + crit[i + 1]) / 2))
        assert (c not in R) == (len(set(near)) == 1)


@given(st.integers(0, 10**6))
def test_max_fiber_over_regular_values(seed):
    cov = random_covering(random.Random(seed))
    rep = analyze(cov)
    if not rep.is_quasi:
        return
    xs = pl_sample_points(cov)
    top = max(fiber_count(cov, x) for x in xs)
    assert all(x not in rep.R for x in xs if fiber_count(cov, x) == top)


@given(st.integers(0, 10**6))
def test_B_is_where_local_counts_exceed_one(seed):
    cov = random_covering(random.Random(seed))
    rep = analyze(cov)
    for p in special_points(cov):
        left, right = local_index_by_sampling(cov, p)
        interior = cov.a < p[0] < cov.b
        big = max(left, right) if interior else (right if p[0] == cov.a else left)
        assert (p in rep.B) == (big >= 2)
        if rep.is_branched:
            assert rep.index(p) == big


def test_branched_invariants_on_random_coverings():
    for cov, rep in branched_coverings(101, 60):
        assert check_pl_branched(cov, rep) == []


def test_restriction_laws_on_random_coverings():
    rng = random.Random(7)
    for cov, rep in branched_coverings(7, 100):
        lo = cov.a + (cov.b - cov.a) * F(rng.randint(0, 5), 8)
        hi = lo + (cov.b - lo) * F(rng.randint(1, 8), 8)
        sub = analyze(restrict(cov, lo, hi))
        assert sub.is_branched
        assert set(sub.B) == {p for p in rep.B if lo <= p[0] <= hi}
        assert set(sub.R) == {x for x in rep.R if lo <= x <= hi}
        assert all(sub.index(p) == rep.index(p) for p in special_points(restrict(cov, lo, hi)))


def test_component_selection_laws_on_random_coverings():
    for cov, rep in branched_coverings(8, 100):
        for w in range(len(components(cov))):
            part = select_components(cov, [w])
            sub = analyze(part)
            pts = set(component_points(cov, [w]))
            assert sub.is_branched
            assert set(sub.B) == {p for p in rep.B if p in pts}
            assert set(sub.R) <= set(rep.R)
            assert all(sub.index(p) == rep.index(p) for p in pts)
            assert check_pl_branched(part, sub) == []


@given(st.integers(0, 10**6))
def test_cut_at_regular_value(seed):
    # branched iff both pieces of the base cut at a regular value are branched
    rng = random.Random(seed)
    cov = random_covering(rng)
    rep = analyze(cov)
    crit = critical_values(cov)
    i = rng.randrange(len(crit) - 1)
    c = (crit[i] + crit[i + 1]) / 2
    left, right = analyze(restrict(cov, cov.a, c)), analyze(restrict(cov, c, cov.b))
    assert rep.is_branched == (left.is_branched and right.is_branched)
    if rep.is_branched:
        assert left.d == right.d == rep.d
