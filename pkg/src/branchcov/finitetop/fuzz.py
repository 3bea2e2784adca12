"""Seeded random instances and the exhaustive sweep over small labeled spaces."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from branchcov.finitetop.lemmas import REGISTRY, run_registry
from branchcov.finitetop.space import FinMap, FinSpace, bits, quasi_coverings

FUZZ_BUDGET = 3


def random_preorder(rng: random.Random, n: int, density: float | None = None) -> FinSpace:
    density = rng.uniform(0.05, 0.4) if density is None else density
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y and rng.random() < density]
    return FinSpace.from_relations(n, pairs)


def _repair(rng: random.Random, Y: FinSpace, labels: list[int], pairs: set[tuple[int, int]], n: int) -> FinSpace:
    """Add relations that make the map open and closed where they are missing."""
    X = FinSpace.from_relations(n, sorted(pairs))
    fibers: dict[int, list[int]] = {}
    for x, y in enumerate(labels):
        fibers.setdefault(y, []).append(x)
    for _ in range(3):
        fmap = FinMap(X, Y, labels)
        added = False
        for x in range(n):
            have_up = fmap.image(X.up[x])
            for y2 in bits(Y.up[labels[x]] & ~have_up):
                pairs.add((x, rng.choice(fibers[y2])))
                added = True
            have_down = fmap.image(X.down[x])
            for y2 in bits(Y.down[labels[x]] & ~have_down):
                pairs.add((rng.choice(fibers[y2]), x))
                added = True
        if not added:
            break
        X = FinSpace.from_relations(n, sorted(pairs))
    return X


def random_instance(rng: random.Random, max_points: int) -> FinMap:
    """A random continuous surjection, biased toward quasi-coverings."""
    # favor larger spaces: the max of two draws
    n = max(rng.randint(1, max_points), rng.randint(1, max_points))
    m = rng.randint(1, min(n, 4))
    Y = random_preorder(rng, m, rng.uniform(0.3, 0.8))
    labels = list(range(m)) + [rng.randrange(m) for _ in range(n - m)]
    rng.shuffle(labels)
    if rng.random() < 0.2:
        # unstructured: random domain, keep the map only if it is continuous
        X = random_preorder(rng, n)
        fmap = FinMap(X, Y, labels)
        if fmap.is_continuous():
            return fmap
    density = rng.uniform(0.1, 0.6)
    pairs = {
        (x, x2)
        for x in range(n)
        for x2 in range(n)
        if labels[x] != labels[x2] and Y.leq(labels[x], labels[x2]) and rng.random() < density
    }
    X = _repair(rng, Y, labels, pairs, n)
    return FinMap(X, Y, labels)


@dataclass
class Summary:
    trials: int = 0
    quasi: int = 0
    branched: int = 0
    qualifying: dict[str, int] = field(default_factory=dict)
    holding: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    def add(self, fmap: FinMap, rng: random.Random | None, budget: int | None) -> None:
        self.trials += 1
        verdicts = run_registry(fmap, rng=rng, budget=budget)
        if fmap.is_quasi_covering():
            self.quasi += 1
        for v in verdicts:
            if v.lemma == "indexwell" and v.qualifying:
                self.branched += 1
            if v.qualifying:
                self.qualifying[v.lemma] = self.qualifying.get(v.lemma, 0) + 1
                if v.holds:
                    self.holding[v.lemma] = self.holding.get(v.lemma, 0) + 1
                else:
                    self.failures.append(v.counterexample)

    @property
    def violations(self) -> int:
        return len(self.failures)

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "quasi_coverings": self.quasi,
            "branched_coverings": self.branched,
            "lemmas": {
                name: {"qualifying": self.qualifying.get(name, 0), "holding": self.holding.get(name, 0)}
                for name in REGISTRY
                if self.trials
            },
            "violations": self.violations,
            "failures": self.failures,
        }


def fuzz(seed: int, trials: int, max_points: int = 5, budget: int | None = FUZZ_BUDGET) -> Summary:
    """Run the registry on ``trials`` random instances; trial i uses its own seeded generator."""
    if max_points < 1:
        raise ValueError("max_points must be positive")
    summary = Summary()
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        fmap = random_instance(rng, max_points)
        summary.add(fmap, rng, budget)
    return summary


def sweep(max_domain: int = 4, max_codomain: int = 3) -> Summary:
    """Every lemma on every labeled quasi-covering within the bounds, exhaustively."""
    summary = Summary()
    for fmap in quasi_coverings(max_domain, max_codomain):
        summary.add(fmap, None, None)
    return summary
