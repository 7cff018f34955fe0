"""Local per-property rankings and their aggregation: Kemeny consensus,
TOPSIS, and Spearman rank-correlation matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Mapping, Sequence

import numpy as np

from .distfit import FitError, FittedDistribution, best_fit, fit_mle
from .graph import EmpiricalDistribution

KEMENY_EXACT_LIMIT = 10


class RankingError(ValueError):
    pass


def competition_ranks(scores: Sequence[float], ascending: bool = True) -> list[int]:
    """Competition ('1224') ranking: ties share the minimum rank and the
    following ranks are skipped."""
    order = sorted(scores) if ascending else sorted(scores, reverse=True)
    return [order.index(s) + 1 for s in scores]


@dataclass(frozen=True)
class RankingTable:
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    ranks: tuple[tuple[int, ...], ...]  # ranks[alt][criterion]

    def __post_init__(self):
        m = len(self.alternatives)
        if len(self.ranks) != m:
            raise RankingError("rank row count must match alternatives")
        for row in self.ranks:
            if len(row) != len(self.criteria):
                raise RankingError("rank column count must match criteria")
            if any(not 1 <= r <= m for r in row):
                raise RankingError(f"ranks must lie in [1, {m}]")

    def column(self, criterion: str) -> list[int]:
        j = self.criteria.index(criterion)
        return [row[j] for row in self.ranks]

    def matrix(self) -> np.ndarray:
        return np.array(self.ranks, dtype=float)

    @classmethod
    def from_columns(cls, alternatives: Sequence[str],
                     columns: Mapping[str, Sequence[int]]) -> "RankingTable":
        crits = tuple(columns)
        rows = tuple(
            tuple(int(columns[c][i]) for c in crits)
            for i in range(len(alternatives))
        )
        return cls(tuple(alternatives), crits, rows)


@dataclass(frozen=True)
class DecisionMatrix:
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]     # values[alt][criterion]
    benefit: tuple[bool, ...]                 # per criterion; False = cost
    weights: tuple[float, ...] | None = None  # defaults to equal

    def weight_vector(self) -> np.ndarray:
        k = len(self.criteria)
        if self.weights is None:
            return np.full(k, 1.0 / k)
        w = np.asarray(self.weights, dtype=float)
        if np.any(w <= 0):
            raise RankingError("weights must be positive")
        return w / w.sum()

    @classmethod
    def from_ranks(cls, rt: RankingTable) -> "DecisionMatrix":
        """Ranks as equal-weight cost criteria (lower rank is better)."""
        return cls(
            alternatives=rt.alternatives,
            criteria=rt.criteria,
            values=tuple(tuple(float(r) for r in row) for row in rt.ranks),
            benefit=tuple(False for _ in rt.criteria),
        )


def rank_scalar(reference: Mapping[str, float],
                candidates: Mapping[str, Mapping[str, float]]) -> RankingTable:
    """Per property, rank candidates by ascending Manhattan distance to the
    reference value."""
    alternatives = tuple(candidates)
    columns: dict[str, list[int]] = {}
    for prop, ref in reference.items():
        if not math.isfinite(ref):
            raise RankingError(f"non-finite reference value for {prop!r}")
        dists = []
        for alt in alternatives:
            val = candidates[alt][prop]
            if not math.isfinite(val):
                raise RankingError(f"non-finite value for {alt!r} on {prop!r}")
            dists.append(abs(ref - val))
        columns[prop] = competition_ranks(dists, ascending=True)
    return RankingTable.from_columns(alternatives, columns)


@dataclass(frozen=True)
class DistributionRanking:
    ranks: dict[str, int]
    family: str
    reference_fit: FittedDistribution
    candidate_ks: dict[str, float | None]  # None = family inapplicable


def rank_distribution(reference: EmpiricalDistribution,
                      candidates: Mapping[str, EmpiricalDistribution]
                      ) -> DistributionRanking:
    """Select the best-fitting family on the reference samples, fit that
    family to each candidate's own samples, and rank by ascending KS.
    Candidates the family cannot fit are ranked last."""
    report = best_fit(reference)
    family = report.best.family
    ks: dict[str, float | None] = {}
    for name, samples in candidates.items():
        try:
            ks[name] = fit_mle(family, samples).ks
        except FitError:
            ks[name] = None
    finite = [v for v in ks.values() if v is not None]
    sentinel = (max(finite) if finite else 0.0) + 1.0
    scores = [ks[name] if ks[name] is not None else sentinel for name in candidates]
    ranks = competition_ranks(scores, ascending=True)
    return DistributionRanking(
        ranks=dict(zip(candidates, ranks)),
        family=family.value,
        reference_fit=report.best,
        candidate_ks=ks,
    )


@dataclass(frozen=True)
class KemenyResult:
    order: tuple[str, ...]   # best to worst
    ranks: dict[str, int]
    score: int
    exact: bool


def _pairwise_preference(rt: RankingTable) -> np.ndarray:
    """P[a][b] = number of criteria ranking a strictly above (better than) b."""
    r = rt.matrix()
    m = len(rt.alternatives)
    p = np.zeros((m, m), dtype=int)
    for a in range(m):
        for b in range(m):
            if a != b:
                p[a, b] = int(np.sum(r[a] < r[b]))
    return p


def _order_score(order: Sequence[int], p: np.ndarray) -> int:
    s = 0
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            s += p[order[i], order[j]]
    return int(s)


def kemeny_consensus(rt: RankingTable) -> KemenyResult:
    """Ordering maximizing total pairwise agreement with the criterion
    rankings. Exact enumeration up to KEMENY_EXACT_LIMIT alternatives,
    lexicographic name tiebreak; beyond that a deterministic adjacent-swap
    hill climb restarted from every cyclic rotation of the mean-rank order."""
    m = len(rt.alternatives)
    if m == 0:
        raise RankingError("empty ranking table")
    p = _pairwise_preference(rt)
    name_sorted = sorted(range(m), key=lambda i: rt.alternatives[i])
    if m <= KEMENY_EXACT_LIMIT:
        best_order: tuple[int, ...] | None = None
        best_score = -1
        # iterating permutations of name-sorted indices yields the
        # lexicographically-smallest optimal ordering first
        for perm in permutations(name_sorted):
            s = _order_score(perm, p)
            if s > best_score:
                best_score = s
                best_order = perm
        order = list(best_order)
        exact = True
    else:
        mean_ranks = rt.matrix().mean(axis=1)
        start = sorted(range(m), key=lambda i: (mean_ranks[i], rt.alternatives[i]))
        best_order_l: list[int] = start
        best_score = _order_score(start, p)
        for rot in range(m):
            cur = start[rot:] + start[:rot]
            improved = True
            while improved:
                improved = False
                for i in range(m - 1):
                    cand = cur.copy()
                    cand[i], cand[i + 1] = cand[i + 1], cand[i]
                    if _order_score(cand, p) > _order_score(cur, p):
                        cur = cand
                        improved = True
            s = _order_score(cur, p)
            if s > best_score:
                best_score = s
                best_order_l = cur
        order = best_order_l
        exact = False
    names = tuple(rt.alternatives[i] for i in order)
    ranks = {name: pos + 1 for pos, name in enumerate(names)}
    return KemenyResult(order=names, ranks=ranks, score=best_score, exact=exact)


@dataclass(frozen=True)
class TopsisResult:
    closeness: dict[str, float]
    ranks: dict[str, int]


def topsis(dm: DecisionMatrix) -> TopsisResult:
    """Vector-normalize, weight, and rank by relative closeness to the
    ideal solution."""
    x = np.array(dm.values, dtype=float)
    if x.shape[0] < 2 or x.shape[1] < 1:
        raise RankingError("need at least 2 alternatives and 1 criterion")
    norms = np.sqrt((x ** 2).sum(axis=0))
    if np.any(norms == 0):
        bad = [dm.criteria[j] for j in np.where(norms == 0)[0]]
        raise RankingError(f"zero-norm criterion column(s): {bad}")
    y = x / norms * dm.weight_vector()
    benefit = np.array(dm.benefit, dtype=bool)
    pis = np.where(benefit, y.max(axis=0), y.min(axis=0))
    nis = np.where(benefit, y.min(axis=0), y.max(axis=0))
    d_plus = np.sqrt(((y - pis) ** 2).sum(axis=1))
    d_minus = np.sqrt(((y - nis) ** 2).sum(axis=1))
    denom = d_plus + d_minus
    closeness = np.where(denom == 0, 0.5, d_minus / np.where(denom == 0, 1.0, denom))
    ranks = competition_ranks(list(closeness), ascending=False)
    return TopsisResult(
        closeness=dict(zip(dm.alternatives, (float(c) for c in closeness))),
        ranks=dict(zip(dm.alternatives, ranks)),
    )


def spearman_matrix(rt: RankingTable) -> np.ndarray:
    """Pairwise Spearman correlation of criterion rank columns (Pearson on
    ranks, tie-corrected); constant columns yield NaN entries."""
    if len(rt.alternatives) < 3:
        raise RankingError("need at least 3 alternatives")
    r = rt.matrix()  # alternatives x criteria
    k = len(rt.criteria)
    out = np.full((k, k), np.nan)
    for i in range(k):
        for j in range(i, k):
            xi, xj = r[:, i], r[:, j]
            sx = xi - xi.mean()
            sy = xj - xj.mean()
            vx = float((sx ** 2).sum())
            vy = float((sy ** 2).sum())
            if vx == 0 or vy == 0:
                continue
            val = float((sx * sy).sum()) / math.sqrt(vx * vy)
            out[i, j] = out[j, i] = val
    return out
