"""Ground-truth comparison metrics for covers: Omega index, overlapping
NMI (max-normalized), and best-match precision/recall/F1."""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .cover import Cover, CoverError


def _common_universe(c1: Cover, c2: Cover) -> tuple[Cover, Cover, frozenset[int]]:
    u1, u2 = c1.universe, c2.universe
    if u1 == u2:
        return c1, c2, u1
    common = u1 & u2
    if not common:
        raise CoverError("covers share no nodes")
    dropped = sorted((u1 | u2) - common)
    warnings.warn(f"covers restricted to common universe; dropped nodes {dropped[:20]}"
                  + ("..." if len(dropped) > 20 else ""))
    return c1.restricted_to(common), c2.restricted_to(common), frozenset(common)


def _pair_multiplicities(c: Cover) -> Counter:
    """Count, per unordered node pair, in how many communities it co-occurs.
    Only pairs with multiplicity >= 1 are materialized."""
    counts: Counter = Counter()
    for comm in c.communities:
        members = sorted(comm)
        for i, j in combinations(members, 2):
            counts[(i, j)] += 1
    return counts


def omega_index(c1: Cover, c2: Cover) -> float:
    """Chance-corrected agreement on per-pair co-membership multiplicity.
    Pairs never co-clustered in either cover are handled by complement
    counting, never materializing all n(n-1)/2 pairs."""
    c1, c2, universe = _common_universe(c1, c2)
    n = len(universe)
    if n < 2:
        raise CoverError("need at least 2 nodes")
    m_pairs = n * (n - 1) // 2

    m1 = _pair_multiplicities(c1)
    m2 = _pair_multiplicities(c2)

    # agreements at multiplicity >= 1, plus the t_0/t_0 class by subtraction
    touched = set(m1) | set(m2)
    agree = sum(1 for p in touched if m1.get(p, 0) == m2.get(p, 0))
    agree += m_pairs - len(touched)
    omega_u = agree / m_pairs

    size1 = Counter(m1.values())
    size2 = Counter(m2.values())
    size1[0] = m_pairs - sum(size1.values())
    size2[0] = m_pairs - sum(size2.values())
    omega_e = sum(size1[j] * size2.get(j, 0) for j in size1) / (m_pairs ** 2)

    if omega_e == 1.0:
        if omega_u == 1.0:
            return 1.0
        raise CoverError("degenerate covers: expected agreement is 1")
    return (omega_u - omega_e) / (1 - omega_e)


def _h(w: int, n: int) -> float:
    """Entropy contribution -w/n log2(w/n); 0 when w = 0."""
    if w <= 0:
        return 0.0
    p = w / n
    return -p * math.log2(p)


def _indicator_entropy(size: int, n: int) -> float:
    return _h(size, n) + _h(n - size, n)


def _cond_entropy_terms(x: frozenset[int], y: frozenset[int], n: int) -> float | None:
    """H*(X|Y) for two binary community indicators, or None when the
    information-theoretic constraint h(a)+h(d) >= h(b)+h(c) is violated."""
    d = len(x & y)          # in both
    c = len(x) - d          # only in x
    b = len(y) - d          # only in y
    a = n - b - c - d       # in neither
    if _h(a, n) + _h(d, n) < _h(b, n) + _h(c, n):
        return None
    joint = _h(a, n) + _h(b, n) + _h(c, n) + _h(d, n)
    hy = _indicator_entropy(len(y), n)
    return joint - hy


def _conditional_entropy(cover_x: Cover, cover_y: Cover, n: int,
                         normalized: bool) -> float:
    """Sum over communities X_k of min_l H*(X_k|Y_l), falling back to
    H(X_k); optionally each term is divided by H(X_k)."""
    total = 0.0
    for x in cover_x.communities:
        hx = _indicator_entropy(len(x), n)
        best = hx
        for y in cover_y.communities:
            term = _cond_entropy_terms(x, y, n)
            if term is not None and term < best:
                best = term
        if normalized:
            total += best / hx if hx > 0 else 0.0
        else:
            total += best
    if normalized:
        total /= len(cover_x.communities)
    return total


def onmi_max(c1: Cover, c2: Cover, variant: str = "mcdaid") -> float:
    """Overlapping NMI normalized by the larger cover entropy. The default
    follows the max-normalization construction over binary community
    indicators; variant="lfk" uses per-community normalized conditional
    entropies inside the mutual information instead."""
    if variant not in ("mcdaid", "lfk"):
        raise ValueError("variant must be 'mcdaid' or 'lfk'")
    c1, c2, universe = _common_universe(c1, c2)
    n = len(universe)
    h1 = sum(_indicator_entropy(len(x), n) for x in c1.communities)
    h2 = sum(_indicator_entropy(len(y), n) for y in c2.communities)
    if h1 == 0.0 and h2 == 0.0:
        return 1.0 if set(c1.communities) == set(c2.communities) else 0.0

    if variant == "mcdaid":
        h1c2 = _conditional_entropy(c1, c2, n, normalized=False)
        h2c1 = _conditional_entropy(c2, c1, n, normalized=False)
        mutual = 0.5 * ((h1 - h1c2) + (h2 - h2c1))
        return mutual / max(h1, h2)
    # LFK-style: 1 - mean normalized conditional entropy, symmetrized by
    # the worse (max) direction
    n1 = _conditional_entropy(c1, c2, n, normalized=True)
    n2 = _conditional_entropy(c2, c1, n, normalized=True)
    return 1.0 - max(n1, n2)


@dataclass(frozen=True)
class MatchScores:
    precision: float
    recall: float
    f1: float


def _best_f1(source: Cover, target: Cover) -> tuple[float, float, float]:
    """Mean best-match precision, recall, F1 from source communities to
    target communities."""
    ps, rs, fs = [], [], []
    for s in source.communities:
        best = (0.0, 0.0, 0.0)
        for t in target.communities:
            tp = len(s & t)
            if tp == 0:
                continue
            prec = tp / len(s)
            rec = tp / len(t)
            f1 = 2 * prec * rec / (prec + rec)
            if f1 > best[2]:
                best = (prec, rec, f1)
        ps.append(best[0])
        rs.append(best[1])
        fs.append(best[2])
    k = len(source.communities)
    return sum(ps) / k, sum(rs) / k, sum(fs) / k


def f1_best_match(detected: Cover, truth: Cover) -> MatchScores:
    """Best-overlap matching of detected communities to truth communities.
    Precision and recall are the detected-side means; F1 averages both
    matching directions."""
    detected, truth, _ = _common_universe(detected, truth)
    p_d, r_d, f_d = _best_f1(detected, truth)
    _, _, f_t = _best_f1(truth, detected)
    return MatchScores(precision=p_d, recall=r_d, f1=0.5 * (f_d + f_t))
