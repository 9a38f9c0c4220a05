"""Degrees of atypicality and the positive/negative pair sets.

The super degree #f counts values common to the two blocks.  The reductive
degree *f is the size of the positive pair set Sigma^+_f, built by the
distance recursion: atypical pairs enter at increasing distance, skipping
any pair that shares an index with one already placed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .weights import (REDUCTIVE, SUPER, HighestWeight, Weight, WindowExhausted,
                      weight_to_f)


@dataclass(frozen=True)
class PairSet:
    """A set of cross-wall index pairs (i, j), i < 0 < j, with distinct i's and j's."""

    pairs: tuple[tuple[int, int], ...]
    kind: str  # "positive" | "negative"

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))
        firsts = [i for i, _ in self.pairs]
        seconds = [j for _, j in self.pairs]
        if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
            raise ValueError(f"pair set not disjoint: {self.pairs}")

    def __len__(self) -> int:
        return len(self.pairs)

    def partner(self, i: int) -> int | None:
        for a, b in self.pairs:
            if a == i:
                return b
        return None

    def to_json(self) -> list[list[int]]:
        return [[i, j] for i, j in self.pairs]


def sigma_raw(neg: Sequence[int], pos: Sequence[int], positive: bool) -> list[tuple[int, int]]:
    """Sigma^+ (positive=True) or Sigma^- of a raw reductive arrangement.

    Indices follow the weight convention: i runs over -m..-1 in storage
    order, j over 1..len(pos).  Both blocks are taken as complete; callers
    working with profinite weights must materialize a certified window.
    """
    m = len(neg)
    negset, posset = set(neg), set(pos)
    by_dist: dict[int, list[tuple[int, int]]] = {}
    for a, vi in enumerate(neg):
        if vi in posset:
            continue
        i = a - m
        for b, vj in enumerate(pos):
            if vj in negset:
                continue
            d = vi - vj
            if (d > 0) if positive else (d < 0):
                by_dist.setdefault(abs(d), []).append((i, b + 1))
    chosen: list[tuple[int, int]] = []
    used_i: set[int] = set()
    used_j: set[int] = set()
    for d in sorted(by_dist):
        for i, j in by_dist[d]:
            if i not in used_i and j not in used_j:
                chosen.append((i, j))
                used_i.add(i)
                used_j.add(j)
    return sorted(chosen)


def super_matched_pairs(neg: Sequence[int], pos: Sequence[int]) -> list[tuple[int, int]]:
    """Index pairs (i, j) with equal values across the wall, i ascending.

    For a dominant super weight the j's come out strictly decreasing.
    """
    m = len(neg)
    where = {v: b + 1 for b, v in enumerate(pos)}
    return [(a - m, where[v]) for a, v in enumerate(neg) if v in where]


def super_atypicality(f: Weight) -> int:
    """#f: the number of values shared by the negative and positive blocks."""
    if f.flavor != SUPER:
        raise ValueError("super_atypicality expects a super weight")
    return sum(1 for v in f.neg if f.has_pos_value(v))


def _certified_window(f: Weight) -> int:
    """A window where reductive pair sets computed on the prefix are exact.

    Requires every stored value to sit strictly above the first dropped tail
    value, so value membership in the full positive block is decided by the
    materialized part, and grows until the Sigma^+ recursion provably saw
    every pair (all chosen distances within the exactness horizon and the
    count matching the n = infinity criterion).
    """
    if not f.tail:
        return len(f.pos)
    minval = min(list(f.neg) + list(f.pos)) if (f.neg or f.pos) else 0
    w = max(f.prefix_len, 1, 2 - minval)
    target = sum(1 for v in f.neg if not f.has_pos_value(v))
    for _ in range(300):
        pos = f.pos_upto(w)
        chosen = sigma_raw(f.neg, pos, positive=True)
        horizon = w - 1 + min(list(f.neg) + pos)
        if len(chosen) == target and all(
                f.entry(i) - pos[j - 1] <= horizon for i, j in chosen):
            return w
        w += 4
    raise WindowExhausted(f"no certified window for {f}")


def sigma_plus(f: Weight) -> PairSet:
    """Sigma^+_f for a dominant reductive weight."""
    if f.flavor != REDUCTIVE:
        raise ValueError("sigma sets are defined on the reductive side")
    w = _certified_window(f)
    pairs = sigma_raw(f.neg, f.pos_upto(w) if f.tail else f.pos, positive=True)
    return PairSet(tuple(pairs), "positive")


def sigma_minus(f: Weight) -> PairSet:
    """Sigma^-_f for a dominant reductive weight."""
    if f.flavor != REDUCTIVE:
        raise ValueError("sigma sets are defined on the reductive side")
    if f.tail:
        minval = min(list(f.neg) + list(f.pos)) if (f.neg or f.pos) else 0
        w = max(f.prefix_len, 1, 2 - minval)
        pos = f.pos_upto(w)
    else:
        pos = list(f.pos)
    return PairSet(tuple(sigma_raw(f.neg, pos, positive=False)), "negative")


def j_atypicality(f: Weight) -> int:
    """*f = |Sigma^+_f|; stable across sufficiently large windows."""
    return len(sigma_plus(f))


def jantzen_irreducible(lam: HighestWeight, n: int | None = None) -> bool:
    """Irreducibility of the parabolic Verma module of highest weight lambda.

    Finite n: for every root pairing (lambda + rho_c | delta'_i - delta'_j)
    that is a positive integer (i < 0 < j) there must be a vanishing pairing
    against delta'_i - delta'_l (l > 0) or delta'_k - delta'_j (k < 0).
    n = infinity: every negative-block f-entry must recur on the positive side.
    """
    if lam.flavor != REDUCTIVE:
        raise ValueError("the Jantzen predicate applies to reductive weights")
    f = weight_to_f(lam)
    if f.tail and n is None:
        # the n = infinity criterion
        return all(f.has_pos_value(v) for v in f.neg)
    if f.tail:
        fin = f.truncate(n)
        if fin is None:
            raise ValueError(f"window {n} too small for {f}")
        f = fin
    elif n is not None and n != len(f.pos):
        raise ValueError("n disagrees with the finite block length")
    negvals = set(f.neg)
    posvals = set(f.pos)
    for vi in f.neg:
        for vj in f.pos:
            if vi - vj > 0:  # integral form: positive integer iff positive
                if vi not in posvals and vj not in negvals:
                    return False
    return True
