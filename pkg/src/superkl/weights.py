"""Dominant weights for gl(m|n) and gl(m+n) combinatorics.

A weight f assigns an integer to every index in I(m|n) = {-m..-1, 1..n}.
The negative block is always strictly decreasing.  The positive block is
strictly increasing in the super flavor and strictly decreasing in the
reductive flavor.  Profinite weights (n = infinity) store only the prefix
of positive entries that differs from the standard tail

    super:      f(i) = i      for i beyond the prefix,
    reductive:  f(i) = 1 - i  for i beyond the prefix,

and are renormalized so the stored prefix is minimal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

SUPER = "super"
REDUCTIVE = "reductive"


class WindowExhausted(Exception):
    """A search or materialization left the configured entry window."""


def tail_value(flavor: str, i: int) -> int:
    """The standard tail entry at positive index i."""
    return i if flavor == SUPER else 1 - i


def _strip_tail(flavor: str, pos: Sequence[int]) -> tuple[int, ...]:
    pos = list(pos)
    while pos and pos[-1] == tail_value(flavor, len(pos)):
        pos.pop()
    return tuple(pos)


@dataclass(frozen=True)
class Weight:
    """A dominant weight, finite-n (tail=False) or profinite (tail=True)."""

    flavor: str
    neg: tuple[int, ...]   # f(-m), ..., f(-1)
    pos: tuple[int, ...]   # f(1), ..., f(k); the full block when tail=False
    tail: bool = False

    def __post_init__(self):
        if self.flavor not in (SUPER, REDUCTIVE):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "neg", tuple(self.neg))
        pos = tuple(self.pos)
        if self.tail:
            pos = _strip_tail(self.flavor, pos)
        object.__setattr__(self, "pos", pos)
        for a, b in zip(self.neg, self.neg[1:]):
            if a <= b:
                raise ValueError(f"negative block not strictly decreasing: {self.neg}")
        inc = self.flavor == SUPER
        for a, b in zip(pos, pos[1:]):
            if (a >= b) if inc else (a <= b):
                raise ValueError(f"positive block not dominant: {pos}")
        if self.tail and pos:
            nxt = tail_value(self.flavor, len(pos) + 1)
            last = pos[-1]
            if (last >= nxt) if inc else (last <= nxt):
                raise ValueError(f"prefix {pos} incompatible with standard tail")

    # -- shape ----------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.neg)

    @property
    def n(self) -> int | None:
        """The finite positive-block length, or None for profinite weights."""
        return None if self.tail else len(self.pos)

    @property
    def prefix_len(self) -> int:
        return len(self.pos)

    def entry(self, i: int) -> int:
        """f(i) for any index i in I(m|n) (tail-extended when profinite)."""
        if i < 0:
            return self.neg[self.m + i]
        if i == 0:
            raise IndexError("0 is not a weight index")
        if i <= len(self.pos):
            return self.pos[i - 1]
        if self.tail:
            return tail_value(self.flavor, i)
        raise IndexError(f"index {i} beyond finite block of length {len(self.pos)}")

    def pos_upto(self, w: int) -> list[int]:
        """Materialize f(1), ..., f(w)."""
        if not self.tail:
            if w > len(self.pos):
                raise IndexError(f"window {w} beyond finite block")
            return list(self.pos[:w])
        if w < len(self.pos):
            raise ValueError("window smaller than stored prefix")
        return list(self.pos) + [tail_value(self.flavor, i)
                                 for i in range(len(self.pos) + 1, w + 1)]

    def pos_values(self) -> set[int]:
        """The set of explicit positive-block values (prefix only if profinite)."""
        return set(self.pos)

    def has_pos_value(self, v: int) -> bool:
        """Whether v occurs among all positive entries, tail included."""
        if v in set(self.pos):
            return True
        if not self.tail:
            return False
        k = len(self.pos)
        if self.flavor == SUPER:
            return v >= k + 1
        return v <= -k

    def truncate(self, n: int) -> "Weight | None":
        """Restriction to I(m|n); None when an explicit entry violates the tail rule.

        For a profinite weight this is f^(n), defined when the prefix fits.
        For a finite weight of block length n' > n it drops entries, defined
        when the dropped ones all equal the standard tail values.
        """
        if self.tail:
            if len(self.pos) > n:
                return None
            return Weight(self.flavor, self.neg, tuple(self.pos_upto(n)), tail=False)
        if len(self.pos) < n:
            raise ValueError("cannot truncate below the stored block")
        for i in range(n + 1, len(self.pos) + 1):
            if self.pos[i - 1] != tail_value(self.flavor, i):
                return None
        return Weight(self.flavor, self.neg, self.pos[:n], tail=False)

    def extend_profinite(self) -> "Weight":
        """View a finite-n weight as profinite by appending the standard tail.

        Only valid when the last entry sits above/below the incoming tail.
        """
        if self.tail:
            return self
        return Weight(self.flavor, self.neg, self.pos, tail=True)

    def sort_key(self) -> tuple:
        return (self.neg, self.pos, self.tail)

    # -- text and JSON forms ---------------------------------------------

    def __str__(self) -> str:
        neg = ",".join(map(str, self.neg))
        pos = ",".join(map(str, self.pos))
        if self.tail:
            pos = pos + ",*" if pos else "*"
        return f"{neg}|{pos}"

    def to_json(self) -> dict:
        return {"m": self.m, "flavor": self.flavor, "neg": list(self.neg),
                "pos": list(self.pos), "tail": self.tail}

    @staticmethod
    def from_json(d: dict) -> "Weight":
        return Weight(d["flavor"], tuple(d["neg"]), tuple(d["pos"]), bool(d["tail"]))


def parse_weight(text: str, flavor: str) -> Weight:
    """Parse the "a,b,...|c,d,..." form; a trailing ",*" (or lone "*") marks the tail."""
    if "|" not in text:
        raise ValueError(f"weight {text!r} lacks the | block separator")
    neg_s, pos_s = text.split("|", 1)
    neg = tuple(int(t) for t in neg_s.split(",") if t.strip() != "")
    parts = [t.strip() for t in pos_s.split(",") if t.strip() != ""]
    tail = False
    if parts and parts[-1] == "*":
        tail = True
        parts = parts[:-1]
    if any(p == "*" for p in parts):
        raise ValueError("'*' may only terminate the positive block")
    pos = tuple(int(t) for t in parts)
    return Weight(flavor, neg, pos, tail)


# -- highest weights and the f-coordinate bijections ----------------------


@dataclass(frozen=True)
class HighestWeight:
    """A dominant integral highest weight lambda, in the same storage scheme.

    Entries are lambda_{-m}..lambda_{-1} and lambda_1..lambda_k; profinite
    weights have lambda_j = 0 beyond the stored positive prefix.
    """

    flavor: str
    neg: tuple[int, ...]
    pos: tuple[int, ...]
    tail: bool = False

    def __post_init__(self):
        object.__setattr__(self, "neg", tuple(self.neg))
        pos = tuple(self.pos)
        if self.tail:
            pos = list(pos)
            while pos and pos[-1] == 0:
                pos.pop()
            pos = tuple(pos)
        object.__setattr__(self, "pos", pos)
        for a, b in zip(self.neg, self.neg[1:]):
            if a < b:
                raise ValueError(f"lambda not dominant on the negative block: {self.neg}")
        for a, b in zip(pos, pos[1:]):
            if a < b:
                raise ValueError(f"lambda not dominant on the positive block: {pos}")
        if self.tail and pos and pos[-1] < 0:
            raise ValueError("profinite lambda must vanish eventually")

    @property
    def m(self) -> int:
        return len(self.neg)

    def entry(self, i: int) -> int:
        if i < 0:
            return self.neg[self.m + i]
        if i <= len(self.pos):
            return self.pos[i - 1]
        if self.tail:
            return 0
        raise IndexError(f"index {i} beyond finite block")


def weight_to_f(lam: HighestWeight) -> Weight:
    """f_lambda(i) = (lambda + rho | delta_i) in the flavor's conventions."""
    neg = tuple(v - i for v, i in zip(lam.neg, range(-lam.m, 0)))
    if lam.flavor == SUPER:
        pos = tuple(j - lam.pos[j - 1] for j in range(1, len(lam.pos) + 1))
    else:
        pos = tuple(lam.pos[j - 1] + 1 - j for j in range(1, len(lam.pos) + 1))
    return Weight(lam.flavor, neg, pos, lam.tail)


def f_to_weight(f: Weight) -> HighestWeight:
    """Inverse of weight_to_f."""
    neg = tuple(v + i for v, i in zip(f.neg, range(-f.m, 0)))
    if f.flavor == SUPER:
        pos = tuple(j - f.pos[j - 1] for j in range(1, len(f.pos) + 1))
    else:
        pos = tuple(f.pos[j - 1] - 1 + j for j in range(1, len(f.pos) + 1))
    return HighestWeight(f.flavor, neg, pos, f.tail)


# -- straightening to the dominant representative -------------------------


def _sort_scalar(values: Sequence[int], decreasing: bool) -> tuple[list[int], int] | None:
    """Sort a block, returning (sorted, inversions) or None on a repeat.

    The inversion count is the length of the minimal permutation straightening
    the block; each adjacent swap carries a factor -q^-1.
    """
    vals = list(values)
    if len(set(vals)) != len(vals):
        return None
    inv = 0
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if (vals[i] < vals[j]) if decreasing else (vals[i] > vals[j]):
                inv += 1
    vals.sort(reverse=decreasing)
    return vals, inv


def dominant_rep(neg: Sequence[int], pos: Sequence[int], flavor: str,
                 tail: bool = False) -> tuple[Weight, int, int] | None:
    """Blockwise straightening of a raw weight.

    Returns (weight, sign, qpower) with overall scalar sign * q^qpower equal
    to (-q^-1)^(inversions), or None when a block has a repeated entry (the
    straightened wedge is zero).
    """
    sn = _sort_scalar(neg, decreasing=True)
    if sn is None:
        return None
    sp = _sort_scalar(pos, decreasing=(flavor == REDUCTIVE))
    if sp is None:
        return None
    ell = sn[1] + sp[1]
    w = Weight(flavor, tuple(sn[0]), tuple(sp[0]), tail)
    return w, (-1) ** ell, -ell


# -- epsilon weights -------------------------------------------------------


def eps_weight(f: Weight) -> dict[int, int]:
    """The multiset wt^eps(f) as a value -> multiplicity mapping.

    Finite weights are absolute: reductive entries all count +1, super counts
    +1 per negative entry and -1 per positive entry.  Profinite weights are
    stored relative to the weight of lambda = 0, so that the multiplicities
    have finite support.
    """
    out: dict[int, int] = {}

    def add(v: int, c: int):
        c = out.get(v, 0) + c
        if c:
            out[v] = c
        elif v in out:
            del out[v]

    sgn_pos = -1 if f.flavor == SUPER else 1
    if not f.tail:
        for v in f.neg:
            add(v, 1)
        for v in f.pos:
            add(v, sgn_pos)
        return out
    # relative to f_{lambda=0}: neg background is f0(i) = -i, pos background
    # is the standard tail from index 1 on.
    for k, v in enumerate(f.neg):
        add(v, 1)
        add(f.m - k, -1)
    for j, v in enumerate(f.pos, start=1):
        add(v, sgn_pos)
        add(tail_value(f.flavor, j), -sgn_pos)
    return out


# -- Bruhat orders ---------------------------------------------------------


def _reductive_down_neighbors(neg: tuple[int, ...], pos: tuple[int, ...],
                              lo: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Single simple moves f -> (f.tau_ij)^+ across the wall, values >= lo kept."""
    negset, posset = set(neg), set(pos)
    for a, vi in enumerate(neg):
        if vi in posset:
            continue
        for b, vj in enumerate(pos):
            if vj >= vi or vj in negset or vj < lo:
                continue
            nn = sorted(neg[:a] + (vj,) + neg[a + 1:], reverse=True)
            np_ = sorted(pos[:b] + (vi,) + pos[b + 1:], reverse=True)
            yield tuple(nn), tuple(np_)


def _super_down_neighbors(neg: tuple[int, ...], pos: tuple[int, ...],
                          lo: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Super moves: lower a matched pair by r, then re-sort; values >= lo kept."""
    negset, posset = set(neg), set(pos)
    for a, vi in enumerate(neg):
        if vi not in posset:
            continue
        b = pos.index(vi)
        other_neg = negset - {vi}
        other_pos = posset - {vi}
        for w in range(vi - 1, lo - 1, -1):
            if w in other_neg or w in other_pos:
                continue
            nn = sorted(neg[:a] + (w,) + neg[a + 1:], reverse=True)
            np_ = sorted(pos[:b] + (w,) + pos[b + 1:])
            yield tuple(nn), tuple(np_)


def bruhat_leq(f: Weight, g: Weight, max_states: int = 200_000) -> bool:
    """Decide f <= g (reductive Bruhat) or f <= g (super Bruhat).

    Both weights must share flavor and m (and finite n, when finite).  The
    decision runs a breadth-first search downward from g over dominant
    weights using the generating moves; every move strictly decreases the
    negative-block sum and never raises any entry, so pruning below the
    smallest entry of f keeps the search finite.
    """
    if f.flavor != g.flavor or f.m != g.m or f.tail != g.tail:
        raise ValueError("weights not comparable: mismatched flavor/shape")
    if not f.tail and len(f.pos) != len(g.pos):
        raise ValueError("weights not comparable: different finite blocks")
    if f == g:
        return True
    if eps_weight(f) != eps_weight(g):
        return False
    if f.tail:
        window = max(f.prefix_len, g.prefix_len, 1)
        ents = list(f.neg) + list(g.neg) + f.pos_upto(window) + g.pos_upto(window)
        if f.flavor == SUPER:
            window = max(window, max((v for v in ents), default=1))
        fm = (f.neg, tuple(f.pos_upto(window)))
        gm = (g.neg, tuple(g.pos_upto(window)))
    else:
        fm = (f.neg, f.pos)
        gm = (g.neg, g.pos)

    lo = min(min(fm[0]), min(fm[1], default=min(fm[0])))
    target_negsum = sum(fm[0])
    neighbors = _super_down_neighbors if f.flavor == SUPER else _reductive_down_neighbors

    seen = {gm}
    queue = deque([gm])
    while queue:
        cur = queue.popleft()
        for nb in neighbors(cur[0], cur[1], lo):
            if nb in seen:
                continue
            if nb == fm:
                return True
            # every move strictly lowers the negative-block sum
            if sum(nb[0]) <= target_negsum:
                continue
            seen.add(nb)
            if len(seen) > max_states:
                raise WindowExhausted("bruhat_leq search exceeded the state budget")
            queue.append(nb)
    return False
