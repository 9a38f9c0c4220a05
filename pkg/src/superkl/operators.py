"""Weight-moving operators.

Super side: the single-pair lowering/raising maps L_{i,j}, R_{i,j} move a
matched pair of equal entries down/up by the smallest admissible amount,
where admissibility asks the shifted weight, and every nested (for L) or
enclosing (for R) single-pair image shifted the same way, to stay
conjugate-dominant.  Theta-composites apply powers of these across the
matched pairs in the four prescribed orders.

Reductive side: the per-index maps swap a value across the wall at its
positive/negative pair, with theta-composites over the negative indices.

All operators work on raw (unsorted) arrangements internally; entry points
take and return dominant weights.
"""

from __future__ import annotations

from typing import Sequence

from .atypicality import sigma_raw, super_matched_pairs, _certified_window
from .laurent import LaurentPoly, ONE, q_power
from .weights import (REDUCTIVE, SUPER, Weight, WindowExhausted, dominant_rep,
                      tail_value)

Raw = tuple[list[int], list[int]]


def _conj_dominant(neg: Sequence[int], pos: Sequence[int]) -> bool:
    return len(set(neg)) == len(neg) and len(set(pos)) == len(pos)


def materialize(f: Weight, window: int | None = None) -> Raw:
    """Expand a weight to (neg, pos) lists; profinite tails out to `window`."""
    if f.tail:
        if window is None:
            window = pick_window(f)
        return list(f.neg), f.pos_upto(window)
    return list(f.neg), list(f.pos)


def pick_window(f: Weight) -> int:
    """A window wide enough for matched pairs and downward moves.

    Super: every matched pair lies within max(prefix, largest negative entry).
    Reductive: the certified Sigma window.
    """
    if not f.tail:
        return len(f.pos)
    if f.flavor == SUPER:
        return max([f.prefix_len, 1] + [v for v in f.neg if v > 0])
    return _certified_window(f)


def _rep(neg: Sequence[int], pos: Sequence[int], flavor: str, tail: bool) -> Weight:
    rep = dominant_rep(neg, pos, flavor, tail)
    if rep is None:
        raise ValueError(f"raw arrangement has a repeated block entry: {neg}|{pos}")
    return rep[0]


# -- super single-pair operators -------------------------------------------


def _shifted(neg: list[int], pos: list[int], i: int, j: int, amount: int) -> Raw:
    n2, p2 = list(neg), list(pos)
    n2[len(neg) + i] += amount
    p2[j - 1] += amount
    return n2, p2


def _super_pair_apply(neg: list[int], pos: list[int], i: int, j: int,
                      raising: bool, bound: int) -> Raw:
    """Apply L_{i,j} (raising=False) or R_{i,j} (raising=True) once."""
    m = len(neg)
    if neg[m + i] != pos[j - 1]:
        raise ValueError(f"entries at ({i}|{j}) are not matched")

    def nested_pairs() -> list[tuple[int, int]]:
        out = []
        for k in range(-m, 0):
            for l in range(1, len(pos) + 1):
                if neg[m + k] != pos[l - 1]:
                    continue
                inside = i < k and l < j
                outside = k < i and j < l
                if (outside if raising else inside):
                    out.append((k, l))
        return out

    step = 1 if raising else -1
    inner_images = [
        _super_pair_apply(neg, pos, k, l, raising, bound) for k, l in nested_pairs()
    ]
    for a in range(1, bound + 1):
        amt = step * a
        if not _conj_dominant(*_shifted(neg, pos, i, j, amt)):
            continue
        if all(_conj_dominant(*_shifted(n2, p2, i, j, amt)) for n2, p2 in inner_images):
            return _shifted(neg, pos, i, j, amt)
    raise WindowExhausted(f"no admissible shift for pair ({i}|{j}) within {bound}")


def _shift_bound(neg: Sequence[int], pos: Sequence[int]) -> int:
    vals = list(neg) + list(pos)
    return (max(vals) - min(vals)) + len(vals) + 2 if vals else 4


def super_L(f: Weight, i: int, j: int) -> Weight:
    """(L_{i,j}(f))^+ for a single matched pair."""
    neg, pos = materialize(f)
    neg, pos = _super_pair_apply(neg, pos, i, j, raising=False,
                                 bound=_shift_bound(neg, pos))
    return _rep(neg, pos, f.flavor, f.tail)


def super_R(f: Weight, i: int, j: int) -> Weight:
    """(R_{i,j}(f))^+; profinite weights are evaluated through a truncation."""
    if f.tail:
        return _super_R_profinite(f, lambda raw: _one_pair(raw, i, j))
    neg, pos = materialize(f)
    neg, pos = _super_pair_apply(neg, pos, i, j, raising=True,
                                 bound=_shift_bound(neg, pos))
    return _rep(neg, pos, f.flavor, f.tail)


def _one_pair(raw: Raw, i: int, j: int) -> Raw:
    neg, pos = raw
    return _super_pair_apply(neg, pos, i, j, raising=True,
                             bound=_shift_bound(neg, pos))


VARIANTS = ("L", "L'", "R", "R'")


def _pair_order(pairs: list[tuple[int, int]], variant: str) -> list[int]:
    """Order of application over pair indices 1..k (most negative i first)."""
    k = len(pairs)
    forward = list(range(k))           # pair 1 = (i_1, j_1), outermost
    if variant in ("L", "R'"):
        return forward
    return list(reversed(forward))


def super_theta(f: Weight, theta: Sequence[int], variant: str) -> Weight:
    """The theta-composite of super L/R operators over the matched pairs of f.

    theta[l] is the power applied at the (l+1)-th matched pair (pairs listed
    with i ascending, hence j descending).
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    raising = variant.startswith("R")
    if f.tail and raising:
        return _super_R_profinite(f, lambda raw: _apply_theta(raw, theta, variant))
    neg, pos = materialize(f)
    neg, pos = _apply_theta((neg, pos), theta, variant)
    return _rep(neg, pos, f.flavor, f.tail)


def _apply_theta(raw: Raw, theta: Sequence[int], variant: str) -> Raw:
    neg, pos = list(raw[0]), list(raw[1])
    pairs = super_matched_pairs(neg, pos)
    if len(theta) != len(pairs):
        raise ValueError(f"theta length {len(theta)} != {len(pairs)} matched pairs")
    raising = variant.startswith("R")
    bound = _shift_bound(neg, pos) + 2 * sum(theta)
    for idx in _pair_order(pairs, variant):
        i, j = pairs[idx]
        for _ in range(theta[idx]):
            neg, pos = _super_pair_apply(neg, pos, i, j, raising, bound)
    return neg, pos


def _super_R_profinite(f: Weight, apply_raw) -> Weight:
    """Evaluate an R-composite on a profinite weight via stable truncations.

    The result must agree between consecutive sufficient windows; a mismatch
    means the requested window did not stabilize and is reported.
    """
    from .truncation import sufficient_n

    w = sufficient_n(f) + 1
    results = []
    for window in (w, w + 1):
        neg, pos = materialize(f, window)
        n2, p2 = apply_raw((neg, pos))
        results.append(_rep(n2, p2, f.flavor, True))
    if results[0] != results[1]:
        raise WindowExhausted(f"R-composite did not stabilize at window {w} for {f}")
    return results[0]


# -- reductive per-index operators ------------------------------------------


def _red_swap(neg: list[int], pos: list[int], i: int, positive: bool) -> Raw | None:
    pairs = sigma_raw(neg, pos, positive=positive)
    j = next((b for a, b in pairs if a == i), None)
    if j is None:
        return None
    n2, p2 = list(neg), list(pos)
    n2[len(neg) + i], p2[j - 1] = p2[j - 1], n2[len(neg) + i]
    return n2, p2


def red_L(f: Weight, i: int) -> Weight | None:
    """(L_i(f))^+: swap across the wall at the positive pair of i, if any."""
    neg, pos = materialize(f)
    raw = _red_swap(neg, pos, i, positive=True)
    return None if raw is None else _rep(raw[0], raw[1], f.flavor, f.tail)


def red_R(f: Weight, i: int) -> Weight | None:
    """(R_i(f))^+: swap at the negative pair of i, if any."""
    neg, pos = materialize(f, _neg_window(f))
    raw = _red_swap(neg, pos, i, positive=False)
    return None if raw is None else _rep(raw[0], raw[1], f.flavor, f.tail)


def _neg_window(f: Weight) -> int | None:
    """Window valid for Sigma^- membership tests (values above dropped tail)."""
    if not f.tail:
        return None
    minval = min(list(f.neg) + list(f.pos), default=0)
    return max(f.prefix_len, 1, 2 - minval)


def red_theta(f: Weight, theta: Sequence[int], variant: str) -> Weight | None:
    """Reductive theta-composites; theta is indexed by i = -m..-1 in order.

    L  applies L_{-m} first and L_{-1} last, L' the reverse;
    R' applies R_{-m} first and R_{-1} last, R  the reverse.
    Returns None when a positively-powered factor has no pair.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if len(theta) != f.m:
        raise ValueError(f"theta length {len(theta)} != m = {f.m}")
    positive = variant.startswith("L")
    order = list(range(f.m)) if variant in ("L", "R'") else list(reversed(range(f.m)))

    def run(extra: int) -> Weight | None:
        if f.tail:
            window = max(pick_window(f), _neg_window(f)) + extra
            neg, pos = materialize(f, window)
        else:
            neg, pos = materialize(f)
        for slot in order:  # slot s corresponds to index i = -m + s
            i = -f.m + slot
            for _ in range(theta[slot]):
                raw = _red_swap(neg, pos, i, positive=positive)
                if raw is None:
                    return None
                neg, pos = raw
        return _rep(neg, pos, f.flavor, f.tail)

    result = run(2)
    if f.tail:
        check = run(5)
        if result != check:
            raise WindowExhausted(f"reductive composite unstable at window for {f}")
    return result


def f_sigma(f: Weight, pairs: Sequence[tuple[int, int]]) -> Weight:
    """Simultaneous cross-wall swap at a disjoint pair subset, re-sorted."""
    neg, pos = materialize(f)
    m = len(neg)
    firsts = [i for i, _ in pairs]
    seconds = [j for _, j in pairs]
    if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
        raise ValueError("pair subset must have distinct i's and j's")
    for i, j in pairs:
        neg[m + i], pos[j - 1] = pos[j - 1], neg[m + i]
    return _rep(neg, pos, f.flavor, f.tail)


# -- Chevalley generator action on the reductive Fock space -----------------


def _replace_value(block: list[int], old: int, new: int) -> list[int] | None:
    """The e-tilde substitution: old -> new when old occurs and new does not."""
    if old not in block or new in block:
        return None
    out = [new if v == old else v for v in block]
    return out


def _count(block: list[int], v: int) -> int:
    return 1 if v in block else 0


def _act_on_weight(a: int, g: Weight, lowering: bool) -> list[tuple[Weight, LaurentPoly]]:
    """One Chevalley generator on a single monomial basis weight.

    lowering=True is F_a (value a -> a+1), lowering=False is E_a (a+1 -> a).
    """
    if g.flavor != REDUCTIVE:
        raise ValueError("the monomial Fock action is implemented reductively")
    window = None
    if g.tail:
        window = max(g.prefix_len + 2, 2 - min(a, 0) + 2, 2)
    neg, pos = materialize(g, window)
    out: list[tuple[Weight, LaurentPoly]] = []
    if lowering:
        nn = _replace_value(neg, a, a + 1)
        if nn is not None:
            out.append((_rep(nn, pos, g.flavor, g.tail), ONE))
        np_ = _replace_value(pos, a, a + 1)
        if np_ is not None:
            exp = _count(neg, a) - _count(neg, a + 1)
            out.append((_rep(neg, np_, g.flavor, g.tail), q_power(exp)))
    else:
        np_ = _replace_value(pos, a + 1, a)
        if np_ is not None:
            out.append((_rep(neg, np_, g.flavor, g.tail), ONE))
        nn = _replace_value(neg, a + 1, a)
        if nn is not None:
            exp = _count(pos, a + 1) - _count(pos, a)
            out.append((_rep(nn, pos, g.flavor, g.tail), q_power(exp)))
    return out


def chevalley_act(gen: tuple[str, int], terms: dict[Weight, LaurentPoly]) -> dict[Weight, LaurentPoly]:
    """Apply E_a or F_a (gen = ("E", a) / ("F", a)) to a monomial expansion."""
    kind, a = gen
    if kind not in ("E", "F"):
        raise ValueError(f"unknown generator kind {kind!r}")
    out: dict[Weight, LaurentPoly] = {}
    for g, coeff in terms.items():
        for h, c in _act_on_weight(a, g, lowering=(kind == "F")):
            acc = out.get(h, LaurentPoly()) + coeff * c
            if acc.is_zero():
                out.pop(h, None)
            else:
                out[h] = acc
    return out


def chevalley_E(a: int, terms: dict[Weight, LaurentPoly]) -> dict[Weight, LaurentPoly]:
    return chevalley_act(("E", a), terms)


def chevalley_F(a: int, terms: dict[Weight, LaurentPoly]) -> dict[Weight, LaurentPoly]:
    return chevalley_act(("F", a), terms)
