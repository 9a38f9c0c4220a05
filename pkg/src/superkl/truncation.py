"""Truncation maps between windows and the shift normalization.

Truncation drops positive entries beyond a window when they match the
standard tail and kills anything else; on expansions it acts termwise.
Finite super weights outside the truncation-reachable cone are first
shifted down by a multiple of the all-ones weight, which leaves every
transition coefficient unchanged.
"""

from __future__ import annotations

from .atypicality import j_atypicality, super_atypicality
from .laurent import LaurentPoly
from .weights import SUPER, Weight, WindowExhausted


def sufficient_n(f: Weight) -> int:
    """The smallest window where the atypicality data of f is complete.

    Super: minimal n with #f = #f^(n) and standard tail beyond n.
    Reductive: minimal n where *f^(n) equals the stable profinite degree.
    """
    if not f.tail:
        return len(f.pos)
    if f.flavor == SUPER:
        target = super_atypicality(f)
        n = f.prefix_len
        while True:
            fin = f.truncate(n)
            count = sum(1 for v in fin.neg if v in set(fin.pos))
            if count == target:
                return n
            n += 1
            if n > f.prefix_len + 4 * (abs(max(f.neg, default=0)) + f.m + 2):
                raise WindowExhausted(f"no sufficient window found for {f}")
    target = j_atypicality(f)
    n = f.prefix_len
    while True:
        fin = f.truncate(n)
        if fin is not None and j_atypicality(fin) == target:
            return n
        n += 1
        if n > f.prefix_len + 400:
            raise WindowExhausted(f"no sufficient window found for {f}")


def trunc_weight(x: Weight, n: int) -> Weight | None:
    """Restriction to I(m|n), or None when the dropped entries are not tail."""
    return x.truncate(n)


def trunc_terms(terms: dict[Weight, LaurentPoly], n: int) -> dict[Weight, LaurentPoly]:
    """Termwise truncation of a monomial expansion; killed terms vanish."""
    out: dict[Weight, LaurentPoly] = {}
    for g, c in terms.items():
        gn = g.truncate(n)
        if gn is None:
            continue
        acc = out.get(gn, LaurentPoly()) + c
        if acc.is_zero():
            out.pop(gn, None)
        else:
            out[gn] = acc
    return out


def shift_weight(f: Weight, p: int) -> Weight:
    """Subtract p from every entry of a finite-block weight."""
    if f.tail:
        raise ValueError("shift applies to finite-block weights")
    return Weight(f.flavor, tuple(v - p for v in f.neg),
                  tuple(v - p for v in f.pos), tail=False)


def minimal_shift(f: Weight) -> int:
    """The least p >= 0 making a finite super weight tail-extendable (f(n) <= n)."""
    if f.flavor != SUPER:
        raise ValueError("the shift normalization is a super-side device")
    if f.tail or not f.pos:
        return 0
    return max(0, f.pos[-1] - len(f.pos))


def to_profinite(f: Weight) -> tuple[Weight, int]:
    """Shift a finite super weight into the reachable cone and attach the tail.

    Returns (profinite weight, applied shift p); transition coefficients of
    the original are those of the shifted weight.
    """
    if f.tail:
        return f, 0
    p = minimal_shift(f)
    g = shift_weight(f, p)
    return Weight(g.flavor, g.neg, g.pos, tail=True), p
