"""Canonical, dual canonical and monomial basis transition data.

Reductive side: the closed subset-sum formula for the canonical basis, the
Chevalley-word procedure recomputing it, and the preimage sums giving the
monomial-in-dual and dual-in-monomial expansions.  Super side: the closed
theta-composite formulas over the matched pairs; profinite results are
exact, finite-n requests go through shift / tail extension / truncation.

Expansions that live in a completed Fock space can be infinite; those are
exposed per target coefficient or over an explicit entry window.  All
theta-composites run on raw (unsorted) chains with pair positions fixed at
the start; sorting happens once at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .atypicality import sigma_plus, super_matched_pairs
from .laurent import LaurentPoly, ONE, ZERO, q_power
from .operators import (_red_swap, _rep, _shift_bound, _super_pair_apply,
                        chevalley_act, f_sigma, materialize, red_theta,
                        super_theta)
from .truncation import (minimal_shift, shift_weight, sufficient_n,
                         to_profinite, trunc_terms)
from .weights import REDUCTIVE, SUPER, Weight, eps_weight, tail_value


class InvariantViolation(AssertionError):
    """A structural fact asserted by the theory failed on concrete data."""


@dataclass
class Expansion:
    """A finite formal sum of (dominant weight, Laurent polynomial) terms."""

    index: Weight
    basis: str                      # "U" | "L" | "K_in_U" | "K_in_L"
    terms: dict[Weight, LaurentPoly] = field(default_factory=dict)
    window: tuple[int, int] | None = None

    def coeff(self, g: Weight) -> LaurentPoly:
        return self.terms.get(g, ZERO)

    def add(self, g: Weight, c: LaurentPoly) -> None:
        acc = self.terms.get(g, ZERO) + c
        if acc.is_zero():
            self.terms.pop(g, None)
        else:
            self.terms[g] = acc

    def sorted_items(self) -> list[tuple[Weight, LaurentPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Expansion):
            return NotImplemented
        return self.index == other.index and self.terms == other.terms

    def to_json(self) -> dict:
        return {
            "index": self.index.to_json(),
            "basis": self.basis,
            "terms": [{"weight": g.to_json(), "poly": c.to_pairs()}
                      for g, c in self.sorted_items()],
            "window": list(self.window) if self.window else None,
        }


def _powerset(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def _binary_thetas(k: int):
    for mask in range(1 << k):
        yield tuple((mask >> t) & 1 for t in range(k))


def _signed_q(exp: int) -> LaurentPoly:
    """(-q)^exp as a Laurent polynomial (exp may be negative)."""
    return q_power(exp, -1 if exp % 2 else 1)


# -- reductive canonical basis ----------------------------------------------


def red_canonical(f: Weight) -> Expansion:
    """U_f as the subset sum over positive pairs: q^|S| on the S-swap of f."""
    if f.flavor != REDUCTIVE:
        raise ValueError("red_canonical expects a reductive weight")
    pairs = sigma_plus(f).pairs
    out = Expansion(f, "U")
    for subset in _powerset(pairs):
        out.add(f_sigma(f, subset), q_power(len(subset)))
    if len(out.terms) != 2 ** len(pairs):
        raise InvariantViolation(f"expected 2^{len(pairs)} distinct terms for {f}")
    return out


def _procedure_step(f: Weight) -> tuple[tuple[str, int], Weight] | None:
    """One step of the atypicality-reducing procedure; None when J-typical."""
    pairs = sigma_plus(f).pairs
    if not pairs:
        return None
    i = max(a for a, _ in pairs)
    fi = f.entry(i)
    if i == -1 or fi - 1 != f.entry(i + 1):
        neg = list(f.neg)
        neg[f.m + i] = fi - 1
        return ("F", fi - 1), Weight(f.flavor, neg, f.pos, f.tail)
    # the entry below is fi - 1 and it recurs on the positive side
    pos = list(f.pos)
    s = pos.index(fi - 1)
    pos[s] = fi
    return ("E", fi - 1), Weight(f.flavor, f.neg, pos, f.tail)


def red_procedure_word(f: Weight, max_steps: int = 10_000) -> tuple[list[tuple[str, int]], Weight]:
    """The Chevalley word and J-typical endpoint of the reduction procedure."""
    word: list[tuple[str, int]] = []
    cur = f
    for _ in range(max_steps):
        step = _procedure_step(cur)
        if step is None:
            return word, cur
        gen, cur = step
        word.append(gen)
    raise InvariantViolation(f"procedure did not terminate within {max_steps} steps")


def red_canonical_procedure(f: Weight) -> Expansion:
    """U_f recomputed by applying the recorded Chevalley word to the endpoint."""
    if f.flavor != REDUCTIVE:
        raise ValueError("red_canonical_procedure expects a reductive weight")
    if f.tail:
        from .atypicality import _certified_window
        w = _certified_window(f) + 2
        finite = red_canonical_procedure(f.truncate(w))
        out = Expansion(f, "U")
        for g, c in finite.terms.items():
            out.add(Weight(g.flavor, g.neg, g.pos, tail=True), c)
        return out
    word, base = red_procedure_word(f)
    terms: dict[Weight, LaurentPoly] = {base: ONE}
    for gen in reversed(word):
        terms = chevalley_act(gen, terms)
    out = Expansion(f, "U")
    for g, c in terms.items():
        out.add(g, c)
    return out


def red_down_closure(f: Weight, max_states: int = 100_000) -> list[Weight]:
    """All dominant weights <= f in the reductive Bruhat order (finite n)."""
    if f.tail:
        raise ValueError("down-closures are enumerated at finite n")
    seen = {f}
    stack = [f]
    while stack:
        cur = stack.pop()
        neg, pos = list(cur.neg), list(cur.pos)
        negset, posset = set(neg), set(pos)
        for a, vi in enumerate(neg):
            if vi in posset:
                continue
            for b, vj in enumerate(pos):
                if vj >= vi or vj in negset:
                    continue
                n2 = sorted(neg[:a] + [vj] + neg[a + 1:], reverse=True)
                p2 = sorted(pos[:b] + [vi] + pos[b + 1:], reverse=True)
                w = Weight(cur.flavor, n2, p2, False)
                if w not in seen:
                    seen.add(w)
                    if len(seen) > max_states:
                        raise InvariantViolation("down-closure exploded")
                    stack.append(w)
    return sorted(seen, key=Weight.sort_key)


# -- reductive inverse-direction expansions ---------------------------------


def red_K_in_U(f: Weight) -> Expansion:
    """K_f = sum over theta in N^m of (-q)^|theta| U at the L'-composite of f."""
    if f.tail:
        raise ValueError("computed at finite n; truncate profinite input first")
    out = Expansion(f, "K_in_U")
    m = f.m

    def dfs(raw, slot: int, total: int):
        # L' applies L_{-1} first: slots descend from m-1 (i = -1)
        if slot < 0:
            out.add(_rep(raw[0], raw[1], f.flavor, False), _signed_q(total))
            return
        i = -m + slot
        cur = raw
        power = 0
        while True:
            dfs(cur, slot - 1, total + power)
            nxt = _red_swap(cur[0], cur[1], i, positive=True)
            if nxt is None:
                return
            cur = nxt
            power += 1

    dfs(materialize(f), m - 1, 0)
    return out


def red_kl_u(g: Weight, f: Weight) -> LaurentPoly:
    """The canonical-basis coefficient u_{g,f} (a single q-power or zero)."""
    return red_canonical(f).coeff(g)


def red_kl_l(g: Weight, f: Weight) -> LaurentPoly:
    """l_{g,f}: sum of (-q)^-|theta| over R'-composites sending g to f."""
    if g.flavor != REDUCTIVE or f.flavor != REDUCTIVE:
        raise ValueError("reductive weights expected")
    if g.tail != f.tail or g.m != f.m:
        return ZERO
    if eps_weight(g) != eps_weight(f):
        return ZERO
    if g.tail:
        w = max(sufficient_n(g), sufficient_n(f)) + 2
        gf, ff = g.truncate(w), f.truncate(w)
        if gf is None or ff is None:
            raise ValueError("window too small for stable truncation")
        return red_kl_l(gf, ff)
    total = ZERO
    m = f.m
    target_negsum = sum(f.neg)

    def dfs(raw, slot: int, power_total: int):
        # R' applies R_{-m} first: slots ascend from 0 (i = -m)
        nonlocal total
        if slot > m - 1:
            if _rep(raw[0], raw[1], REDUCTIVE, False) == f:
                total = total + _signed_q(-power_total)
            return
        i = -m + slot
        cur = raw
        power = 0
        while True:
            dfs(cur, slot + 1, power_total + power)
            if sum(cur[0]) >= target_negsum:
                return
            nxt = _red_swap(cur[0], cur[1], i, positive=False)
            if nxt is None:
                return
            cur = nxt
            power += 1

    dfs(materialize(g), 0, 0)
    return total


def _multiset_candidates(f: Weight) -> list[Weight]:
    """Dominant finite weights sharing the entry multiset of f."""
    values = sorted(list(f.neg) + list(f.pos), reverse=True)
    n = len(f.pos)
    out: list[Weight] = []
    seen: set[Weight] = set()
    for negvals in combinations(sorted(set(values), reverse=True), f.m):
        posvals = list(values)
        for v in negvals:
            posvals.remove(v)
        if len(set(posvals)) != len(posvals) or len(posvals) != n:
            continue
        g = Weight(REDUCTIVE, tuple(sorted(negvals, reverse=True)),
                   tuple(sorted(posvals, reverse=True)), False)
        if g not in seen:
            seen.add(g)
            out.append(g)
    return sorted(out, key=Weight.sort_key)


def red_dual_canonical(f: Weight, width: int | None = None) -> Expansion:
    """L_f over all candidates with the entry multiset of f.

    Profinite input is truncated at a stable window (optionally widened to
    `width`); terms outside that window's reach are not reported.
    """
    if f.flavor != REDUCTIVE:
        raise ValueError("red_dual_canonical expects a reductive weight")
    if f.tail:
        w = max(sufficient_n(f) + 2, width or 0)
        finite = red_dual_canonical(f.truncate(w))
        out = Expansion(f, "L")
        for g, c in finite.terms.items():
            out.add(Weight(g.flavor, g.neg, g.pos, tail=True), c)
        return out
    out = Expansion(f, "L")
    for g in _multiset_candidates(f):
        c = red_kl_l(g, f)
        if not c.is_zero():
            out.add(g, c)
    return out


def red_K_in_L(f: Weight) -> Expansion:
    """K_f = sum of q^-|theta| L_g over g with a binary R-composite onto f.

    Each contributing g admits exactly one theta in {0,1}^m; multiplicity is
    reported as a violation.
    """
    if f.tail:
        raise ValueError("computed at finite n; truncate profinite input first")
    out = Expansion(f, "K_in_L")
    for g in _multiset_candidates(f):
        matches = [sum(t) for t in _binary_thetas(f.m)
                   if red_theta(g, t, "R") == f]
        if not matches:
            continue
        if len(matches) > 1:
            raise InvariantViolation(f"non-unique binary theta for {g} -> {f}")
        out.add(g, q_power(-matches[0]))
    return out


# -- super canonical basis ---------------------------------------------------


def super_canonical(f: Weight) -> Expansion:
    """U_f = sum over theta in {0,1}^#f of q^|theta| K at the L-composite.

    Finite-n input is shifted into the reachable cone, solved profinitely,
    truncated back and unshifted.
    """
    if f.flavor != SUPER:
        raise ValueError("super_canonical expects a super weight")
    if not f.tail:
        prof, p = to_profinite(f)
        full = super_canonical(prof)
        terms = trunc_terms(full.terms, len(f.pos))
        out = Expansion(f, "U")
        for g, c in terms.items():
            out.add(shift_weight(g, -p), c)
        return out
    neg, pos = materialize(f)
    pairs = super_matched_pairs(neg, pos)
    out = Expansion(f, "U")
    for theta in _binary_thetas(len(pairs)):
        out.add(super_theta(f, theta, "L"), q_power(sum(theta)))
    return out


def super_kl_u(g: Weight, f: Weight) -> LaurentPoly:
    return super_canonical(f).coeff(g)


def _raw_relsum(raw, flavor: str) -> int:
    """Entry sum minus the standard-tail sum over the same positions."""
    neg, pos = raw
    return sum(neg) + sum(v - tail_value(flavor, j)
                          for j, v in enumerate(pos, start=1))


def super_K_in_U_coeff(f: Weight, target: Weight) -> LaurentPoly:
    """Coefficient of U_target in K_f = sum (-q)^|theta| U_{L'_theta(f)}.

    Only finitely many theta keep the composite above the target: every
    single lowering drops the tail-relative entry sum by at least 2.
    """
    if f.flavor != SUPER or not f.tail or not target.tail:
        raise ValueError("demand-driven super expansions are profinite")
    start = materialize(f)
    pairs = super_matched_pairs(*start)
    k = len(pairs)
    floor = _raw_relsum(materialize(target, max(len(start[1]), target.prefix_len)),
                        SUPER) if False else _rel_target(target)
    total = ZERO

    def dfs(raw, pair_idx: int, total_theta: int):
        # L' applies the innermost pair (index k-1) first
        nonlocal total
        if pair_idx < 0:
            if _rep(raw[0], raw[1], SUPER, True) == target:
                total = total + _signed_q(total_theta)
            return
        i, j = pairs[pair_idx]
        cur = raw
        power = 0
        bound = _shift_bound(cur[0], cur[1]) + 2 * abs(floor)
        while True:
            dfs(cur, pair_idx - 1, total_theta + power)
            if _raw_relsum(cur, SUPER) - 2 < floor:
                return
            cur = _super_pair_apply(cur[0], cur[1], i, j, raising=False, bound=bound)
            power += 1

    dfs(start, k - 1, 0)
    return total


def _rel_target(w: Weight) -> int:
    neg, pos = materialize(w, w.prefix_len if w.tail else None)
    return _raw_relsum((neg, pos), w.flavor)


def super_K_in_L(f: Weight, window: tuple[int, int]) -> Expansion:
    """K_f = sum of q^-|theta_g| L_g over g with a binary R-composite onto f."""
    if f.flavor != SUPER or not f.tail:
        raise ValueError("this expansion is computed profinitely")
    out = Expansion(f, "K_in_L", window=window)
    wbase = sufficient_n(f) + 2
    for g in eps_candidates(f, window):
        w = max(wbase, sufficient_n(g) + 2)
        gf, ff = g.truncate(w), f.truncate(w)
        if gf is None or ff is None:
            continue
        pairs = super_matched_pairs(list(gf.neg), list(gf.pos))
        matches = [sum(t) for t in _binary_thetas(len(pairs))
                   if super_theta(gf, t, "R") == ff]
        if not matches:
            continue
        if len(matches) > 1:
            raise InvariantViolation(f"non-unique theta_g for {g} -> {f}")
        out.add(g, q_power(-matches[0]))
    return out


def super_dual_canonical(f: Weight, window: tuple[int, int]) -> Expansion:
    """L_f = sum of (-q)^-|theta| K_g over R'-composites onto f in the window."""
    if f.flavor != SUPER or not f.tail:
        raise ValueError("this expansion is computed profinitely")
    out = Expansion(f, "L", window=window)
    wbase = sufficient_n(f) + 2
    for g in eps_candidates(f, window):
        c = super_kl_l(g, f, wbase)
        if not c.is_zero():
            out.add(g, c)
    return out


def super_kl_l(g: Weight, f: Weight, wbase: int | None = None) -> LaurentPoly:
    """l_{g,f} as the N^#g R'-composite sum, evaluated on a stable slice."""
    if g.flavor != SUPER or f.flavor != SUPER:
        raise ValueError("super weights expected")
    if g.tail != f.tail or g.m != f.m:
        return ZERO
    if not f.tail:
        if len(g.pos) != len(f.pos):
            return ZERO
        p = max(minimal_shift(f), minimal_shift(g))
        fp = Weight(SUPER, *_shift_pair(f, p), tail=True)
        gp = Weight(SUPER, *_shift_pair(g, p), tail=True)
        return super_kl_l(gp, fp)
    if eps_weight(g) != eps_weight(f):
        return ZERO
    if wbase is None:
        wbase = sufficient_n(f) + 2
    w = max(wbase, sufficient_n(g) + 2)
    gf, ff = g.truncate(w), f.truncate(w)
    if gf is None or ff is None:
        return ZERO
    start = (list(gf.neg), list(gf.pos))
    pairs = super_matched_pairs(*start)
    k = len(pairs)
    ceiling = sum(ff.neg) + sum(ff.pos)
    total = ZERO

    def dfs(raw, pair_idx: int, total_theta: int):
        # R' applies the outermost pair (index 0) first
        nonlocal total
        if pair_idx >= k:
            if _rep(raw[0], raw[1], SUPER, False) == ff:
                total = total + _signed_q(-total_theta)
            return
        i, j = pairs[pair_idx]
        cur = raw
        power = 0
        bound = _shift_bound(cur[0], cur[1]) + 2 * (abs(ceiling) + 2)
        while True:
            dfs(cur, pair_idx + 1, total_theta + power)
            if sum(cur[0]) + sum(cur[1]) + 2 > ceiling:
                return
            cur = _super_pair_apply(cur[0], cur[1], i, j, raising=True, bound=bound)
            power += 1

    dfs(start, 0, 0)
    return total


def _shift_pair(f: Weight, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return (tuple(v - p for v in f.neg), tuple(v - p for v in f.pos))


def kl_u(g: Weight, f: Weight) -> LaurentPoly:
    """u_{g,f} in either flavor."""
    if f.flavor == REDUCTIVE:
        return red_kl_u(g, f)
    return super_kl_u(g, f)


def kl_l(g: Weight, f: Weight) -> LaurentPoly:
    """l_{g,f} in either flavor."""
    if f.flavor == REDUCTIVE:
        return red_kl_l(g, f)
    return super_kl_l(g, f)


# -- candidate enumeration ----------------------------------------------------


def eps_candidates(f: Weight, window: tuple[int, int]) -> list[Weight]:
    """Profinite dominant weights sharing wt^eps with f, negative entries in window.

    The positive block is forced by the epsilon weight once the negative
    block is chosen, so enumeration is over negative blocks only.
    """
    if not f.tail:
        raise ValueError("eps_candidates enumerates profinite weights")
    lo, hi = window
    target = eps_weight(f)
    sgn_pos = -1 if f.flavor == SUPER else 1
    in_tail = (lambda v: v >= 1) if f.flavor == SUPER else (lambda v: v <= 0)
    out: list[Weight] = []
    for negvals in combinations(range(hi, lo - 1, -1), f.m):
        res = dict(target)

        def bump(v, c):
            nv = res.get(v, 0) - c
            if nv:
                res[v] = nv
            else:
                res.pop(v, None)

        for k, v in enumerate(negvals):
            bump(v, 1)
            bump(f.m - k, -1)
        # what is left must be the positive-block deviation from the tail
        added, removed, ok = [], [], True
        for v, c in res.items():
            if c == sgn_pos:
                added.append(v)
            elif c == -sgn_pos:
                removed.append(v)
            else:
                ok = False
                break
        if not ok:
            continue
        if any(in_tail(v) for v in added) or any(not in_tail(v) for v in removed):
            continue
        horizon = max([abs(v) + 1 for v in added + removed] + [1]) + 1
        remset, addset = set(removed), set(added)
        posvals = {tail_value(f.flavor, j) for j in range(1, horizon + 1)} - remset
        posvals |= addset
        seq = sorted(posvals) if f.flavor == SUPER else sorted(posvals, reverse=True)
        try:
            g = Weight(f.flavor, tuple(negvals), tuple(seq), tail=True)
        except ValueError:
            continue
        out.append(g)
    return sorted(out, key=Weight.sort_key)
