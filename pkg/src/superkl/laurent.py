"""Exact arithmetic in Z[q, q^-1] with the bar involution q -> q^-1.

Polynomials are immutable and store only nonzero coefficients, keyed by
integer exponent.  Coefficients are arbitrary-precision Python ints: the
final answers produced elsewhere are small sums of q-powers, but Hecke
algebra intermediates can grow well past machine size.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """An element of Z[q, q^-1], stored as {exponent: coefficient}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        d: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            c = d.get(e, 0) + c
            if c:
                d[e] = c
            elif e in d:
                del d[e]
        self._terms = d
        self._hash = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def monomial(coeff: int, exp: int = 0) -> "LaurentPoly":
        return LaurentPoly({exp: coeff} if coeff else {})

    # -- basic queries -----------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def support(self) -> list[int]:
        return sorted(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self._terms)
        for e, c in other._terms.items():
            c = d.get(e, 0) + c
            if c:
                d[e] = c
            elif e in d:
                del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = d
        out._hash = None
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: -c for e, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        d: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                c = d.get(e, 0) + c1 * c2
                if c:
                    d[e] = c
                elif e in d:
                    del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = d
        out._hash = None
        return out

    def scale(self, coeff: int, exp: int = 0) -> "LaurentPoly":
        """Multiply by the monomial coeff * q^exp."""
        if coeff == 0:
            return ZERO
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e + exp: c * coeff for e, c in self._terms.items()}
        out._hash = None
        return out

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError when the quotient is not in the ring."""
        if other.is_zero():
            raise ValueError("division by zero polynomial")
        if self.is_zero():
            return ZERO
        rem = dict(self._terms)
        dlead = other.max_exp()
        dcoef = other._terms[dlead]
        quot: dict[int, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qc, r = divmod(c, dcoef)
            if r:
                raise ValueError(f"inexact division: {self} / {other}")
            qe = e - dlead
            quot[qe] = qc
            for de, dc in other._terms.items():
                k = qe + de
                v = rem.get(k, 0) - qc * dc
                if v:
                    rem[k] = v
                elif k in rem:
                    del rem[k]
        return LaurentPoly(quot)

    # -- the operations the rest of the engine relies on ---------------

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1: negate every exponent."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {-e: c for e, c in self._terms.items()}
        out._hash = None
        return out

    def eval_one(self) -> int:
        """Value at q = 1, i.e. the sum of all coefficients."""
        return sum(self._terms.values())

    def subst_neg_inv(self) -> "LaurentPoly":
        """Substitute q -> -q^-1 (used to read off positivity of l-polynomials)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {-e: (c if e % 2 == 0 else -c) for e, c in self._terms.items()}
        out._hash = None
        return out

    def in_q_positive(self) -> bool:
        """True when all exponents are >= 1 (the qZ[q] normalization condition)."""
        return all(e >= 1 for e in self._terms)

    def in_q_negative(self) -> bool:
        """True when all exponents are <= -1."""
        return all(e <= -1 for e in self._terms)

    # -- comparisons, hashing, display ---------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def to_pairs(self) -> list[list[int]]:
        """JSON form: [exponent, coefficient] pairs sorted by exponent."""
        return [[e, self._terms[e]] for e in sorted(self._terms)]

    @staticmethod
    def from_pairs(pairs: Iterable[Iterable[int]]) -> "LaurentPoly":
        return LaurentPoly((int(e), int(c)) for e, c in pairs)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            if e == 0:
                parts.append(f"{c}")
                continue
            v = "q" if e == 1 else ("q^-1" if e == -1 else f"q^{e}")
            if c == 1:
                parts.append(v)
            elif c == -1:
                parts.append(f"-{v}")
            else:
                parts.append(f"{c}*{v}")
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})


def q_power(exp: int, coeff: int = 1) -> LaurentPoly:
    """The monomial coeff * q^exp."""
    return LaurentPoly.monomial(coeff, exp)
