"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents, each exponent itself an :class:`Ordinal`.
Only the operations the tree engine needs are provided: comparison,
successor, limit tests, maxima and fundamental sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, total_ordering
from typing import Iterable, Tuple

Term = Tuple["Ordinal", int]


@total_ordering
@dataclass(frozen=True, eq=False)
class Ordinal:
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {exp!r}")
            if not isinstance(coeff, int) or coeff < 1:
                raise ValueError("coefficient must be >= 1")
            if prev is not None and compare(prev, exp) <= 0:
                raise ValueError("exponents must strictly decrease")
            prev = exp

    @cached_property
    def _key(self):
        return tuple((e._key, c) for e, c in self.terms)

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = nat(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = nat(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_limit(self) -> bool:
        return is_limit(self)

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0].is_zero:
            return self.terms[-1][1]
        return 0

    def as_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is not finite")
        return self.finite_part


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def nat(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("natural number must be >= 0")
    return Ordinal(((ZERO, n),)) if n else ZERO


def omega_power(exponent: Ordinal, coefficient: int = 1) -> Ordinal:
    return Ordinal(((exponent, coefficient),))


def successor(a: Ordinal) -> Ordinal:
    if a.terms and a.terms[-1][0].is_zero:
        return Ordinal(a.terms[:-1] + ((ZERO, a.terms[-1][1] + 1),))
    return Ordinal(a.terms + ((ZERO, 1),))


def predecessor(a: Ordinal) -> Ordinal:
    """Inverse of :func:`successor`; only defined on successor ordinals."""
    if not a.terms or not a.terms[-1][0].is_zero:
        raise ValueError(f"{a} is not a successor ordinal")
    c = a.terms[-1][1]
    return Ordinal(a.terms[:-1] + (((ZERO, c - 1),) if c > 1 else ()))


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and not a.terms[-1][0].is_zero


def ordinal_max(values: Iterable[Ordinal], default: Ordinal = ZERO) -> Ordinal:
    best = default
    for v in values:
        if compare(v, best) > 0:
            best = v
    return best


def fundamental_sequence(lam: Ordinal, i: int) -> Ordinal:
    """The ``i``-th element of the standard fundamental sequence of ``lam``.

    ``(g + w^(b+1))[i] = g + w^b * (i+1)`` and ``(g + w^l)[i] = g + w^(l[i])``
    for limit ``l``; a trailing coefficient ``c > 1`` is first split off as
    ``w^e * (c-1) + w^e``.
    """
    if not is_limit(lam):
        raise ValueError(f"{lam} is not a limit ordinal")
    if i < 0:
        raise ValueError("index must be >= 0")
    *head, (exp, coeff) = lam.terms
    prefix = tuple(head) + (((exp, coeff - 1),) if coeff > 1 else ())
    if is_limit(exp):
        tail = ((fundamental_sequence(exp, i), 1),)
    else:
        tail = ((predecessor(exp), i + 1),)
    return Ordinal(prefix + tail)


def _format_exponent(e: Ordinal) -> str:
    if e.is_finite:
        return str(e.as_int())
    if len(e.terms) == 1 and e.terms[0][1] == 1:
        return format_ordinal(e)
    return f"({format_ordinal(e)})"


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero:
            parts.append(str(coeff))
            continue
        base = "w" if exp == ONE else f"w^{_format_exponent(exp)}"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return "+".join(parts)
