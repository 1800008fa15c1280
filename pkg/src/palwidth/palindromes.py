"""Palindrome normal forms in class-2 (and class-1) nilpotent groups.

Every palindrome is ``u x_j^a0 reverse(u)``; in normal form the pivot ``j``
carries ``a0`` and every other generator ``t`` carries ``2 * a_t``.  Modulo
squares the outer exponents vanish and only the commutators touching the pivot
survive.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import product
from typing import List, Tuple

from .nilpotent import NormalForm, encode, from_exponents, identity, pairs
from .words import GroupSpec, Letter, Word, letter, power, reverse

__all__ = [
    "PalindromeForm",
    "palindrome_nf",
    "lift",
    "recognize",
    "canonical",
    "enumerate_palindromes",
    "palindrome_codes",
    "write_codes_csv",
]


@dataclass(frozen=True)
class PalindromeForm:
    spec: GroupSpec
    pivot: int
    pivot_exponent: int
    outer: Tuple[int, ...]  # exponents of the non-pivot generators, increasing index

    def __post_init__(self):
        n = self.spec.rank
        if not 1 <= self.pivot <= n:
            raise ValueError(f"pivot {self.pivot} out of range 1..{n}")
        if len(self.outer) != n - 1:
            raise ValueError(f"need {n - 1} outer exponents, got {len(self.outer)}")
        if self.spec.quotient and any(e not in (0, 1) for e in (self.pivot_exponent,) + self.outer):
            raise ValueError("quotient-mode parameters must be bits")

    def outer_exponents(self) -> dict:
        others = [t for t in range(1, self.spec.rank + 1) if t != self.pivot]
        return dict(zip(others, self.outer))


def palindrome_nf(f: PalindromeForm) -> NormalForm:
    spec, j, a0 = f.spec, f.pivot, f.pivot_exponent
    outer = f.outer_exponents()
    alpha = [a0 if t == j else 2 * outer[t] for t in range(1, spec.rank + 1)]
    if spec.cls == 1:
        return from_exponents(spec, alpha)
    beta = []
    for i, k in pairs(spec.rank):
        if i == j:
            beta.append(a0 * outer[k])
        elif k == j:
            beta.append(a0 * outer[i])
        else:
            beta.append(2 * outer[i] * outer[k])
    return from_exponents(spec, alpha, beta)


def lift(f: PalindromeForm) -> Word:
    """The palindromic word u x_j^a0 reverse(u), u ordered by increasing index."""
    spec = f.spec
    u: list[Letter] = []
    for t, e in f.outer_exponents().items():
        u.extend(power((letter(t, 1, spec),), e, spec))
    mid = power((letter(f.pivot, 1, spec),), f.pivot_exponent, spec)
    return tuple(u) + mid + reverse(u)


def canonical(f: PalindromeForm) -> PalindromeForm:
    """Quotient forms with a zero pivot exponent all denote the identity."""
    zeros = (0,) * (f.spec.rank - 1)
    if f.spec.quotient and f.pivot_exponent == 0:
        return PalindromeForm(f.spec, 1, 0, zeros)
    if f.spec.quotient and f.spec.cls == 1:
        return PalindromeForm(f.spec, f.pivot, f.pivot_exponent, zeros)
    return f


def recognize(g: NormalForm) -> List[PalindromeForm]:
    """All palindrome forms (one per feasible pivot) evaluating to ``g``."""
    spec = g.spec
    n = spec.rank
    out = []
    for j in range(1, n + 1):
        others = [t for t in range(1, n + 1) if t != j]
        if spec.quotient:
            if any(g.alpha[t - 1] for t in others):
                continue
            a0 = g.alpha[j - 1]
            if a0 == 0:
                if g.is_identity():
                    out.append(PalindromeForm(spec, j, 0, (0,) * (n - 1)))
                continue
            if spec.cls == 1:
                outer = (0,) * (n - 1)
            else:
                outer = tuple(g.b(max(t, j), min(t, j)) for t in others)
        else:
            if any(g.alpha[t - 1] % 2 for t in others):
                continue
            a0 = g.alpha[j - 1]
            outer = tuple(g.alpha[t - 1] // 2 for t in others)
        f = PalindromeForm(spec, j, a0, outer)
        if palindrome_nf(f) == g:
            out.append(f)
    return out


def enumerate_palindromes(spec: GroupSpec) -> set:
    if not spec.quotient:
        raise ValueError("palindromes of the free-mode group form an infinite set")
    n = spec.rank
    found = {identity(spec)}
    outers = product((0, 1), repeat=n - 1) if spec.cls == 2 else [(0,) * (n - 1)]
    outers = list(outers)
    for j in range(1, n + 1):
        for outer in outers:
            found.add(palindrome_nf(PalindromeForm(spec, j, 1, outer)))
    return found


def palindrome_codes(spec: GroupSpec) -> List[int]:
    return sorted(encode(g) for g in enumerate_palindromes(spec))


def write_codes_csv(spec: GroupSpec, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["code"])
        for c in palindrome_codes(spec):
            w.writerow([c])
