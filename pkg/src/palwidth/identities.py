"""Word-level palindrome factorisations of conjugates and commutators.

All constructors return unreduced words, each of which is a syntactic
palindrome.  Products are checked by free reduction, or by involutive
reduction (y_i y_i -> e) for involution generators.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Sequence, Tuple

from .words import (
    GroupSpec,
    Letter,
    Word,
    commutator,
    concat,
    free_reduce,
    inverse,
    is_palindrome,
    power,
    render,
    reverse,
)

__all__ = [
    "IdentityReport",
    "conjugate_factor",
    "commutator_factor_3",
    "commutator_factor_4",
    "involutive_commutator_factor",
    "involutive_commutator_y",
    "conjugated_commutator_factor",
    "run_suite",
]


def _need_palindrome(*ws: Sequence[Letter]) -> None:
    for w in ws:
        if not is_palindrome(w):
            raise ValueError("argument must be a palindromic word")


def _need_involutive(spec: GroupSpec | None) -> GroupSpec:
    if spec is not None and not spec.quotient:
        raise ValueError("construction needs involution generators")
    return spec


def conjugate_factor(v: Word, p: Word) -> Tuple[Word, Word]:
    """v^-1 p v as (v^-1 p rev(v)^-1) * (rev(v) v)."""
    _need_palindrome(p)
    v, p = tuple(v), tuple(p)
    rv = reverse(v)
    return concat(inverse(v), p, inverse(rv)), concat(rv, v)


def commutator_factor_3(u: Word, p: Word) -> Tuple[Word, Word, Word]:
    """[u, p] = (u^-1 p^-1 u) p with the conjugate split in two."""
    _need_palindrome(p)
    a, b = conjugate_factor(u, inverse(p))
    return a, b, tuple(p)


def commutator_factor_4(u: Word, p: Word, q: Word) -> Tuple[Word, Word, Word, Word]:
    """[u, pq] = (u^-1 q^-1 rev(u)^-1)(rev(u) p^-1 u) p q."""
    _need_palindrome(p, q)
    u, p, q = tuple(u), tuple(p), tuple(q)
    ru = reverse(u)
    return concat(inverse(u), inverse(q), inverse(ru)), concat(ru, inverse(p), u), p, q


def involutive_commutator_factor(g: Word, p: Word, spec: GroupSpec | None = None) -> Tuple[Word, Word]:
    _need_involutive(spec)
    _need_palindrome(p)
    g, p = tuple(g), tuple(p)
    return concat(reverse(g), reverse(p), g), p


def involutive_commutator_y(g: Word, i: int, a: int, spec: GroupSpec | None = None) -> Tuple[Word, ...]:
    """[g, y_i] y_i^a = rev(g) y_i g y_i^(1+a): one palindrome if a = 1, else two."""
    _need_involutive(spec)
    if a not in (0, 1):
        raise ValueError("a must be 0 or 1")
    g = tuple(g)
    y = (Letter(i, 1),)
    head = concat(reverse(g), y, g)
    return (head,) if a else (head, y)


def conjugated_commutator_factor(g: Word, i: int, h: Word, spec: GroupSpec | None = None) -> Tuple[Word, Word]:
    """h^-1 [g, y_i] h = (rev(h) rev(g) y_i g h)(rev(h) y_i h)."""
    _need_involutive(spec)
    g, h = tuple(g), tuple(h)
    y = (Letter(i, 1),)
    return concat(reverse(h), reverse(g), y, g, h), concat(reverse(h), y, h)


# -- randomized verification -------------------------------------------------------

@dataclass
class IdentityReport:
    name: str
    trials: int
    failures: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _rand_word(rng: random.Random, spec: GroupSpec, max_len: int) -> Word:
    n, k = spec.rank, rng.randint(0, max_len)
    if spec.quotient:
        return tuple(Letter(rng.randint(1, n), 1) for _ in range(k))
    return tuple(Letter(rng.randint(1, n), rng.choice((1, -1))) for _ in range(k))


def _rand_palindrome(rng: random.Random, spec: GroupSpec, max_half: int) -> Word:
    u = _rand_word(rng, spec, max_half)
    mid = _rand_word(rng, spec, 1)
    return u + mid + reverse(u)


def _same(a: Sequence[Letter], b: Sequence[Letter], spec: GroupSpec) -> bool:
    return free_reduce(a, spec) == free_reduce(b, spec)


def _trial_power(rng, free, inv):
    p = _rand_palindrome(rng, free, 4)
    m = rng.randint(-5, 5)
    w = power(p, m)
    expect = free_reduce(power(free_reduce(p, free), m), free)
    ok = is_palindrome(w) and free_reduce(w, free) == expect
    return ok, {"p": p, "m": m}, free


def _trial_conjugate(rng, free, inv):
    v, p = _rand_word(rng, free, 6), _rand_palindrome(rng, free, 3)
    out = conjugate_factor(v, p)
    return _check(out, 2, concat(inverse(v), p, v), free), {"v": v, "p": p}, free


def _trial_comm3(rng, free, inv):
    u, p = _rand_word(rng, free, 6), _rand_palindrome(rng, free, 3)
    out = commutator_factor_3(u, p)
    return _check(out, 3, commutator(u, p), free), {"u": u, "p": p}, free


def _trial_comm4(rng, free, inv):
    u = _rand_word(rng, free, 6)
    p, q = _rand_palindrome(rng, free, 3), _rand_palindrome(rng, free, 3)
    out = commutator_factor_4(u, p, q)
    return _check(out, 4, commutator(u, p + q), free), {"u": u, "p": p, "q": q}, free


def _trial_inv_comm(rng, free, inv):
    g, p = _rand_word(rng, inv, 6), _rand_palindrome(rng, inv, 3)
    out = involutive_commutator_factor(g, p, inv)
    return _check(out, 2, commutator(g, p, inv), inv), {"g": g, "p": p}, inv


def _trial_inv_comm_y(rng, free, inv):
    g = _rand_word(rng, inv, 6)
    i, a = rng.randint(1, inv.rank), rng.randint(0, 1)
    y = (Letter(i, 1),)
    out = involutive_commutator_y(g, i, a, inv)
    target = commutator(g, y, inv) + y * a
    return _check(out, 2 - a, target, inv), {"g": g, "i": i, "a": a}, inv


def _trial_conj_comm(rng, free, inv):
    g, h = _rand_word(rng, inv, 6), _rand_word(rng, inv, 6)
    i = rng.randint(1, inv.rank)
    out = conjugated_commutator_factor(g, i, h, inv)
    target = concat(inverse(h, inv), commutator(g, (Letter(i, 1),), inv), h)
    return _check(out, 2, target, inv), {"g": g, "i": i, "h": h}, inv


def _check(factors, count, target, spec) -> bool:
    return (
        len(factors) == count
        and all(is_palindrome(f) for f in factors)
        and _same(concat(*factors), target, spec)
    )


SUITE: List[Tuple[str, Callable]] = [
    ("power", _trial_power),
    ("conjugate_factor", _trial_conjugate),
    ("commutator_factor_3", _trial_comm3),
    ("commutator_factor_4", _trial_comm4),
    ("involutive_commutator_factor", _trial_inv_comm),
    ("involutive_commutator_y", _trial_inv_comm_y),
    ("conjugated_commutator_factor", _trial_conj_comm),
]


def run_suite(trials: int, seed: int = 0) -> List[IdentityReport]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    reports = []
    for name, trial in SUITE:
        rep = IdentityReport(name, trials)
        for t in range(trials):
            rng = random.Random(f"{seed}:{name}:{t}")
            n = rng.randint(1, 4)
            ok, args, spec = trial(rng, GroupSpec(n, 2, False), GroupSpec(n, 2, True))
            if not ok:
                rep.failures.append(
                    {k: render(v, spec) if isinstance(v, tuple) else v for k, v in args.items()}
                )
        reports.append(rep)
    return reports


def reports_json(reports: List[IdentityReport]) -> str:
    return json.dumps(
        [
            {"identity": r.name, "trials": r.trials, "failures": len(r.failures), "reproducers": r.failures}
            for r in reports
        ],
        indent=2,
    )
