"""Group words over x_1..x_n (free mode) or the involutions y_1..y_n (quotient mode).

A word is a plain tuple of :class:`Letter`; powers are always expanded to unit
letters, so palindromicity is a letter-by-letter comparison.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Tuple

__all__ = [
    "GroupSpec",
    "Letter",
    "Word",
    "ParseError",
    "letter",
    "parse",
    "render",
    "reverse",
    "is_palindrome",
    "free_reduce",
    "concat",
    "inverse",
    "power",
    "commutator",
    "random_word",
]


@dataclass(frozen=True)
class GroupSpec:
    """Rank, nilpotency class (1 or 2) and whether generators are involutions."""

    rank: int
    cls: int = 2
    quotient: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if self.cls not in (1, 2):
            raise ValueError(f"class must be 1 or 2, got {self.cls}")

    @property
    def letter_name(self) -> str:
        return "y" if self.quotient else "x"

    def free(self) -> "GroupSpec":
        return GroupSpec(self.rank, self.cls, False)

    def mod2(self) -> "GroupSpec":
        return GroupSpec(self.rank, self.cls, True)


class Letter(NamedTuple):
    gen: int
    sign: int = 1

    def inverted(self) -> "Letter":
        return Letter(self.gen, -self.sign)


Word = Tuple[Letter, ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def letter(gen: int, sign: int = 1, spec: GroupSpec | None = None) -> Letter:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if spec is not None:
        if not 1 <= gen <= spec.rank:
            raise ValueError(f"generator {gen} out of range 1..{spec.rank}")
        if spec.quotient:
            sign = 1
    return Letter(gen, sign)


_TOKEN = re.compile(r"(?:([xy])(\d+)|z(\d+)\.(\d+))(?:\^(-?\d+))?\Z")


def parse(text: str, spec: GroupSpec) -> Word:
    """Parse whitespace-separated tokens ``e``, ``x3``, ``x2^-4``, ``z3.1^2``."""
    out: list[Letter] = []
    for m in re.finditer(r"\S+", text):
        tok, pos = m.group(), m.start()
        if tok == "e":
            continue
        t = _TOKEN.match(tok)
        if t is None:
            raise ParseError(f"bad token {tok!r}", pos)
        name, k, zi, zj, exp = t.groups()
        e = int(exp) if exp is not None else 1
        if name is not None:
            if name != spec.letter_name:
                raise ParseError(
                    f"letter {name!r} not allowed here, expected {spec.letter_name!r}", pos
                )
            g = int(k)
            _check_index(g, spec, pos)
            base: Word = (letter(g, 1, spec),)
        else:
            i, j = int(zi), int(zj)
            if i <= j:
                raise ParseError(f"commutator token needs i > j, got {tok!r}", pos)
            _check_index(i, spec, pos)
            _check_index(j, spec, pos)
            base = commutator((letter(i, 1, spec),), (letter(j, 1, spec),), spec)
        out.extend(power(base, e, spec))
    return tuple(out)


def _check_index(g: int, spec: GroupSpec, pos: int) -> None:
    if not 1 <= g <= spec.rank:
        raise ParseError(f"generator index {g} out of range 1..{spec.rank}", pos)


def render(w: Sequence[Letter], spec: GroupSpec) -> str:
    """Inverse of :func:`parse`; runs of one letter are re-compressed."""
    if not w:
        return "e"
    name = spec.letter_name
    tokens = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        e = (j - i) * w[i].sign
        tokens.append(f"{name}{w[i].gen}" if e == 1 else f"{name}{w[i].gen}^{e}")
        i = j
    return " ".join(tokens)


def reverse(w: Sequence[Letter]) -> Word:
    return tuple(reversed(w))


def is_palindrome(w: Sequence[Letter]) -> bool:
    """Syntactic test: no reduction is applied first."""
    n = len(w)
    return all(w[k] == w[n - 1 - k] for k in range(n // 2))


def free_reduce(w: Iterable[Letter], spec: GroupSpec) -> Word:
    stack: list[Letter] = []
    for a in w:
        if stack and stack[-1].gen == a.gen and (spec.quotient or stack[-1].sign == -a.sign):
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def concat(*words: Sequence[Letter]) -> Word:
    return tuple(a for w in words for a in w)


def inverse(w: Sequence[Letter], spec: GroupSpec | None = None) -> Word:
    if spec is not None and spec.quotient:
        return reverse(w)
    return tuple(a.inverted() for a in reversed(w))


def power(w: Sequence[Letter], m: int, spec: GroupSpec | None = None) -> Word:
    base = tuple(w) if m >= 0 else inverse(w, spec)
    return base * abs(m)


def commutator(a: Sequence[Letter], b: Sequence[Letter], spec: GroupSpec | None = None) -> Word:
    """The word a^-1 b^-1 a b."""
    return concat(inverse(a, spec), inverse(b, spec), a, b)


def random_word(spec: GroupSpec, length: int, seed: int) -> Word:
    if length < 0:
        raise ValueError("length must be non-negative")
    rng = random.Random(seed)
    n = spec.rank
    if spec.quotient:
        return tuple(Letter(rng.randint(1, n), 1) for _ in range(length))
    return tuple(Letter(rng.randint(1, n), rng.choice((1, -1))) for _ in range(length))
