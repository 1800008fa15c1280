"""Normal-form arithmetic in free nilpotent groups of class 1 and 2 and their
quotients by the squares of the generators.

An element is stored as ``x_1^a_1 ... x_n^a_n * prod_{i>j} z_ij^b_ij`` with
``z_ij = [x_i, x_j]``.  Commutator exponents are kept in a flat tuple following
the pair order (2,1), (3,1), (3,2), (4,1), ...
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from .words import GroupSpec, Letter, Word, letter

__all__ = [
    "NormalForm",
    "pairs",
    "pair_index",
    "identity",
    "generator",
    "basic_commutator",
    "from_exponents",
    "mul",
    "inv",
    "evaluate",
    "bset",
    "project_mod2",
    "weight",
    "central_decompose",
    "encode",
    "decode",
    "code_bits",
    "render_nf",
    "all_elements",
]


@lru_cache(maxsize=None)
def pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, j) for i in range(2, n + 1) for j in range(1, i))


def pair_index(i: int, j: int) -> int:
    if not i > j >= 1:
        raise ValueError(f"need i > j >= 1, got ({i}, {j})")
    return (i - 1) * (i - 2) // 2 + (j - 1)


@dataclass(frozen=True)
class NormalForm:
    spec: GroupSpec
    alpha: Tuple[int, ...]
    beta: Tuple[int, ...] = ()

    def __post_init__(self):
        n = self.spec.rank
        nb = len(pairs(n)) if self.spec.cls == 2 else 0
        if len(self.alpha) != n or len(self.beta) != nb:
            raise ValueError("exponent vector lengths do not match the group spec")
        if self.spec.quotient and any(e not in (0, 1) for e in self.alpha + self.beta):
            raise ValueError("quotient-mode exponents must be bits")

    def b(self, i: int, j: int) -> int:
        return self.beta[pair_index(i, j)]

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        return mul(self, other)

    def __str__(self) -> str:
        return render_nf(self)

    @property
    def code(self) -> int:
        return encode(self)

    def is_identity(self) -> bool:
        return not any(self.alpha) and not any(self.beta)


def _make(spec: GroupSpec, alpha, beta) -> NormalForm:
    if spec.quotient:
        alpha = [a & 1 for a in alpha]
        beta = [b & 1 for b in beta]
    if spec.cls == 1:
        beta = ()
    return NormalForm(spec, tuple(alpha), tuple(beta))


def from_exponents(spec: GroupSpec, alpha: Sequence[int], beta=None) -> NormalForm:
    """Build an element; ``beta`` may be a flat sequence or a dict {(i, j): exp}."""
    if beta is None:
        flat = [0] * (len(pairs(spec.rank)) if spec.cls == 2 else 0)
    elif isinstance(beta, dict):
        flat = [0] * len(pairs(spec.rank))
        for (i, j), e in beta.items():
            flat[pair_index(i, j)] = e
    else:
        flat = list(beta)
    return _make(spec, alpha, flat)


def identity(spec: GroupSpec) -> NormalForm:
    return from_exponents(spec, [0] * spec.rank)


def generator(spec: GroupSpec, i: int, e: int = 1) -> NormalForm:
    alpha = [0] * spec.rank
    alpha[i - 1] = e
    return from_exponents(spec, alpha)


def basic_commutator(spec: GroupSpec, i: int, j: int, e: int = 1) -> NormalForm:
    return from_exponents(spec, [0] * spec.rank, {(i, j): e})


def mul(a: NormalForm, b: NormalForm) -> NormalForm:
    # x_i^s x_j^t = x_j^t x_i^s z_ij^(st) for i > j, commutators central
    if a.spec != b.spec:
        raise ValueError(f"spec mismatch: {a.spec} vs {b.spec}")
    alpha = [p + q for p, q in zip(a.alpha, b.alpha)]
    if a.spec.cls == 1:
        return _make(a.spec, alpha, ())
    beta = [
        bij + cij + a.alpha[i - 1] * b.alpha[j - 1]
        for (i, j), bij, cij in zip(pairs(a.spec.rank), a.beta, b.beta)
    ]
    return _make(a.spec, alpha, beta)


def inv(g: NormalForm) -> NormalForm:
    alpha = [-a for a in g.alpha]
    if g.spec.cls == 1:
        return _make(g.spec, alpha, ())
    beta = [-b + g.alpha[i - 1] * g.alpha[j - 1] for (i, j), b in zip(pairs(g.spec.rank), g.beta)]
    return _make(g.spec, alpha, beta)


def evaluate(w: Sequence[Letter], spec: GroupSpec) -> NormalForm:
    """Left fold of :func:`mul` over the letters, done in place."""
    n = spec.rank
    alpha = [0] * n
    beta = [0] * (len(pairs(n)) if spec.cls == 2 else 0)
    for a in w:
        k, s = a.gen, a.sign
        if not 1 <= k <= n:
            raise ValueError(f"letter x{k} out of range for rank {n}")
        if spec.cls == 2:
            for i in range(k + 1, n + 1):
                if alpha[i - 1]:
                    beta[pair_index(i, k)] += alpha[i - 1] * s
        alpha[k - 1] += s
    return _make(spec, alpha, beta)


def bset(g: NormalForm) -> frozenset:
    if g.spec.cls != 2:
        raise ValueError("b-sets are defined for class 2 only")
    return frozenset(p for p, e in zip(pairs(g.spec.rank), g.beta) if e)


def project_mod2(g: NormalForm) -> NormalForm:
    return _make(g.spec.mod2(), g.alpha, g.beta)


def weight(g: NormalForm) -> int:
    if not g.spec.quotient:
        raise ValueError("weight is defined in quotient mode only")
    return sum(g.alpha) + sum(g.beta)


def central_decompose(c: NormalForm) -> list:
    """Words u_1..u_n with [u_1, x_1] ... [u_n, x_n] = c, for c central.

    u_j = prod_{i>j} x_i^{beta_ij}; works because commutators are central and
    bilinear in class 2.
    """
    spec = c.spec
    if spec.cls != 2:
        raise ValueError("central decomposition needs class 2")
    if any(c.alpha):
        raise ValueError("element is not in the commutator subgroup")
    n = spec.rank
    out = []
    for j in range(1, n + 1):
        u: list[Letter] = []
        for i in range(j + 1, n + 1):
            e = c.b(i, j)
            u.extend([letter(i, 1 if e > 0 else -1, spec)] * abs(e))
        out.append(tuple(u))
    return out


def encode(g: NormalForm) -> int:
    """Packed code: bit i-1 is alpha_i, bit n + idx(i, j) is beta_ij."""
    if not g.spec.quotient:
        raise ValueError("packed codes exist for quotient elements only")
    code = 0
    for k, a in enumerate(g.alpha + g.beta):
        code |= a << k
    return code


def decode(spec: GroupSpec, code: int) -> NormalForm:
    if not spec.quotient:
        raise ValueError("packed codes exist for quotient elements only")
    n = spec.rank
    nb = len(pairs(n)) if spec.cls == 2 else 0
    if not 0 <= code < 1 << (n + nb):
        raise ValueError(f"code {code} out of range for {spec}")
    bits = [(code >> k) & 1 for k in range(n + nb)]
    return NormalForm(spec, tuple(bits[:n]), tuple(bits[n:]))


def code_bits(g: NormalForm) -> str:
    """Exponents as a bit string a_1..a_n b_21 b_31 ..., low code bit first."""
    return "".join(str(e) for e in g.alpha + g.beta)


def group_order_log2(spec: GroupSpec) -> int:
    return spec.rank + (len(pairs(spec.rank)) if spec.cls == 2 else 0)


def all_elements(spec: GroupSpec):
    for code in range(1 << group_order_log2(spec)):
        yield decode(spec, code)


def render_nf(g: NormalForm) -> str:
    name = g.spec.letter_name
    toks = []
    for i, a in enumerate(g.alpha, 1):
        if a:
            toks.append(f"{name}{i}" if a == 1 else f"{name}{i}^{a}")
    for (i, j), b in zip(pairs(g.spec.rank), g.beta):
        if b:
            toks.append(f"z{i}.{j}" if b == 1 else f"z{i}.{j}^{b}")
    return " ".join(toks) or "e"


def to_word(g: NormalForm) -> Word:
    """A word spelling the normal form literally (z_ij expanded)."""
    from .words import commutator, power

    spec = g.spec
    out: list[Letter] = []
    for i, a in enumerate(g.alpha, 1):
        out.extend(power((letter(i, 1, spec),), a, spec))
    for (i, j), b in zip(pairs(spec.rank), g.beta):
        z = commutator((letter(i, 1, spec),), (letter(j, 1, spec),), spec)
        out.extend(power(z, b, spec))
    return tuple(out)
