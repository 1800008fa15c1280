"""Exact palindromic lengths in the finite quotients by breadth-first search.

Elements are packed integer codes (see :func:`palwidth.nilpotent.encode`).  Every
non-identity palindrome has alpha equal to a unit vector e_j, so right
multiplication by it is ``g ^ p ^ corr_j[alpha(g)]`` where ``corr_j`` sets the
bits z_ij for every i > j with alpha_i(g) = 1.
"""
from __future__ import annotations

import io
import json
import logging
import os
import struct
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .nilpotent import (
    NormalForm,
    all_elements,
    bset,
    central_decompose,
    code_bits,
    decode,
    encode,
    evaluate,
    from_exponents,
    group_order_log2,
    inv,
    mul,
    pair_index,
    pairs,
    render_nf,
)
from .palindromes import PalindromeForm, lift, palindrome_codes, palindrome_nf, recognize
from .words import GroupSpec, Word, concat, is_palindrome, letter, parse, render, reverse

log = logging.getLogger(__name__)

MAGIC = b"PWT1"
DEFAULT_MAX_RANK = {1: 20, 2: 6}
UNREACHED = 255


class RankLimitError(ValueError):
    pass


@dataclass
class LengthTable:
    spec: GroupSpec
    lengths: np.ndarray  # uint8, indexed by packed code
    parent: np.ndarray  # int64 predecessor code, -1 at the identity
    parent_pal: np.ndarray  # int64 palindrome code, -1 at the identity

    def __len__(self) -> int:
        return len(self.lengths)

    @property
    def width(self) -> int:
        return int(self.lengths.max())


@dataclass
class Factorization:
    factors: Tuple[Word, ...]
    target: NormalForm

    def __len__(self) -> int:
        return len(self.factors)

    def product(self) -> NormalForm:
        return evaluate(concat(*self.factors), self.target.spec)

    def is_valid(self) -> bool:
        return all(is_palindrome(f) for f in self.factors) and self.product() == self.target

    def render(self) -> str:
        return " . ".join(render(f, self.target.spec) for f in self.factors) or "e"


@dataclass
class Certificate:
    n: int
    statements: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s["passed"] for s in self.statements)


def _check_spec(spec: GroupSpec, max_rank: Optional[int]) -> None:
    if not spec.quotient:
        raise ValueError("exact lengths are only computed in the finite quotients")
    limit = DEFAULT_MAX_RANK[spec.cls] if max_rank is None else max_rank
    if spec.rank > limit:
        mib = (1 << group_order_log2(spec)) * 17 / 2**20
        raise RankLimitError(
            f"rank {spec.rank} exceeds the limit {limit} for class {spec.cls} "
            f"(table would need about {mib:.0f} MiB); raise it with --max-rank-override"
        )


def _corrections(spec: GroupSpec) -> np.ndarray:
    """corr[j-1][a] = beta bits set when an element with alpha bits ``a`` is
    multiplied on the right by something with alpha = e_j."""
    n = spec.rank
    corr = np.zeros((n, 1 << n), dtype=np.int64)
    if spec.cls == 1:
        return corr
    for j in range(1, n + 1):
        for a in range(1 << n):
            m = 0
            for i in range(j + 1, n + 1):
                if a >> (i - 1) & 1:
                    m |= 1 << (n + pair_index(i, j))
            corr[j - 1, a] = m
    return corr


def right_multiply(spec: GroupSpec, codes: np.ndarray, pal: int) -> np.ndarray:
    """Vectorised g * p for a fixed palindrome code with a single alpha bit."""
    n = spec.rank
    amask = (1 << n) - 1
    a = pal & amask
    if a == 0:
        return codes.copy()
    j = a.bit_length()
    if a != 1 << (j - 1):
        raise ValueError("fast path needs a palindrome with a single alpha bit")
    corr = _corrections(spec)[j - 1]
    return codes ^ pal ^ corr[codes & amask]


def build_length_table(spec: GroupSpec, max_rank: Optional[int] = None) -> LengthTable:
    _check_spec(spec, max_rank)
    n = spec.rank
    size = 1 << group_order_log2(spec)
    amask = (1 << n) - 1
    corr = _corrections(spec)
    pals = [p for p in palindrome_codes(spec) if p != 0]

    lengths = np.full(size, UNREACHED, dtype=np.uint8)
    parent = np.full(size, -1, dtype=np.int64)
    parent_pal = np.full(size, -1, dtype=np.int64)
    lengths[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        found = []
        # ascending palindrome codes: first writer per element has the smallest code;
        # g -> g*p is a bijection, so the predecessor is then unique
        for p in pals:
            j = (p & amask).bit_length()
            nxt = frontier ^ p ^ corr[j - 1][frontier & amask]
            fresh = lengths[nxt] == UNREACHED
            nxt, pred = nxt[fresh], frontier[fresh]
            lengths[nxt] = level
            parent[nxt] = pred
            parent_pal[nxt] = p
            found.append(nxt)
        frontier = np.sort(np.concatenate(found)) if found else np.zeros(0, dtype=np.int64)
        log.debug("level %d: %d new elements", level, frontier.size)
    if (lengths == UNREACHED).any():
        raise RuntimeError("palindromes failed to generate the group")
    return LengthTable(spec, lengths, parent, parent_pal)


def _check_member(g: NormalForm, table: LengthTable) -> None:
    if g.spec != table.spec:
        raise ValueError(f"element of {g.spec} looked up in a table for {table.spec}")


def palindromic_length(g: NormalForm, table: LengthTable) -> int:
    _check_member(g, table)
    return int(table.lengths[encode(g)])


def palindromic_width(spec: GroupSpec, max_rank: Optional[int] = None, cache=None) -> int:
    return get_table(spec, max_rank, cache).width


def spectrum(spec: GroupSpec, max_rank: Optional[int] = None, cache=None) -> Dict[int, int]:
    counts = np.bincount(get_table(spec, max_rank, cache).lengths)
    return {k: int(c) for k, c in enumerate(counts) if c}


def palindrome_word(spec: GroupSpec, code: int) -> Word:
    forms = recognize(decode(spec, code))
    if not forms:
        raise ValueError(f"code {code} is not a palindrome")
    return lift(forms[0])


def witness(g: NormalForm, table: LengthTable) -> Factorization:
    _check_member(g, table)
    code = encode(g)
    rev = []
    while code != 0:
        rev.append(palindrome_word(table.spec, int(table.parent_pal[code])))
        code = int(table.parent[code])
    return Factorization(tuple(reversed(rev)), g)


def decompose_2n(g: NormalForm) -> Factorization:
    """Search-free factorisation into at most 2n palindromes.

    g = prod_j [u_j, y_j] y_j^a_j, and each [u, y] y^a = rev(u) y u y^(1+a) is a
    single palindrome when a = 1 and two palindromes when a = 0.
    """
    spec = g.spec
    if not spec.quotient or spec.cls != 2:
        raise ValueError("decompose_2n needs a class-2 quotient element")
    head = from_exponents(spec, g.alpha)
    central = mul(inv(head), g)
    us = central_decompose(central)
    factors: List[Word] = []
    for j, (u, a) in enumerate(zip(us, g.alpha), 1):
        y = (letter(j, 1, spec),)
        if not u:
            if a:
                factors.append(y)
            continue
        factors.append(reverse(u) + y + u)
        if not a:
            factors.append(y)
    return Factorization(tuple(factors), g)


def decompose_free(g: NormalForm) -> Factorization:
    """Factorisation of a free-mode class-2 element into at most 3n palindromes.

    g = prod_j [u_j, x_j] x_j^a_j and u^-1 x^-1 u x^(1+a) splits as the two
    palindromes of a conjugate followed by the palindrome x^(1+a).
    """
    from .identities import conjugate_factor
    from .words import power

    spec = g.spec
    if spec.quotient or spec.cls != 2:
        raise ValueError("decompose_free needs a free-mode class-2 element")
    head = from_exponents(spec, g.alpha)
    us = central_decompose(mul(inv(head), g))
    factors: List[Word] = []
    for j, (u, a) in enumerate(zip(us, g.alpha), 1):
        x = (letter(j, 1, spec),)
        if u:
            factors.extend(conjugate_factor(u, power(x, -1)))
            tail = power(x, 1 + a)
        else:
            tail = power(x, a)
        if tail:
            factors.append(tail)
    return Factorization(tuple(factors), g)


def project_word(w: Word) -> Word:
    """Letterwise image x_i^(+-1) -> y_i."""
    return tuple(letter(a.gen) for a in w)


def verify_lemma1(n: int) -> Certificate:
    """Set-level checks on the b-sets of the maximal-support palindromes p_1..p_n.

    Statements (2) and (3) compare Bas_n with the union of the b-sets of the
    palindromes left after dropping p_i (resp. p_i and p_j).  Sets are held as
    bitmasks over the pair index.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    spec = GroupSpec(n, 2, True)
    all_pairs = pairs(n)
    full = (1 << len(all_pairs)) - 1

    def mask(s) -> int:
        return sum(1 << pair_index(i, j) for i, j in s)

    b = [mask(bset(palindrome_nf(PalindromeForm(spec, j, 1, (1,) * (n - 1))))) for j in range(1, n + 1)]
    # prefix[k] = b_1 | ... | b_k, suffix[k] = b_k | ... | b_n (1-based)
    prefix, suffix = [0] * (n + 2), [0] * (n + 2)
    for k in range(1, n + 1):
        prefix[k] = prefix[k - 1] | b[k - 1]
    for k in range(n, 0, -1):
        suffix[k] = suffix[k + 1] | b[k - 1]
    cert = Certificate(n)
    cert.statements.append({"statement": 1, "passed": prefix[n] == full})
    for i in range(1, n + 1):
        cert.statements.append({"statement": 2, "i": i, "passed": prefix[i - 1] | suffix[i + 1] == full})
    for i in range(1, n + 1):
        middle = 0
        for j in range(i + 1, n + 1):
            rest = prefix[i - 1] | middle | suffix[j + 1]
            middle |= b[j - 1]
            gone, missing = full & ~rest, []
            while gone:
                low = gone & -gone
                missing.append(list(all_pairs[low.bit_length() - 1]))
                gone ^= low
            cert.statements.append(
                {
                    "statement": 3,
                    "i": i,
                    "j": j,
                    "missing": missing,
                    "passed": rest != full and [j, i] in missing,
                }
            )
    return cert


def verify_minimum(g: NormalForm, bound: int, spec: GroupSpec, table: Optional[LengthTable] = None) -> bool:
    """True iff no product of fewer than ``bound`` palindromes equals ``g``."""
    table = table if table is not None else build_length_table(spec)
    return palindromic_length(g, table) >= bound


def all_commutators(spec: GroupSpec) -> NormalForm:
    return from_exponents(spec, [0] * spec.rank, [1] * len(pairs(spec.rank)))


# -- rank-3 case table -----------------------------------------------------------

def load_section4_rows() -> List[dict]:
    text = resources.files("palwidth").joinpath("data/section4_rows.json").read_text()
    return json.loads(text)["rows"]


def check_row(row: dict, table: Optional[LengthTable] = None) -> dict:
    """Evaluate one shipped rank-3 identity row.

    Chunks that are not syntactic palindromes count as products of their
    letters.  Rows whose chunks do not parse in the quotient alphabet get only
    their length bound checked.
    """
    spec = GroupSpec(3, 2, True)
    table = table if table is not None else build_length_table(spec)
    element = evaluate(parse(row["element"], spec), spec)
    out = {
        "code": row["code"],
        "element_matches_code": code_bits(element) == row["code"],
        "bound": row["bound"],
        "length": palindromic_length(element, table),
    }
    out["bound_holds"] = out["length"] <= row["bound"]
    try:
        chunks = [parse(c, spec) for c in row["chunks"]]
    except ValueError as exc:
        out.update(parsed=False, error=str(exc), identity_holds=None, factors=None)
        return out
    factors: List[Word] = []
    for c in chunks:
        factors.extend([c] if is_palindrome(c) else [(a,) for a in c])
    fact = Factorization(tuple(factors), element)
    out.update(
        parsed=True,
        factors=fact.render(),
        all_palindromic=all(is_palindrome(f) for f in factors),
        identity_holds=fact.product() == element,
        product=render_nf(fact.product()),
    )
    return out


def section4_table(table: Optional[LengthTable] = None) -> List[dict]:
    spec = GroupSpec(3, 2, True)
    table = table if table is not None else build_length_table(spec)
    records = []
    for g in all_elements(spec):
        records.append(
            {
                "code": encode(g),
                "bits": code_bits(g),
                "element": render_nf(g),
                "length": palindromic_length(g, table),
                "witness": witness(g, table).render(),
            }
        )
    return records


# -- cache file ------------------------------------------------------------------

def cache_filename(spec: GroupSpec) -> str:
    return f"pwt_n{spec.rank}_c{spec.cls}.bin"


def save_table(table: LengthTable, path) -> None:
    spec = table.spec
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IBQ", spec.rank, spec.cls, len(table)))
        fh.write(table.lengths.astype("<u1").tobytes())
        rec = np.empty((len(table) - 1, 2), dtype="<u8")
        rec[:, 0] = table.parent[1:]
        rec[:, 1] = table.parent_pal[1:]
        fh.write(rec.tobytes())


def load_table(path, spec: GroupSpec) -> Optional[LengthTable]:
    """Read a cache file; None if it is missing or keyed differently."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except FileNotFoundError:
        return None
    head = 4 + struct.calcsize("<IBQ")
    if len(data) < head or data[:4] != MAGIC:
        return None
    rank, cls, count = struct.unpack("<IBQ", data[4:head])
    if (rank, cls) != (spec.rank, spec.cls) or count != 1 << group_order_log2(spec):
        return None
    if len(data) != head + count + 16 * (count - 1):
        return None
    lengths = np.frombuffer(data, dtype="<u1", count=count, offset=head).astype(np.uint8)
    rec = np.frombuffer(data, dtype="<u8", offset=head + count).reshape(-1, 2).astype(np.int64)
    parent = np.concatenate([[-1], rec[:, 0]])
    parent_pal = np.concatenate([[-1], rec[:, 1]])
    return LengthTable(spec, lengths, parent, parent_pal)


def get_table(spec: GroupSpec, max_rank: Optional[int] = None, cache=None) -> LengthTable:
    """Build a table, reading and writing ``cache`` (a directory) when given."""
    _check_spec(spec, max_rank)
    if cache is None:
        return build_length_table(spec, max_rank)
    path = os.path.join(cache, cache_filename(spec))
    table = load_table(path, spec)
    if table is None:
        table = build_length_table(spec, max_rank)
        os.makedirs(cache, exist_ok=True)
        save_table(table, path)
    return table


def export_csv(table: LengthTable, fh: io.TextIOBase) -> None:
    import csv

    w = csv.writer(fh)
    w.writerow(["code", "alpha", "beta", "length", "witness"])
    for g in all_elements(table.spec):
        w.writerow(
            [
                encode(g),
                "".join(map(str, g.alpha)),
                "".join(map(str, g.beta)),
                palindromic_length(g, table),
                witness(g, table).render(),
            ]
        )
