"""Independent reference computations, kept apart from the library's own paths."""
from collections import defaultdict
from itertools import product

from palwidth.words import GroupSpec, Letter


def collect(word, spec):
    """Normal form by letter exchange.

    Sorts letters by generator with adjacent swaps, using
    x_i^s x_j^t = x_j^t x_i^s [x_i, x_j]^(st) for i > j; commutators are central
    so they are accumulated in a counter.  Returns (alpha, {(i, j): beta}).
    """
    letters = []
    comm = defaultdict(int)
    for a in word:
        letters.append((a.gen, a.sign))
        k = len(letters) - 1
        while k > 0 and letters[k - 1][0] > letters[k][0]:
            (i, s), (j, t) = letters[k - 1], letters[k]
            if spec.cls == 2:
                comm[(i, j)] += s * t
            letters[k - 1], letters[k] = letters[k], letters[k - 1]
            k -= 1
    alpha = [0] * spec.rank
    for g, s in letters:
        alpha[g - 1] += s
    beta = {p: e for p, e in comm.items() if e}
    if spec.quotient:
        alpha = [a % 2 for a in alpha]
        beta = {p: e % 2 for p, e in beta.items() if e % 2}
    return alpha, beta


def as_oracle_form(g):
    """Library normal form in the oracle's (alpha, dict) shape."""
    from palwidth.nilpotent import pairs

    beta = {p: e for p, e in zip(pairs(g.spec.rank), g.beta) if e}
    return list(g.alpha), beta


def palindromic_words(spec, max_len):
    """All syntactic palindromes of length <= max_len over the spec's letters."""
    n = spec.rank
    alphabet = [Letter(i, 1) for i in range(1, n + 1)]
    if not spec.quotient:
        alphabet += [Letter(i, -1) for i in range(1, n + 1)]
    yield ()
    for length in range(1, max_len + 1):
        half = (length + 1) // 2
        for head in product(alphabet, repeat=half):
            tail = head[: length // 2][::-1]
            yield head + tail


def all_words(spec, max_len):
    n = spec.rank
    alphabet = [Letter(i, 1) for i in range(1, n + 1)]
    if not spec.quotient:
        alphabet += [Letter(i, -1) for i in range(1, n + 1)]
    for length in range(max_len + 1):
        yield from product(alphabet, repeat=length)


def brute_lengths(spec):
    """Palindromic lengths by iterated set products of normal forms."""
    from palwidth.nilpotent import identity, mul
    from palwidth.palindromes import enumerate_palindromes

    pals = enumerate_palindromes(spec)
    dist = {identity(spec): 0}
    level = {identity(spec)}
    k = 0
    while level:
        k += 1
        nxt = set()
        for g in level:
            for p in pals:
                h = mul(g, p)
                if h not in dist:
                    dist[h] = k
                    nxt.add(h)
        level = nxt
    return dist
