import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from palwidth.nilpotent import (
    all_elements,
    basic_commutator,
    bset,
    central_decompose,
    code_bits,
    decode,
    encode,
    evaluate,
    from_exponents,
    generator,
    identity,
    inv,
    mul,
    pair_index,
    pairs,
    project_mod2,
    render_nf,
    to_word,
    weight,
)
from palwidth.palindromes import PalindromeForm, palindrome_nf
from palwidth.words import GroupSpec, Letter, commutator, concat, inverse, parse, random_word

from oracles import as_oracle_form, collect

Q3 = GroupSpec(3, 2, True)


def elements(spec, bound=6):
    nb = len(pairs(spec.rank)) if spec.cls == 2 else 0
    hi = 1 if spec.quotient else bound
    lo = 0 if spec.quotient else -bound
    return st.builds(
        lambda a, b: from_exponents(spec, a, b),
        st.lists(st.integers(lo, hi), min_size=spec.rank, max_size=spec.rank),
        st.lists(st.integers(lo, hi), min_size=nb, max_size=nb),
    )


SPECS = [GroupSpec(n, c, q) for n in (1, 2, 3, 5) for c in (1, 2) for q in (False, True)]


def test_pair_order():
    assert pairs(4) == ((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3))
    assert [pair_index(i, j) for i, j in pairs(5)] == list(range(10))


def test_identity():
    spec = GroupSpec(3, 2)
    e = identity(spec)
    assert e.alpha == (0, 0, 0) and e.beta == (0, 0, 0)
    assert evaluate((), spec) == e


def test_mul_exchange_rule():
    spec = GroupSpec(2, 2)
    got = mul(generator(spec, 2), generator(spec, 1))
    assert got == from_exponents(spec, [1, 1], {(2, 1): 1})


def test_inv_example():
    spec = GroupSpec(2, 2)
    g = from_exponents(spec, [1, 1], [0])
    # brute force over a small box for the unique h with g h = e
    sols = [
        from_exponents(spec, [a, b], [c])
        for a, b, c in itertools.product(range(-3, 4), repeat=3)
        if mul(g, from_exponents(spec, [a, b], [c])).is_identity()
    ]
    assert sols == [inv(g)] == [from_exponents(spec, [-1, -1], [1])]


def test_quotient_inverse_exhaustive():
    for g in all_elements(Q3):
        assert mul(g, inv(g)).is_identity()
        assert (inv(g) == g) == mul(g, g).is_identity()


def test_eval_examples():
    g = evaluate(parse("y3 y2 y3 y1 y2 y1", Q3), Q3)
    assert g == from_exponents(Q3, [0, 0, 0], {(2, 1): 1, (3, 2): 1})
    g = evaluate(parse("y2 y1 y2 y3 y1 y3 y1", Q3), Q3)
    assert code_bits(g) == "100110"


def test_eval_matches_rewriting_oracle_random():
    rng = random.Random(11)
    for k in range(2000):
        spec = SPECS[k % len(SPECS)]
        w = random_word(spec, rng.randint(0, 60), rng.random())
        assert as_oracle_form(evaluate(w, spec)) == collect(w, spec)


@given(st.sampled_from(SPECS), st.data())
def test_mul_is_concat(spec, data):
    w1 = data.draw(st.integers(0, 10**6))
    a = random_word(spec, data.draw(st.integers(0, 30)), w1)
    b = random_word(spec, data.draw(st.integers(0, 30)), w1 + 1)
    assert evaluate(concat(a, b), spec) == mul(evaluate(a, spec), evaluate(b, spec))


@given(st.sampled_from(SPECS), st.data())
def test_group_axioms(spec, data):
    a, b, c = (data.draw(elements(spec)) for _ in range(3))
    e = identity(spec)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, e) == a == mul(e, a)
    assert mul(a, inv(a)) == e == mul(inv(a), a)


@given(st.sampled_from([s for s in SPECS if s.cls == 2]), st.data())
def test_centrality(spec, data):
    g = data.draw(elements(spec))
    z = data.draw(elements(spec))
    z = from_exponents(spec, [0] * spec.rank, z.beta)
    assert mul(z, g) == mul(g, z)


@given(st.sampled_from([s for s in SPECS if s.cls == 2]), st.data())
def test_bset_of_product(spec, data):
    a, b = data.draw(elements(spec)), data.draw(elements(spec))
    cross = {(i, j) for i, j in pairs(spec.rank) if a.alpha[i - 1] * b.alpha[j - 1]}
    assert bset(mul(a, b)) <= bset(a) | bset(b) | cross


@given(st.sampled_from([s for s in SPECS if not s.quotient]), st.data())
def test_projection_homomorphism(spec, data):
    a, b = data.draw(elements(spec)), data.draw(elements(spec))
    assert project_mod2(mul(a, b)) == mul(project_mod2(a), project_mod2(b))


def test_projection_example():
    spec = GroupSpec(2, 2)
    g = project_mod2(from_exponents(spec, [2, 3], [5]))
    assert g == from_exponents(GroupSpec(2, 2, True), [0, 1], [1])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_quotient_order_by_closure(n):
    spec = GroupSpec(n, 2, True)
    gens = [generator(spec, i) for i in range(1, n + 1)]
    seen = {identity(spec)}
    frontier = list(seen)
    while frontier:
        frontier = [h for g in frontier for s in gens if (h := mul(g, s)) not in seen and not seen.add(h)]
    assert len(seen) == 2 ** (n * (n + 1) // 2)


def test_bset_examples():
    g = from_exponents(Q3, [0, 0, 0], [1, 1, 1])
    assert bset(g) == frozenset(pairs(3))
    assert bset(identity(Q3)) == frozenset()
    p1 = palindrome_nf(PalindromeForm(Q3, 1, 1, (1, 1)))
    assert bset(p1) == {(2, 1), (3, 1)}
    with pytest.raises(ValueError):
        bset(identity(GroupSpec(3, 1)))


def test_weight():
    assert weight(identity(Q3)) == 0
    assert weight(from_exponents(Q3, [0, 0, 0], [1, 1, 1])) == 3
    assert weight(from_exponents(Q3, [1, 1, 1], [1, 1, 1])) == 6


def test_central_decompose_examples():
    spec = GroupSpec(2, 2)
    u1, u2 = central_decompose(basic_commutator(spec, 2, 1))
    assert u1 == (Letter(2, 1),) and u2 == ()
    assert evaluate(commutator(u1, (Letter(1, 1),)), spec) == basic_commutator(spec, 2, 1)
    assert all(u == () for u in central_decompose(identity(Q3)))
    with pytest.raises(ValueError):
        central_decompose(generator(spec, 1))


def _recompose(c):
    spec = c.spec
    us = central_decompose(c)
    word = concat(*(commutator(u, (Letter(j, 1),), spec) for j, u in enumerate(us, 1)))
    return evaluate(word, spec)


def test_central_decompose_exhaustive_quotient():
    for bits in itertools.product((0, 1), repeat=3):
        c = from_exponents(Q3, [0, 0, 0], bits)
        assert _recompose(c) == c


@given(st.data())
def test_central_decompose_free(data):
    spec = GroupSpec(4, 2)
    c = data.draw(elements(spec))
    c = from_exponents(spec, [0] * 4, c.beta)
    assert _recompose(c) == c


def test_encode_decode_roundtrip():
    for spec in (Q3, GroupSpec(4, 1, True), GroupSpec(4, 2, True)):
        for g in all_elements(spec):
            assert decode(spec, encode(g)) == g
    assert encode(from_exponents(Q3, [1, 0, 0], [0, 0, 1])) == 0b100001


def test_render_and_to_word():
    spec = GroupSpec(2, 2)
    g = from_exponents(spec, [2, 1], [-3])
    assert render_nf(g) == "x1^2 x2 z2.1^-3"
    assert evaluate(parse(render_nf(g), spec), spec) == g
    assert evaluate(to_word(g), spec) == g
    assert render_nf(identity(Q3)) == "e"


def test_spec_mismatch():
    with pytest.raises(ValueError):
        mul(identity(Q3), identity(GroupSpec(3, 2)))


def test_big_exponents_exact():
    spec = GroupSpec(2, 2)
    g = from_exponents(spec, [10**30, 10**30], [0])
    assert mul(g, g).beta == (10**60,)
