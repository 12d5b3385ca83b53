import pytest

from loophom.counting import lie_dims_bigraded, lyndon_dims
from loophom.exactlin import GF2, QQ, FieldSpec
from loophom.lie import (AlgebraError, LieAlgebra, LieContext, br, expand,
                         gen, is_lyndon, lyndon_words, standard_bracketing)


def test_lyndon_words_alphabet_two():
    ws = lyndon_words(2, (1, 1), 0, 4)
    assert (0,) in ws and (1,) in ws and (0, 1) in ws
    assert (0, 0, 1) in ws and (0, 1, 1) in ws
    assert (1, 0) not in ws and (0, 0) not in ws


def test_standard_bracketing():
    assert standard_bracketing((0, 1)) == br(gen(0), gen(1))
    assert standard_bracketing((0, 0, 1)) == br(gen(0), br(gen(0), gen(1)))
    assert standard_bracketing((0, 1, 1)) == br(br(gen(0), gen(1)), gen(1))


def test_single_generator_char2_no_brackets():
    # spec example: one generator of degree 1, n=1, mod 2: nothing above it
    ctx = LieContext(degrees=(1,), n=1, field=GF2)
    L = LieAlgebra(ctx, 4)
    assert L.basis == {1: [gen(0)]}


def test_degree4_contains_bracket_of_first_two():
    ctx = LieContext(degrees=(1, 2, 3, 4, 5), n=1, field=GF2)
    L = LieAlgebra(ctx, 4)
    assert br(gen(0), gen(1)) in L.basis[4]
    assert gen(3) in L.basis[4]


def test_self_bracket_allowed_at_odd_shift():
    # one generator of degree 2, bracket degree 3, mod 3: [v,v] in degree 7
    ctx = LieContext(degrees=(2,), n=3, field=FieldSpec(3))
    L = LieAlgebra(ctx, 7)
    assert L.basis[7] == [br(gen(0), gen(0))]


@pytest.mark.parametrize("degs,n,f,bound", [
    ((2, 4, 6, 8), 3, FieldSpec(3), 16),
    ((1, 2), 0, QQ, 8),
    ((1, 2, 3), 2, FieldSpec(5), 10),
    ((3, 5, 7, 9), 0, FieldSpec(3), 15),
])
def test_counts_match_pbw_series(degs, n, f, bound):
    # away from characteristic 2 the basis carries self-brackets; its
    # dimension oracle is the bigraded series factorization
    ctx = LieContext(degrees=degs, n=n, field=f)
    L = LieAlgebra(ctx, bound)
    L.verify_independent()
    pbw = {d: c for d, c in lie_dims_bigraded(list(degs), n, bound).items() if c}
    assert {d: len(m) for d, m in L.basis.items()} == pbw


@pytest.mark.parametrize("degs,n,bound", [
    ((1, 2, 3, 4, 5), 1, 9),
    ((1, 2, 3, 4, 5, 6, 7, 8), 2, 8),
    ((2, 4, 5), 3, 12),
])
def test_counts_match_necklace_mod2(degs, n, bound):
    # over Z/2 the bracket is alternating: Lyndon monomials only
    ctx = LieContext(degrees=degs, n=n, field=GF2)
    L = LieAlgebra(ctx, bound)
    L.verify_independent()
    neck = {d: c for d, c in lyndon_dims(list(degs), n, bound).items() if c}
    assert {d: len(m) for d, m in L.basis.items()} == neck


def test_witt_numbers_even_alphabet_char0():
    ctx = LieContext(degrees=(2, 4), n=0, field=QQ)
    L = LieAlgebra(ctx, 12)
    neck = {d: c for d, c in lyndon_dims([2, 4], 0, 12).items() if c}
    assert {d: len(m) for d, m in L.basis.items()} == neck


def test_bracket_antisymmetry_and_jacobi_mod2():
    ctx = LieContext(degrees=(1, 2, 3, 4, 5), n=1, field=GF2)
    L = LieAlgebra(ctx, 9)
    assert L.bracket(gen(1), gen(0)) == {br(gen(0), gen(1)): 1}
    assert L.bracket(gen(0), gen(0)) == {}
    # Jacobi: [u1,[u2,u3]] + [[u1,u2],u3] + [u2,[u1,u3]] = 0
    a = L.bracket(gen(0), br(gen(1), gen(2)))
    b = {}
    for m, c in L.bracket(gen(0), gen(1)).items():
        for m2, c2 in L.bracket(m, gen(2)).items():
            b[m2] = (b.get(m2, 0) + c * c2) % 2
    c_ = {}
    for m, c in L.bracket(gen(0), gen(2)).items():
        for m2, c2 in L.bracket(gen(1), m).items():
            c_[m2] = (c_.get(m2, 0) + c * c2) % 2
    total = {}
    for d in (a, b, c_):
        for m, c in d.items():
            total[m] = (total.get(m, 0) + c) % 2
    assert all(v == 0 for v in total.values())


def test_triple_self_bracket_dies_mod3():
    ctx = LieContext(degrees=(2,), n=3, field=FieldSpec(3))
    L = LieAlgebra(ctx, 14)
    assert L.bracket(gen(0), br(gen(0), gen(0))) == {}


def test_expansion_signs():
    # [x,y] with x odd, y odd shifted: commutator has a plus sign
    ctx = LieContext(degrees=(1, 2), n=0, field=QQ)
    e = expand(ctx, br(gen(0), gen(0)))
    assert e == {(0, 0): 2}
