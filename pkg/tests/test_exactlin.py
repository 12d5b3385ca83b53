import random

import pytest

from loophom.exactlin import (
    ExactLinError,
    FieldSpec,
    GF2,
    QQ,
    SparseMatrix,
    kernel_dimension,
    nullspace,
    rank,
    solve_in_span,
)


def test_fieldspec_rejects_composite():
    with pytest.raises(ExactLinError):
        FieldSpec(4)
    with pytest.raises(ExactLinError):
        FieldSpec(1)
    FieldSpec(7)
    FieldSpec(0)


def test_rank_empty_and_identity():
    assert rank(SparseMatrix(0, 0, {}), GF2) == 0
    ident = SparseMatrix(2, 2, {(0, 0): 1, (1, 1): 1})
    assert rank(ident, GF2) == 2


def test_rank_all_ones_mod2():
    # [[1,1],[1,1]]: second row reduces away, rank 1
    m = SparseMatrix(2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    assert rank(m, GF2) == 1
    assert kernel_dimension(m, GF2) == 1


def test_kernel_zero_map():
    assert kernel_dimension(SparseMatrix(0, 3, {}), GF2) == 3


def test_two_vanishes_mod2_not_rationally():
    m = SparseMatrix(1, 1, {(0, 0): 2})
    assert kernel_dimension(m, GF2) == 1
    assert kernel_dimension(m, QQ) == 0


def test_rank_bound_and_permutation_invariance():
    rng = random.Random(7)
    for trial in range(30):
        rows = rng.randrange(1, 12)
        cols = rng.randrange(1, 12)
        entries = {}
        for _ in range(rng.randrange(0, rows * cols + 1)):
            entries[(rng.randrange(rows), rng.randrange(cols))] = rng.randrange(1, 5)
        m = SparseMatrix(rows, cols, entries)
        for f in (GF2, FieldSpec(3), QQ):
            r = rank(m, f)
            assert r <= min(rows, cols)
            assert kernel_dimension(m, f) + r == cols
        # integer entries: rank mod p never exceeds rational rank
        assert rank(m, GF2) <= rank(m, QQ)
        assert rank(m, FieldSpec(3)) <= rank(m, QQ)
        # permutations preserve rank
        rp = list(range(rows))
        cp = list(range(cols))
        rng.shuffle(rp)
        rng.shuffle(cp)
        perm = SparseMatrix(
            rows, cols, {(rp[r0], cp[c0]): v for (r0, c0), v in entries.items()})
        assert rank(perm, QQ) == rank(m, QQ)
        assert rank(perm, GF2) == rank(m, GF2)


def test_rank_permutation_invariance_larger():
    rng = random.Random(11)
    rows = cols = 50
    entries = {}
    for _ in range(200):
        entries[(rng.randrange(rows), rng.randrange(cols))] = rng.randrange(1, 7)
    m = SparseMatrix(rows, cols, entries)
    rp = list(range(rows))
    cp = list(range(cols))
    rng.shuffle(rp)
    rng.shuffle(cp)
    perm = SparseMatrix(
        rows, cols, {(rp[r], cp[c]): v for (r, c), v in entries.items()})
    for f in (GF2, FieldSpec(5), QQ):
        assert rank(perm, f) == rank(m, f)


def test_nullspace_vectors_lie_in_kernel():
    rng = random.Random(3)
    for _ in range(20):
        rows = rng.randrange(1, 8)
        cols = rng.randrange(1, 8)
        entries = {}
        for _ in range(rng.randrange(0, rows * cols)):
            entries[(rng.randrange(rows), rng.randrange(cols))] = rng.randrange(1, 4)
        m = SparseMatrix(rows, cols, entries)
        for f in (GF2, FieldSpec(3), QQ):
            basis = nullspace(m, f)
            assert len(basis) == kernel_dimension(m, f)
            cols_of_m = m.columns()
            for vec in basis:
                acc = {}
                for c, coeff in vec.items():
                    for r, v in cols_of_m[c].items():
                        s = f.add(acc.get(r, f.zero()), f.mul(f.conv(coeff), f.conv(v)))
                        acc[r] = s
                assert all(f.is_zero(v) for v in acc.values())


def test_solve_in_span():
    f = FieldSpec(3)
    cols = [{0: 1, 1: 2}, {1: 1}]
    target = {0: 2, 1: 2}  # 2*c0 + (2 - 4 mod 3)*c1 = 2*c0 + 1*c1
    sol = solve_in_span(cols, target, f)
    assert sol is not None
    acc = {}
    for coeff, col in zip(sol, cols):
        for r, v in col.items():
            acc[r] = f.add(acc.get(r, f.zero()), f.mul(coeff, v))
    assert acc.get(0) == 2 and acc.get(1) == 2
    assert solve_in_span([{0: 1}], {1: 1}, f) is None


def test_compose():
    f = GF2
    a = SparseMatrix(2, 2, {(0, 0): 1, (1, 1): 1})
    b = SparseMatrix(2, 3, {(0, 0): 1, (1, 2): 1})
    ab = a.compose(b, f)
    assert ab.rows == 2 and ab.cols == 3
    assert ab.entries == {(0, 0): 1, (1, 2): 1}
