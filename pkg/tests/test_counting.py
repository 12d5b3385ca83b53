from loophom.counting import (free_commutative_series, lie_dims_bigraded,
                              lyndon_dims, necklace_count, tensor_series)


def test_necklace_small():
    assert necklace_count((1,)) == 1
    assert necklace_count((2,)) == 0
    assert necklace_count((1, 1)) == 1
    assert necklace_count((2, 1)) == 1
    assert necklace_count((2, 2)) == 1
    assert necklace_count((3, 3)) == 3


def test_tensor_series_one_generator():
    assert tensor_series([2], 8) == [1, 0, 1, 0, 1, 0, 1, 0, 1]


def test_bigraded_matches_necklace_for_even_alphabet():
    # no odd letters: the factorization reduces to the classical count
    pbw = lie_dims_bigraded([2, 4], 0, 12)
    neck = lyndon_dims([2, 4], 0, 12)
    assert {d: c for d, c in pbw.items() if c} == {d: c for d, c in neck.items() if c}


def test_bigraded_one_odd_generator():
    # one odd letter: basis is x and [x,x] only
    assert {d: c for d, c in lie_dims_bigraded([1], 0, 6).items() if c} == {1: 1, 2: 1}


def test_free_commutative_series_caps():
    # one even atom of degree 2: unlimited over Q, squares die mod 2, cubes mod 3
    assert free_commutative_series([(2, 0)], 0, 8) == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert free_commutative_series([(2, 0)], 2, 8) == [1, 0, 1, 0, 0, 0, 0, 0, 0]
    assert free_commutative_series([(2, 0)], 3, 8) == [1, 0, 1, 0, 1, 0, 0, 0, 0]
    # one odd atom of degree 3: exterior everywhere away from char 2
    assert free_commutative_series([(3, 1)], 0, 8) == [1, 0, 0, 1, 0, 0, 0, 0, 0]
