"""Closed-form dimension counts used as independent cross-checks.

Everything here is arithmetic on integer sequences: no basis enumeration,
no rewriting.  The basis modules are tested against these numbers.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd


def mobius(n: int) -> int:
    if n == 1:
        return 1
    m, count = n, 0
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            count += 1
        d += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1


def necklace_count(multidegree: tuple[int, ...]) -> int:
    """Number of Lyndon words with the given letter multiplicities
    (classical Witt formula, multigraded form)."""
    total = sum(multidegree)
    if total == 0:
        return 0
    g = 0
    for a in multidegree:
        g = gcd(g, a)
    acc = 0
    for e in range(1, g + 1):
        if g % e:
            continue
        mult = factorial(total // e)
        for a in multidegree:
            mult //= factorial(a // e)
        acc += mobius(e) * mult
    assert acc % total == 0
    return acc // total


def tensor_series(gen_degrees: list[int], max_deg: int) -> list[int]:
    """dims of the tensor algebra on generators of the given degrees,
    indexed 0..max_deg (dims[0] = 1 for the empty word)."""
    dims = [0] * (max_deg + 1)
    dims[0] = 1
    for d in range(1, max_deg + 1):
        s = 0
        for g in gen_degrees:
            if g <= d:
                s += dims[d - g]
        dims[d] = s
    return dims


def lie_dims_bigraded(gen_degrees: list[int], n: int, max_deg: int) -> dict[int, int]:
    """Free Lie dimensions in true degree for any bracket degree n >= 0,
    via the bigraded (degree, word length) factorization."""
    # bigraded tensor series over shifted letters, tracking word length
    maxlen = max_deg  # letters have true degree >= 1
    # T[d][k]: words of true degree d with k letters
    T = [[0] * (maxlen + 1) for _ in range(max_deg + 1)]
    T[0][0] = 1
    for d in range(1, max_deg + 1):
        for k in range(1, maxlen + 1):
            s = 0
            for g in gen_degrees:
                if g <= d:
                    s += T[d - g][k - 1]
            T[d][k] = s
    series = {(d, k): Fraction(T[d][k]) for d in range(max_deg + 1)
              for k in range(maxlen + 1)}

    def sub_sym(D, K, c):
        # multiply series by (1 - t^D u^K)^c   (removes a symmetric factor)
        for _ in range(c):
            for d in range(max_deg, D - 1, -1):
                for k in range(maxlen, K - 1, -1):
                    series[(d, k)] -= series[(d - D, k - K)]

    def sub_ext(D, K, c):
        # divide series by (1 + t^D u^K)^c   (removes an exterior factor)
        for _ in range(c):
            for d in range(D, max_deg + 1):
                for k in range(K, maxlen + 1):
                    series[(d, k)] -= series[(d - D, k - K)]

    ell: dict[int, int] = {}
    for k in range(1, maxlen + 1):
        for d in range(1, max_deg + 1):
            c = series[(d, k)]
            assert c.denominator == 1
            c = int(c)
            if c < 0:
                raise AssertionError("bigraded factorization failed")
            if c:
                true_deg = d + (k - 1) * n  # letter-degree sum -> bracket degree
                if true_deg <= max_deg:
                    ell[true_deg] = ell.get(true_deg, 0) + c
                if (d + k * n) % 2 == 0:
                    sub_sym(d, k, c)
                else:
                    sub_ext(d, k, c)
    return ell


def lyndon_dims(gen_degrees: list[int], n: int, max_deg: int) -> dict[int, int]:
    """Dimensions contributed by Lyndon words alone: necklace counts over
    all letter multisets, with the bracket degree added per extra letter."""
    out: dict[int, int] = {}

    def rec(idx: int, counts: list[int], degsum: int):
        if idx == len(gen_degrees):
            letters = sum(counts)
            if letters >= 1:
                d = degsum + (letters - 1) * n
                if d <= max_deg:
                    out[d] = out.get(d, 0) + necklace_count(tuple(counts))
            return
        mult = 0
        while True:
            newsum = degsum + mult * gen_degrees[idx]
            letters = sum(counts) + mult
            if letters and newsum + (letters - 1) * n > max_deg:
                break
            rec(idx + 1, counts + [mult], newsum)
            mult += 1

    rec(0, [], 0)
    return out


def free_commutative_series(atom_degrees_parities, characteristic: int,
                            max_deg: int) -> list[int]:
    """dims of the free graded-commutative algebra on atoms with the given
    (degree, parity) pairs, with the multiplicity cap of the coefficient
    field: none over Q, < p over Z/p for even atoms, distinct atoms over
    Z/2, and multiplicity <= 1 for odd atoms when p != 2.
    """
    dims = [0] * (max_deg + 1)
    dims[0] = 1
    for deg, odd in atom_degrees_parities:
        new = [0] * (max_deg + 1)
        if characteristic == 2:
            caps = 1
        elif odd:
            caps = 1
        elif characteristic == 0:
            caps = max_deg // deg
        else:
            caps = characteristic - 1
        for d in range(max_deg + 1):
            if not dims[d]:
                continue
            m = 0
            while m <= caps and d + m * deg <= max_deg:
                new[d + m * deg] += dims[d]
                m += 1
        dims = new
    return dims
