"""The cobar construction of a simply connected homology coalgebra: the
independent single-loop oracle.

Words [x_1|...|x_k] over the reduced generators carry degree
sum(deg x_t) - k.  The differential on a one-letter word is
-[dx] + sum (-1)^{deg x'} [x'|x''] over the reduced coproduct, extended as
a derivation over concatenation with respect to the word degree.  The
internal differential term is kept for completeness but the supported
inputs are homology coalgebras, so it is zero.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactlin import FieldSpec, SparseMatrix
from .graded import DGWindow, GradedBasis, homology_dimensions, verify_composition_zero
from .spaces import SpacePresentation


class CobarError(Exception):
    pass


@dataclass(frozen=True)
class CoalgebraPresentation:
    generators: tuple          # ((label, degree), ...) ordered
    coproduct: dict            # label -> ((a, b, coeff), ...)
    field: FieldSpec

    def __post_init__(self):
        for label, d in self.generators:
            if d < 2:
                raise CobarError(
                    f"generator {label} has degree {d}; the construction "
                    "needs a simply connected input")


def from_space(sp: SpacePresentation) -> CoalgebraPresentation:
    return CoalgebraPresentation(sp.generators, sp.coproduct, sp.field)


def word_degree(word: tuple, degs: dict) -> int:
    return sum(degs[x] for x in word) - len(word)


def cobar_window(c: CoalgebraPresentation, max_deg: int) -> DGWindow:
    """Word bases per degree <= max_deg and the differential matrices.
    Raises when the composite of two differentials fails to vanish."""
    degs = dict(c.generators)
    f = c.field
    labels = [l for l, _ in c.generators]
    # enumerate words by degree
    per_degree: dict = {d: [] for d in range(max_deg + 1)}
    per_degree[0].append(())

    def grow(word: tuple, deg: int):
        for l in labels:
            nd = deg + degs[l] - 1
            if nd > max_deg:
                continue
            w2 = word + (l,)
            per_degree[nd].append(w2)
            grow(w2, nd)

    grow((), 0)
    for d in per_degree:
        per_degree[d].sort(key=lambda w: (len(w), w))
    index = {d: {w: i for i, w in enumerate(per_degree[d])} for d in per_degree}

    def d_word(word: tuple) -> dict:
        out: dict = {}
        sign_deg = 0
        for t, x in enumerate(word):
            # differential of the letter x inside the word
            for (a, b, coeff) in c.coproduct.get(x, ()):
                s = 1 if (sign_deg + degs[a]) % 2 == 0 else -1
                w2 = word[:t] + (a, b) + word[t + 1:]
                cc = f.mul(f.conv(s), f.conv(coeff))
                prev = out.get(w2, f.zero())
                tot = f.add(prev, cc)
                if f.is_zero(tot):
                    out.pop(w2, None)
                else:
                    out[w2] = tot
            sign_deg += degs[x] - 1
        return out

    mats = {}
    for k in range(1, max_deg + 1):
        cols = []
        for w in per_degree[k]:
            img = d_word(w)
            col = {}
            for w2, coeff in img.items():
                col[index[k - 1][w2]] = coeff
            cols.append(col)
        mats[k] = SparseMatrix.from_columns(len(per_degree[k - 1]), cols)
    window = DGWindow(
        GradedBasis({d: tuple("[" + "|".join(w) + "]" if w else "[]"
                              for w in per_degree[d]) for d in per_degree}),
        f, mats, max_deg)
    ok, where = verify_composition_zero(window)
    if not ok:
        raise CobarError(f"differential does not square to zero at {where}")
    return window


def cobar_homology(c: CoalgebraPresentation, lo: int, hi: int) -> dict:
    window = cobar_window(c, hi + 1)
    return homology_dimensions(window, lo, hi)


def word_counts(c: CoalgebraPresentation, max_deg: int) -> list:
    """Word counts per degree; must match the convolution recursion of the
    generator counting series (combinatorial identity check)."""
    degs = dict(c.generators)
    counts = [0] * (max_deg + 1)
    counts[0] = 1
    for d in range(1, max_deg + 1):
        s = 0
        for l, dl in c.generators:
            if dl - 1 <= d:
                s += counts[d - (dl - 1)]
        counts[d] = s
    return counts
