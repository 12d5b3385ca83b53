"""Degree-indexed bases, differential matrices, and homology of a
degree-truncated chain complex.

A window holds bases for degrees 0..max_degree and, for 1 <= k <= max_degree,
the matrix of the degree-lowering differential d_k from degree k to k-1
(rows indexed by the basis one degree down, columns by the basis at k).
Homology at k needs the incoming differential at k+1, so it is available
for k <= max_degree - 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import Eliminator, FieldSpec, SparseMatrix, kernel_dimension, nullspace, rank


class GradedError(Exception):
    pass


class TruncationError(GradedError):
    """The window is too short for the requested degree range."""


@dataclass(frozen=True)
class GradedBasis:
    """Ordered basis labels per degree.  Labels are opaque; their order is
    fixed by the producing module and stable across runs."""

    labels: dict  # degree -> tuple of labels

    def size(self, k: int) -> int:
        return len(self.labels.get(k, ()))

    def degrees(self) -> list:
        return sorted(self.labels)


@dataclass(frozen=True)
class DGWindow:
    basis: GradedBasis
    field: FieldSpec
    d: dict                      # degree k -> SparseMatrix (deg k -> k-1)
    max_degree: int

    def __post_init__(self):
        for k, m in self.d.items():
            if m.rows != self.basis.size(k - 1) or m.cols != self.basis.size(k):
                raise GradedError(
                    f"differential at degree {k} is {m.rows}x{m.cols}, "
                    f"bases need {self.basis.size(k - 1)}x{self.basis.size(k)}")

    def matrix(self, k: int) -> SparseMatrix:
        if k in self.d:
            return self.d[k]
        return SparseMatrix(self.basis.size(k - 1), self.basis.size(k), {})


def verify_composition_zero(w: DGWindow):
    """(True, None) when d(k-1) . d(k) = 0 for every k <= max_degree;
    otherwise (False, (degree, column)) locating the first failure."""
    for k in range(2, w.max_degree + 1):
        prod = w.matrix(k - 1).compose(w.matrix(k), w.field)
        if not prod.is_zero():
            col = min(c for (_, c) in prod.entries)
            return False, (k, col)
    return True, None


def homology_dimensions(w: DGWindow, lo: int, hi: int) -> dict:
    """dim H_k = dim ker d_k - rank d_{k+1} for lo <= k <= hi."""
    if hi + 1 > w.max_degree:
        raise TruncationError(
            f"homology up to degree {hi} needs the differential at {hi + 1}; "
            f"window stops at {w.max_degree}")
    out = {}
    for k in range(lo, hi + 1):
        out[k] = (kernel_dimension(w.matrix(k), w.field)
                  - rank(w.matrix(k + 1), w.field))
    return out


def homology_representatives(w: DGWindow, k: int) -> list:
    """Cycle vectors spanning a complement of the boundaries in degree k.

    Deterministic: boundary columns are fed to the eliminator first, then
    kernel vectors in basis order; the independent ones survive.  Each
    vector is a dict basis-index -> scalar.
    """
    if k + 1 > w.max_degree:
        raise TruncationError(
            f"representatives at degree {k} need the differential at {k + 1}")
    f = w.field
    cycles = nullspace(w.matrix(k), f)
    reps = []
    elim = Eliminator(f)
    for col in w.matrix(k + 1).columns():
        elim.add({r: f.conv(v) for r, v in col.items()})
    for vec in cycles:
        if elim.add(dict(vec)):
            reps.append(vec)
    return reps


def is_cycle(w: DGWindow, k: int, vec: dict) -> bool:
    f = w.field
    m = w.matrix(k)
    acc: dict = {}
    for c, coeff in vec.items():
        for r, v in m.column(c).items():
            s = f.add(acc.get(r, f.zero()), f.mul(f.conv(coeff), f.conv(v)))
            if f.is_zero(s):
                acc.pop(r, None)
            else:
                acc[r] = s
    return not acc


def is_boundary(w: DGWindow, k: int, vec: dict) -> bool:
    f = w.field
    elim = Eliminator(f)
    for col in w.matrix(k + 1).columns():
        elim.add({r: f.conv(v) for r, v in col.items()})
    return elim.contains({c: f.conv(v) for c, v in vec.items()})


def classes_independent(w: DGWindow, k: int, vecs: list) -> bool:
    """True when the given cycles are linearly independent modulo
    boundaries."""
    f = w.field
    elim = Eliminator(f)
    for col in w.matrix(k + 1).columns():
        elim.add({r: f.conv(v) for r, v in col.items()})
    for vec in vecs:
        if not elim.add({c: f.conv(v) for c, v in vec.items()}):
            return False
    return True
