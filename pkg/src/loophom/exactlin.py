"""Exact scalar arithmetic over prime fields and the rationals, plus sparse
rank / kernel computations.

Scalars are plain Python ints (residues in [0, p) when the characteristic is
a prime p) or Fractions (characteristic zero).  Matrices are immutable
sparse triples; elimination always works on an internal copy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class ExactLinError(Exception):
    """Structural problem with a field or matrix."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: Z/p for a prime p, or the rationals (p = 0)."""

    characteristic: int

    def __post_init__(self) -> None:
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ExactLinError(f"characteristic must be 0 or a prime, got {c}")

    # -- scalar helpers ----------------------------------------------------
    def conv(self, x):
        """Bring an int / Fraction into canonical form for this field."""
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ExactLinError(f"denominator not invertible mod {p}")
                return (x.numerator * pow(x.denominator, -1, p)) % p
            return int(x) % p
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a):
        p = self.characteristic
        if p:
            if a % p == 0:
                raise ZeroDivisionError("zero has no inverse")
            return pow(a, -1, p)
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Fraction(1) / a

    def is_zero(self, a) -> bool:
        return a == 0


QQ = FieldSpec(0)
GF2 = FieldSpec(2)


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse matrix: entries maps (row, col) to a nonzero scalar."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ExactLinError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
            if v == 0:
                raise ExactLinError(f"stored zero at ({r},{c})")

    @staticmethod
    def from_columns(rows: int, columns: list) -> "SparseMatrix":
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v != 0:
                    entries[(r, c)] = v
        return SparseMatrix(rows, len(columns), entries)

    def column(self, c: int) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> list:
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def compose(self, other: "SparseMatrix", f: FieldSpec) -> "SparseMatrix":
        """Matrix product self @ other (self applied after other)."""
        if self.cols != other.rows:
            raise ExactLinError(
                f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_mid: dict = {}
        for (r, c), v in self.entries.items():
            by_mid.setdefault(c, {})[r] = v
        entries = {}
        for c, col in enumerate(other.columns()):
            acc: dict = {}
            for mid, v in col.items():
                for r, w in by_mid.get(mid, {}).items():
                    s = f.add(acc.get(r, f.zero()), f.mul(w, v))
                    if f.is_zero(s):
                        acc.pop(r, None)
                    else:
                        acc[r] = s
            for r, v in acc.items():
                entries[(r, c)] = v
        return SparseMatrix(self.rows, other.cols, entries)

    def is_zero(self) -> bool:
        return not self.entries


class Eliminator:
    """Incremental exact Gaussian elimination over a field.

    Vectors are dicts index -> scalar.  Feeding a vector reduces it against
    the pivot rows seen so far; an independent residue is normalized and
    stored under its smallest index.  Optionally tracks each stored row as a
    combination of the fed vectors, which gives solving and kernel bases.
    """

    def __init__(self, f: FieldSpec, track: bool = False):
        self.f = f
        self.track = track
        self.pivots: dict = {}        # pivot index -> normalized residue row
        self.combos: dict = {}        # pivot index -> combination of inputs
        self.n_fed = 0

    def _reduce(self, vec: dict, comb: dict):
        f = self.f
        v = {k: w for k, w in vec.items() if not f.is_zero(w)}
        while True:
            hit = None
            for i in v:
                if i in self.pivots:
                    hit = i
                    break
            if hit is None:
                return v, comb
            coeff = v[hit]
            for j, w in self.pivots[hit].items():
                s = f.sub(v.get(j, f.zero()), f.mul(coeff, w))
                if f.is_zero(s):
                    v.pop(j, None)
                else:
                    v[j] = s
            if self.track:
                for j, w in self.combos[hit].items():
                    s = f.sub(comb.get(j, f.zero()), f.mul(coeff, w))
                    if f.is_zero(s):
                        comb.pop(j, None)
                    else:
                        comb[j] = s
        # unreachable

    def reduce(self, vec: dict) -> dict:
        v, _ = self._reduce(vec, {})
        return v

    def add(self, vec: dict) -> bool:
        """Feed a vector; True when it was independent of earlier ones."""
        return self.add_tracked(vec) is None

    def add_tracked(self, vec: dict):
        """Feed a vector.  Returns None when independent; when dependent,
        returns the combination dict expressing it through previously fed
        vectors (empty for the zero vector).  Needs track=True for a
        meaningful combination."""
        idx = self.n_fed
        self.n_fed += 1
        comb = {idx: self.f.one()} if self.track else {}
        v, comb = self._reduce(vec, comb)
        if not v:
            # vec = -sum(comb_j * fed_j) over j != idx
            return {j: self.f.neg(w) for j, w in comb.items() if j != idx}
        piv = min(v)
        inv = self.f.inv(v[piv])
        self.pivots[piv] = {j: self.f.mul(inv, w) for j, w in v.items()}
        if self.track:
            self.combos[piv] = {j: self.f.mul(inv, w) for j, w in comb.items()}
        return None

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(m: SparseMatrix, f: FieldSpec) -> int:
    """Exact rank of m over f.  The input is not mutated."""
    elim = Eliminator(f)
    by_row: dict = {}
    for (r, c), v in m.entries.items():
        cv = f.conv(v)
        if not f.is_zero(cv):
            by_row.setdefault(r, {})[c] = cv
    for r in sorted(by_row):
        elim.add(by_row[r])
    return elim.rank


def kernel_dimension(m: SparseMatrix, f: FieldSpec) -> int:
    """dim ker = cols - rank (rank-nullity, asserted)."""
    r = rank(m, f)
    k = m.cols - r
    assert k + r == m.cols
    return k


def nullspace(m: SparseMatrix, f: FieldSpec) -> list:
    """Kernel basis of m as vectors over column indices.

    Deterministic: columns are fed left to right; each dependent column
    yields one kernel vector supported on it and earlier pivot columns.
    """
    elim = Eliminator(f, track=True)
    basis = []
    for c, col in enumerate(m.columns()):
        conv = {r: f.conv(v) for r, v in col.items()}
        res = elim.add_tracked(conv)
        if res is not None:
            vec = {c: f.one()}
            for j, w in res.items():
                vec[j] = f.neg(w)
            basis.append(vec)
    return basis


def solve_in_span(columns: list, target: dict, f: FieldSpec) -> list | None:
    """Express target as a linear combination of the given vectors.

    Returns the coefficient list, or None when target is outside the span.
    """
    elim = Eliminator(f, track=True)
    for col in columns:
        elim.add({k: f.conv(w) for k, w in col.items()})
    t = {k: f.conv(w) for k, w in target.items()}
    v, comb = elim._reduce(t, {})
    if v:
        return None
    out = [f.zero()] * len(columns)
    for j, w in comb.items():
        if j < len(columns):
            out[j] = f.neg(w)
    return out
