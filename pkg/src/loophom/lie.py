"""Free graded Lie algebras with a bracket of degree n.

A bracket of degree n on generators g_i is an ordinary graded Lie bracket
after shifting every generator degree by n.  Monomials are realized inside
the tensor algebra on the shifted generators, where the bracket is the
graded commutator; all antisymmetry and Jacobi bookkeeping is inherited
from there, so no symbolic rewriting of identities is needed.

Canonical basis per degree: standard bracketings of Lyndon words on the
generator alphabet, plus, when the coefficient field is not Z/2, the
self-brackets [w, w] of basis elements w whose shifted degree is odd.
Over Z/2 the bracket is alternating and the Lyndon monomials alone form
the basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactlin import Eliminator, FieldSpec, solve_in_span


class AlgebraError(Exception):
    """An element left the spanned basis or violated a structure rule."""


# A Lie monomial is a nested tuple: ("g", i) for generator i,
# ("b", left, right) for a bracket.
Mon = tuple


def gen(i: int) -> Mon:
    return ("g", i)


def br(a: Mon, b: Mon) -> Mon:
    return ("b", a, b)


def leaves(m: Mon) -> int:
    if m[0] == "g":
        return 1
    return leaves(m[1]) + leaves(m[2])


def letters(m: Mon) -> tuple:
    if m[0] == "g":
        return (m[1],)
    return letters(m[1]) + letters(m[2])


@dataclass(frozen=True)
class LieContext:
    """Generator alphabet with degrees, bracket degree n, and the field."""

    degrees: tuple
    n: int
    field: FieldSpec

    def degree(self, m: Mon) -> int:
        return sum(self.degrees[i] for i in letters(m)) + (leaves(m) - 1) * self.n

    def shifted(self, m: Mon) -> int:
        """Degree in the n-suspended world, where the bracket has degree 0;
        additive: shifted([a,b]) = shifted(a) + shifted(b)."""
        return self.degree(m) + self.n


def is_lyndon(w: tuple) -> bool:
    n = len(w)
    if n == 0:
        return False
    for i in range(1, n):
        if w[i:] + w[:i] <= w:
            return False
    return True


def lyndon_words(num_letters: int, weights, n: int, max_deg: int) -> list:
    """All Lyndon words over 0..num_letters-1 whose bracket degree
    (sum of letter weights + (len-1)*n) is at most max_deg, shortest first
    then lexicographic."""
    out = []

    def grow(word: tuple, degsum: int):
        if word and is_lyndon(word):
            d = degsum + (len(word) - 1) * n
            if d <= max_deg:
                out.append(word)
        for a in range(num_letters):
            w2 = word + (a,)
            ds = degsum + weights[a]
            if ds + (len(w2) - 1) * n > max_deg:
                continue
            # prune: any extension of a word that is lexicographically
            # >= its own rotation cannot become Lyndon again unless the
            # prefix stays a prefix of a Lyndon word; cheap test: keep
            # words that are prefixes of some Lyndon word, i.e. w <= all
            # of its proper rotations' prefixes.  For our alphabet sizes
            # a direct check is affordable.
            if _lyndon_prefix_ok(w2):
                grow(w2, ds)

    grow((), 0)
    out.sort(key=lambda w: (sum(weights[a] for a in w) + (len(w) - 1) * n,
                            len(w), w))
    return out


def _lyndon_prefix_ok(w: tuple) -> bool:
    # a word can be extended to a Lyndon word iff no proper rotation is
    # strictly smaller than the word itself on the common prefix
    for i in range(1, len(w)):
        rot = w[i:]
        m = min(len(rot), len(w))
        if rot[:m] < w[:m]:
            return False
    return True


def standard_bracketing(w: tuple) -> Mon:
    """Right standard factorization: split before the longest proper
    Lyndon suffix."""
    if len(w) == 1:
        return gen(w[0])
    best = None
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            best = i
            break
    # smallest i gives the longest suffix
    return br(standard_bracketing(w[:best]), standard_bracketing(w[best:]))


def lie_basis_monomials(ctx: LieContext, max_deg: int) -> dict:
    """Canonical basis monomials per degree up to max_deg."""
    weights = ctx.degrees
    words = lyndon_words(len(weights), weights, ctx.n, max_deg)
    per_degree: dict = {}
    mons = []
    for w in words:
        m = standard_bracketing(w)
        mons.append(m)
    if ctx.field.characteristic != 2:
        for m in list(mons):
            if ctx.shifted(m) % 2 == 1:
                sq = br(m, m)
                if ctx.degree(sq) <= max_deg:
                    mons.append(sq)
    for m in mons:
        per_degree.setdefault(ctx.degree(m), []).append(m)
    for d in per_degree:
        per_degree[d].sort(key=mon_sort_key)
    return {d: per_degree[d] for d in sorted(per_degree)}


def mon_sort_key(m: Mon):
    if m[0] == "g":
        return (1, m[1], ())
    return (leaves(m), -1, (m,))


def expand(ctx: LieContext, m: Mon) -> dict:
    """Tensor-algebra expansion over Z: word tuple -> integer coefficient.
    Signs use shifted degrees, so the commutator convention is
    [a, b] = ab - (-1)^(sh(a) sh(b)) ba."""
    if m[0] == "g":
        return {(m[1],): 1}
    ea = expand(ctx, m[1])
    eb = expand(ctx, m[2])
    sign = -1 if (ctx.shifted(m[1]) * ctx.shifted(m[2])) % 2 else 1
    out: dict = {}
    for wa, ca in ea.items():
        for wb, cb in eb.items():
            out[wa + wb] = out.get(wa + wb, 0) + ca * cb
            out[wb + wa] = out.get(wb + wa, 0) - sign * cb * ca
    return {w: c for w, c in out.items() if c}


class LieAlgebra:
    """Bracket computations in the canonical basis, by exact linear algebra
    on tensor expansions grouped by generator multiset."""

    def __init__(self, ctx: LieContext, max_deg: int):
        self.ctx = ctx
        self.max_deg = max_deg
        self.basis = lie_basis_monomials(ctx, max_deg)
        self._by_multiset: dict = {}
        for d, mons in self.basis.items():
            for m in mons:
                key = tuple(sorted(letters(m)))
                self._by_multiset.setdefault(key, []).append(m)
        self._bracket_cache: dict = {}

    def degree(self, m: Mon) -> int:
        return self.ctx.degree(m)

    def is_basis(self, m: Mon) -> bool:
        d = self.ctx.degree(m)
        return d in self.basis and m in self.basis[d]

    def bracket(self, a: Mon, b: Mon) -> dict:
        """[a, b] for canonical basis monomials a, b, expressed in the
        canonical basis: Mon -> field scalar."""
        key = (a, b)
        if key in self._bracket_cache:
            return self._bracket_cache[key]
        ctx, f = self.ctx, self.ctx.field
        d = ctx.degree(a) + ctx.degree(b) + ctx.n
        if d > self.max_deg:
            raise AlgebraError(f"bracket degree {d} beyond window {self.max_deg}")
        if f.characteristic == 2 and a == b:
            self._bracket_cache[key] = {}
            return {}
        if f.characteristic != 2 and a == b and (ctx.shifted(a) % 2 == 0):
            self._bracket_cache[key] = {}
            return {}
        target = expand(ctx, br(a, b))
        if not target:
            self._bracket_cache[key] = {}
            return {}
        mset = tuple(sorted(letters(a) + letters(b)))
        cands = [m for m in self._by_multiset.get(mset, ())
                 if ctx.degree(m) == d]
        cols = [expand(ctx, m) for m in cands]
        sol = solve_in_span(cols, target, f)
        if sol is None:
            raise AlgebraError(
                f"bracket [{a},{b}] leaves the spanned Lie basis")
        out = {m: c for m, c in zip(cands, sol) if not f.is_zero(c)}
        self._bracket_cache[key] = out
        return out

    def verify_independent(self) -> None:
        """Check the expansions of the basis monomials are independent over
        the field, per multiset component."""
        f = self.ctx.field
        for mset, mons in self._by_multiset.items():
            elim = Eliminator(f)
            for m in mons:
                vec = {w: f.conv(c) for w, c in expand(self.ctx, m).items()}
                vec = {w: c for w, c in vec.items() if not f.is_zero(c)}
                if not vec or not elim.add(vec):
                    raise AlgebraError(f"dependent Lie basis at {mset}: {m}")
