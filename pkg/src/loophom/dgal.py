"""The first-page algebra of an m-fold loop space with its differential,
and the homology that the page computes.

For m loops the page is the free algebra of freepn with bracket degree
n = m - 1 on desuspended generators:

  rp family, skeleton n_t:  u_i = the (i+m)-cell, degree i, i > n_t - m
  cp family, skeleton n_t:  v_i = the (i + ceil(m/2))-cell,
                            degree 2i (m even) or 2i + 1 (m odd)
  sphere of dimension d:    one generator, degree d - m

The differential on a generator is a sum of brackets of lower generators
(from the reduced coproduct) and of single-letter atoms (from the Steenrod
action); terms referring to collapsed cells or letters outside 0..m-1 drop.
The diagonal coproduct term contributes with coefficient 1/2 in odd or zero
characteristic (forced by d.d = 0; over Z/2 the diagonal instead shows up
through the top-letter part of the Steenrod sum).

Extension of d to the whole basis: a derivation over products and brackets;
on a letter atom e_i(y) mod 2 it is e_{i+1}(dy), the next letter applied to
the differential of the argument, with the top letter adding the bracket
[dy, y] as the next letter falls out of the window; at odd p the bottom
letter at n = 0 differentiates to ad(y)^(p-1)(dy) and a decorated atom
whose core survives d is rejected (never reached by the supported spaces).
These rules are forced by d.d = 0 against the printed generator formulas
and reproduce the published tables; see the tests.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb

from .exactlin import FieldSpec, SparseMatrix
from .freepn import Atom, FreeAlgebra, GeneratorSet, Monomial, UNIT
from .graded import (DGWindow, GradedBasis, GradedError, homology_dimensions,
                     homology_representatives, verify_composition_zero)
from .lie import AlgebraError, Mon, gen
from .spaces import SpaceError, SpacePresentation, cp_quotient, rematerialize, rp_quotient, sphere


class ConfigError(Exception):
    """Unsupported (space, loops, field) configuration."""


@dataclass(frozen=True)
class E1Page:
    gens: GeneratorSet
    space: SpacePresentation
    loops: int
    cell_of: dict      # generator name -> space cell label


@dataclass(frozen=True)
class GeneratorDifferential:
    images: dict       # generator name -> element (freepn dict)


def _rp_page(n: int, m: int, f: FieldSpec, max_deg: int) -> E1Page:
    if f.characteristic != 2:
        raise ConfigError("rp needs characteristic 2")
    if m > n:
        raise ConfigError(f"rp with {m} loops needs skeleton >= {m}")
    if m < 1:
        raise ConfigError("loops must be >= 1")
    sp = rp_quotient(n, f, max_degree=max_deg + m)
    names, degrees, cells = [], [], {}
    for i in range(max(1, n - m + 1), max_deg + 1):
        names.append(f"u_{i}")
        degrees.append(i)
        cells[f"u_{i}"] = f"e_{i + m}"
    g = GeneratorSet(tuple(names), tuple(degrees), f, m - 1)
    return E1Page(g, sp, m, cells)


def _cp_page(n: int, m: int, f: FieldSpec, max_deg: int) -> E1Page:
    if m > 2 * n + 1:
        raise ConfigError(f"cp with {m} loops needs 2*skeleton+1 >= {m}")
    if m < 1:
        raise ConfigError("loops must be >= 1")
    off = (m + 1) // 2
    sp = cp_quotient(n, f, max_degree=max_deg + m)
    names, degrees, cells = [], [], {}
    i = n - off + 1
    while True:
        deg = 2 * i if m % 2 == 0 else 2 * i + 1
        if deg > max_deg:
            break
        if deg >= 1:
            names.append(f"v_{i}")
            degrees.append(deg)
            cells[f"v_{i}"] = f"c_{i + off}"
        i += 1
    g = GeneratorSet(tuple(names), tuple(degrees), f, m - 1)
    return E1Page(g, sp, m, cells)


def _sphere_page(d: int, m: int, f: FieldSpec, max_deg: int) -> E1Page:
    if m >= d:
        raise ConfigError(f"sphere of dimension {d} supports at most {d - 1} loops")
    sp = sphere(d, f, max_degree=max_deg + m)
    g = GeneratorSet(("x",), (d - m,), f, m - 1)
    return E1Page(g, sp, m, {"x": "x"})


def build_page(family: str, f: FieldSpec, m: int, max_deg: int,
               trunc: int | None = None, dim: int | None = None,
               space: SpacePresentation | None = None) -> E1Page:
    if family == "rp":
        return _rp_page(trunc, m, f, max_deg)
    if family == "cp":
        return _cp_page(trunc, m, f, max_deg)
    if family == "sphere":
        return _sphere_page(dim, m, f, max_deg)
    if family == "file":
        if space is None:
            raise ConfigError("family 'file' needs a presentation")
        return generic_page(space, m, max_deg)
    raise ConfigError(f"unknown family {family!r}")


def generic_page(sp: SpacePresentation, m: int, max_deg: int) -> E1Page:
    if sp.connectivity < m:
        raise ConfigError(
            f"space has connectivity {sp.connectivity}, not enough for {m} loops")
    sp = rematerialize(sp, max_deg + m)
    names, degrees, cells = [], [], {}
    for label, d in sp.generators:
        if d - m < 1 or d - m > max_deg:
            continue
        name = f"s{label}"
        names.append(name)
        degrees.append(d - m)
        cells[name] = label
    g = GeneratorSet(tuple(names), tuple(degrees), sp.field, m - 1)
    return E1Page(g, sp, m, cells)


# -- generator differentials ----------------------------------------------------

def dphi_rp(n: int, m: int, f: FieldSpec, max_deg: int) -> tuple:
    """Page and differential for the m-fold loop space of the real
    projective quotient by the n-skeleton, from the closed bracket +
    binomial-letter formula over the cell indices."""
    page = _rp_page(n, m, f, max_deg)
    alg = FreeAlgebra(page.gens, max_deg)
    images = {}
    for name in page.gens.names:
        i = int(page.cell_of[name][2:])           # source cell index
        el = alg.zero()
        # bracket part: ordered splittings j < i - j, both cells surviving
        for j in range(n + 1, i):
            if 2 * j >= i or i - j <= n:
                continue
            a = _gen_el(alg, page, f"e_{j}")
            b = _gen_el(alg, page, f"e_{i - j}")
            if a and b:
                el = alg.add(el, alg.bracket(a, b))
        # letter part: binom(i-j, j) e_{2j-i+m-1} on the (i-j)-cell
        for j in range(0, i // 2 + 1):
            idx = 2 * j - i + m - 1
            if idx < 0 or idx > m - 1:
                continue
            if i - j <= n:
                continue
            c = comb(i - j, j) % 2
            if not c:
                continue
            y = _gen_monomial(alg, page, f"e_{i - j}")
            if y is None:
                continue
            el = alg.add(el, alg.from_atom(Atom(((0, idx),), y), c))
        images[name] = el
    return page, GeneratorDifferential(images)


def dphi_cp(n: int, m: int, f: FieldSpec, max_deg: int) -> tuple:
    """Same for the complex projective quotient: brackets over 2j <= i with
    the diagonal halved away from characteristic 2, and Bockstein-letter
    terms at odd p / plain letters mod 2 / nothing over the rationals."""
    page = _cp_page(n, m, f, max_deg)
    alg = FreeAlgebra(page.gens, max_deg)
    p = f.characteristic
    images = {}
    for name in page.gens.names:
        i = int(page.cell_of[name][2:])
        el = alg.zero()
        for j in range(n + 1, i // 2 + 1):
            if i - j <= n:
                continue
            a = _gen_el(alg, page, f"c_{j}")
            b = _gen_el(alg, page, f"c_{i - j}")
            if not (a and b):
                continue
            term = alg.bracket(a, b)
            if 2 * j == i:
                if p == 2:
                    continue  # the diagonal enters through the letter part
                term = alg.scale(_half(f), term)
            el = alg.add(el, term)
        if p == 2:
            for j in range(0, i // 2 + 1):
                idx = 2 * (2 * j - i) + m - 1
                if idx < 0 or idx > m - 1 or i - j <= n:
                    continue
                if comb(i - j, j) % 2 == 0:
                    continue
                y = _gen_monomial(alg, page, f"c_{i - j}")
                if y is None:
                    continue
                el = alg.add(el, alg.from_atom(Atom(((0, idx),), y)))
        elif p > 2:
            for j in range(1, i + 1):
                if p * j >= i:
                    break
                t = i - (p - 1) * j
                if t <= n:
                    continue
                idx = 2 * (p * j - i) + m
                if idx <= 0 or idx > m - 1:
                    continue
                c = comb(t, j) % p
                if not c:
                    continue
                y = _gen_monomial(alg, page, f"c_{t}")
                if y is None:
                    continue
                el = alg.add(el, alg.from_atom(Atom(((1, idx),), y), c))
        images[name] = el
    return page, GeneratorDifferential(images)


def _half(f: FieldSpec):
    from fractions import Fraction
    if f.characteristic == 0:
        return Fraction(1, 2)
    return pow(2, -1, f.characteristic)


def _gen_el(alg: FreeAlgebra, page: E1Page, cell: str):
    m = _gen_monomial(alg, page, cell)
    return alg.from_atom(Atom((), m)) if m is not None else alg.zero()


def _gen_monomial(alg: FreeAlgebra, page: E1Page, cell: str):
    for name, c in page.cell_of.items():
        if c == cell:
            return gen(page.gens.index(name))
    return None


def dphi_generic(sp: SpacePresentation, m: int, max_deg: int) -> tuple:
    """Differential from the stored coproduct and Steenrod tables of any
    presentation; reproduces the per-family formulas on rp/cp inputs."""
    page = generic_page(sp, m, max_deg)
    alg = FreeAlgebra(page.gens, max_deg)
    f = sp.field
    p = f.characteristic
    n = m - 1
    degs = dict(sp.generators)
    images = {}
    for name in page.gens.names:
        cell = page.cell_of[name]
        el = alg.zero()
        for (a, b, c) in sp.coproduct.get(cell, ()):
            if degs[a] > degs[b]:
                continue  # keep one ordered representative per pair
            if degs[a] == degs[b] and a != b and a > b:
                continue
            ea = _gen_el(alg, page, a)
            eb = _gen_el(alg, page, b)
            if not (ea and eb):
                continue
            sign = f.one()
            if p != 2 and (n * degs[a]) % 2:
                sign = f.neg(sign)
            term = alg.scale(f.mul(sign, f.conv(c)), alg.bracket(ea, eb))
            if a == b:
                if p == 2:
                    continue   # square of a class: handled by the top letter
                term = alg.scale(_half(f), term)
            el = alg.add(el, term)
        for (j, lbl), (c, target) in sp.steenrod.items():
            if lbl != cell:
                continue
            y = _gen_monomial(alg, page, target)
            if y is None:
                continue
            dsrc, dtgt = degs[cell], degs[target]
            if p == 2:
                idx = dsrc - 2 * dtgt + m - 1
                if 0 <= idx <= n:
                    el = alg.add(el, alg.from_atom(Atom(((0, idx),), y), c))
            elif p > 2:
                num = dsrc - p * dtgt + (p - 1) * m
                if num % (p - 1):
                    raise ConfigError(
                        f"operation {j} on {lbl} does not fit the letter grid")
                idx = num // (p - 1)
                if 0 < idx <= n:
                    el = alg.add(el, alg.from_atom(Atom(((1, idx),), y), c))
            # characteristic 0: no letter terms
        images[name] = el
    return page, GeneratorDifferential(images)


# -- extension of d and window assembly ----------------------------------------

class Differential:
    """d on the whole basis: derivation over products and brackets, zero on
    non-top letters, bracket square on the top letter."""

    def __init__(self, alg: FreeAlgebra, gd: GeneratorDifferential):
        self.alg = alg
        self.images = {alg.g.index(name): el for name, el in gd.images.items()}
        self._atom_cache: dict = {}

    def element(self, e: dict) -> dict:
        alg = self.alg
        out = alg.zero()
        for mono, c in e.items():
            out = alg.add(out, alg.scale(c, self.monomial(mono)))
        return out

    def monomial(self, m: Monomial) -> dict:
        alg, f = self.alg, self.alg.f
        out = alg.zero()
        sign_parity = 0
        for t, (a, k) in enumerate(m):
            da = self.atom(a)
            if da:
                prefix: Monomial = m[:t]
                suffix: Monomial = (((a, k - 1),) if k > 1 else ()) + m[t + 1:]
                term = alg.mul({prefix: f.one()}, da)
                term = alg.mul(term, {suffix: f.one()})
                coeff = f.conv(k if sign_parity % 2 == 0 else -k)
                out = alg.add(out, alg.scale(coeff, term))
            sign_parity += alg.atom_degree(a) * k
        return out

    def atom(self, a: Atom) -> dict:
        if a in self._atom_cache:
            return self._atom_cache[a]
        alg = self.alg
        n = alg.n
        p = alg.p
        if not a.word:
            res = self.lie(a.core)
        else:
            beta, i = a.word[0]
            inner = Atom(a.word[1:], a.core)
            dy = self.atom(inner)
            if not dy:
                res = alg.zero()
            elif p == 2:
                # the letter climbs one step on dy; at the top it falls off
                # the window and the bracket with the argument appears.  The
                # climb dies on pure bracket classes (d.d = 0 forces it).
                res = alg.zero()
                if i + 1 <= n:
                    res = alg.apply_letter(0, i + 1, dy, climb_mode=True)
                if i == n:
                    res = alg.add(res, alg.bracket(dy, alg.from_atom(inner)))
            elif beta:
                raise AlgebraError(
                    "differential of a Bockstein-letter atom with nonvanishing "
                    "core differential is not determined")
            elif n == 0:
                # bottom letter is the p-th power: iterated bracket
                y = alg.from_atom(inner)
                acc = dy
                for _ in range(p - 1):
                    acc = alg.bracket(y, acc)
                res = acc
            else:
                raise AlgebraError(
                    "differential of a letter atom at odd p with nonvanishing "
                    "core differential is not determined")
        self._atom_cache[a] = res
        return res

    def lie(self, mon: Mon) -> dict:
        alg, f = self.alg, self.alg.f
        if mon[0] == "g":
            return self.images.get(mon[1], alg.zero())
        left, right = mon[1], mon[2]
        el = alg.from_atom(Atom((), left))
        er = alg.from_atom(Atom((), right))
        t1 = alg.bracket(self.lie(left), er)
        t2 = alg.bracket(el, self.lie(right))
        sgn = -1 if (alg.core_degree(left) + alg.n) % 2 else 1
        return alg.add(t1, alg.scale(sgn, t2))


def check_gd_squares_to_zero(alg: FreeAlgebra, gd: GeneratorDifferential) -> None:
    diff = Differential(alg, gd)
    for name, el in gd.images.items():
        sq = diff.element(el)
        if sq:
            raise GradedError(
                f"d.d({name}) = {alg.render(sq)} is nonzero")


def extend_and_assemble(page: E1Page, gd: GeneratorDifferential,
                        max_deg: int) -> DGWindow:
    """Matrices of d on the monomial basis up to max_deg; fails hard when
    the composite of two differentials is nonzero anywhere in the window."""
    alg = FreeAlgebra(page.gens, max_deg)
    diff = Differential(alg, gd)
    basis = alg.basis()
    index = {d: {m: i for i, m in enumerate(basis[d])} for d in basis}
    labels = {d: tuple(alg.render_mono(m) for m in basis[d]) for d in basis
              if basis[d]}
    mats = {}
    for k in range(1, max_deg + 1):
        cols = []
        for mono in basis[k]:
            img = diff.monomial(mono)
            col = {}
            for m2, c in img.items():
                deg2 = alg.mono_degree(m2)
                if deg2 != k - 1:
                    raise GradedError(
                        f"d({alg.render_mono(mono)}) has a degree-{deg2} term")
                col[index[k - 1][m2]] = c
            cols.append(col)
        mats[k] = SparseMatrix.from_columns(len(basis[k - 1]), cols)
    window = DGWindow(GradedBasis({d: labels.get(d, ()) for d in basis}),
                      page.gens.field, mats, max_deg)
    ok, where = verify_composition_zero(window)
    if not ok:
        k, c = where
        raise GradedError(
            f"d.d is nonzero on {basis[k][c]!r} in degree {k}: "
            "a rewriting rule is inconsistent")
    return window


# -- top-level homology ----------------------------------------------------------

def build_gd(family: str, f: FieldSpec, m: int, max_deg: int,
             trunc: int | None = None, dim: int | None = None,
             space: SpacePresentation | None = None) -> tuple:
    if family == "rp":
        return dphi_rp(trunc, m, f, max_deg)
    if family == "cp":
        return dphi_cp(trunc, m, f, max_deg)
    if family == "sphere":
        page = _sphere_page(dim, m, f, max_deg)
        return page, GeneratorDifferential({"x": {}})
    if family == "file":
        if space is None:
            raise ConfigError("family 'file' needs a presentation")
        return dphi_generic(space, m, max_deg)
    raise ConfigError(f"unknown family {family!r}")


def e2_homology(family: str, f: FieldSpec, m: int, lo: int, hi: int,
                trunc: int | None = None, dim: int | None = None,
                space: SpacePresentation | None = None,
                max_deg: int | None = None) -> list:
    """Rows (degree, dimension, representative labels) for lo..hi."""
    if max_deg is None:
        max_deg = hi + 1
    if max_deg < hi + 1:
        raise ConfigError("window must reach one past the top degree")
    page, gd = build_gd(family, f, m, max_deg, trunc=trunc, dim=dim, space=space)
    window = extend_and_assemble(page, gd, max_deg)
    alg = FreeAlgebra(page.gens, max_deg)
    basis = alg.basis()
    dims = homology_dimensions(window, lo, hi)
    rows = []
    for k in range(lo, hi + 1):
        reps = homology_representatives(window, k)
        labels = []
        for vec in reps:
            el = {basis[k][i]: c for i, c in vec.items()}
            labels.append(alg.render(el))
        assert len(reps) == dims[k]
        rows.append((k, dims[k], labels))
    return rows


def m1_presentation(family: str, n: int, max_deg: int) -> tuple:
    """Single-loop answer read off combinatorially: generators in the
    window band, the quadratic relation strings, and the word-count
    dimension series (first letter in [n, 2n], later letters in (n, 2n])."""
    if family == "rp":
        letter = "u"
        deg = {i: i for i in range(n, 2 * n + 1)}
    elif family == "cp":
        letter = "v"
        deg = {i: 2 * i + 1 for i in range(n, 2 * n + 1)}
    else:
        raise ConfigError("single-loop presentations cover rp and cp")
    gens = [(f"{letter}_{i}", deg[i]) for i in range(n, 2 * n + 1)]
    relations = []
    for k in range(0, n + 1):
        terms = []
        for a in range(n, n + k + 1):
            b = 2 * n + k - a
            terms.append(f"{letter}_{a}{letter}_{b}")
        relations.append("+".join(terms))
    # dimension series by total degree
    series = {d: 0 for d in range(0, max_deg + 1)}
    first = [deg[i] for i in range(n, 2 * n + 1)]
    later = [deg[i] for i in range(n + 1, 2 * n + 1)]

    def count(rem: int) -> dict:
        # words over 'later' letters by total degree
        out = [0] * (rem + 1)
        out[0] = 1
        for d in range(1, rem + 1):
            out[d] = sum(out[d - w] for w in later if w <= d)
        return out

    tails = count(max_deg)
    for w in first:
        for d in range(w, max_deg + 1):
            series[d] += tails[d - w]
    return gens, relations, series
