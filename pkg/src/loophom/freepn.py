"""The free commutative algebra on operation-decorated Lie monomials: basis
enumeration up to a degree bound and normalization of algebra expressions.

Basis elements (monomials) are products of distinct-enough atoms; an atom is
a Lie monomial wrapped in a word of lowering operations:

  mod 2:    e_{i_1}..e_{i_k}(w),  0 <= i_1 <= .. <= i_k <= n,
            deg e_i(y) = i + 2 deg(y)
  mod p>2:  b^{eps_1}e_{i_1}..(w), letters additionally need i = deg(arg)
            mod 2, and a Bockstein never sits on a bottom letter (b.e_0 = 0
            since e_0 is the p-th power); deg e_i(y) = p deg(y) + (p-1) i,
            each Bockstein lowers by 1
  char 0:   no letters at all

Multiplicities: over Z/2 atoms are pairwise distinct and a repeated atom
carries into a bottom letter (x*x = e_0 x); over Z/p odd atoms square to
zero and an even atom in multiplicity p carries into e_0; over Q only the
odd-degree cap applies.

Operation calculus is done in the stable indexing Q^j (j = i + deg arg mod
2, 2j = i + deg arg mod p): excess below kills, range above the window
truncates to zero, products expand by the Cartan formula and inadmissible
mod-2 composites by the Adem relation.  Brackets against decorated atoms
vanish for non-top letters; the top letter acts as a bracket square,
[e_n y, x] = [y,[y,x]] mod 2 and ad(y)^p(x) mod p.  (The last two rules are
forced by requiring the page differentials to square to zero; see the
tests.)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .exactlin import FieldSpec
from .lie import (AlgebraError, LieAlgebra, LieContext, Mon, br, gen,
                  lie_basis_monomials, mon_sort_key)


@dataclass(frozen=True)
class GeneratorSet:
    """Named generators with degrees, the field, and the bracket degree n."""

    names: tuple
    degrees: tuple
    field: FieldSpec
    n: int

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise AlgebraError("generator names must be distinct")
        if any(d < 1 for d in self.degrees):
            raise AlgebraError("generator degrees must be >= 1")
        if self.n < 0:
            raise AlgebraError("bracket degree must be >= 0")

    def index(self, name: str) -> int:
        return self.names.index(name)


class Atom(NamedTuple):
    """word: letters outermost first, each (beta, i); core: Lie monomial."""

    word: tuple
    core: Mon


Monomial = tuple  # tuple of (Atom, multiplicity), canonically sorted
UNIT: Monomial = ()


def _core_key(m: Mon):
    return mon_sort_key(m)


class FreeAlgebra:
    """Working context: generators, degree window, and all arithmetic."""

    def __init__(self, gens: GeneratorSet, max_deg: int):
        self.g = gens
        self.f = gens.field
        self.n = gens.n
        self.p = gens.field.characteristic
        self.max_deg = max_deg
        self.ctx = LieContext(degrees=gens.degrees, n=gens.n, field=gens.field)
        self.lie = LieAlgebra(self.ctx, max_deg)
        self._atoms = None
        self._basis = None

    # -- degrees -----------------------------------------------------------
    def core_degree(self, m: Mon) -> int:
        return self.ctx.degree(m)

    def atom_degree(self, a: Atom) -> int:
        d = self.core_degree(a.core)
        for beta, i in reversed(a.word):
            if self.p == 2:
                d = i + 2 * d
            else:
                d = self.p * d + (self.p - 1) * i - beta
        return d

    def mono_degree(self, m: Monomial) -> int:
        return sum(self.atom_degree(a) * k for a, k in m)

    def atom_key(self, a: Atom):
        return (self.atom_degree(a), _core_key(a.core), a.word)

    def check_atom(self, a: Atom) -> None:
        d = self.core_degree(a.core)
        prev = None
        for beta, i in reversed(a.word):
            if self.p == 0:
                raise AlgebraError("no operation letters in characteristic 0")
            if not 0 <= i <= self.n:
                raise AlgebraError(f"letter {i} outside 0..{self.n}")
            if self.p > 2:
                if i % 2 != d % 2:
                    raise AlgebraError(f"letter {i} parity mismatch on degree {d}")
                if beta and i == 0:
                    raise AlgebraError("Bockstein on a bottom letter is zero")
            if prev is not None and i > prev:
                raise AlgebraError(f"letters not monotone: {a.word}")
            prev = i
            d = i + 2 * d if self.p == 2 else self.p * d + (self.p - 1) * i - beta
        # reversed: prev ends as the outermost letter; monotonicity checked
        # inner-to-outer as i_outer <= i_inner

    # -- elements ------------------------------------------------------------
    # An element is a dict {Monomial: scalar}, zero coefficients removed.

    def zero(self) -> dict:
        return {}

    def unit(self, c=None) -> dict:
        c = self.f.one() if c is None else self.f.conv(c)
        return {} if self.f.is_zero(c) else {UNIT: c}

    def from_atom(self, a: Atom, c=None) -> dict:
        c = self.f.one() if c is None else self.f.conv(c)
        if self.f.is_zero(c):
            return {}
        return {((a, 1),): c}

    def add(self, *els) -> dict:
        out: dict = {}
        for e in els:
            for m, c in e.items():
                s = self.f.add(out.get(m, self.f.zero()), c)
                if self.f.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return out

    def scale(self, c, e: dict) -> dict:
        c = self.f.conv(c)
        if self.f.is_zero(c):
            return {}
        return {m: self.f.mul(c, w) for m, w in e.items()}

    def neg(self, e: dict) -> dict:
        return {m: self.f.neg(c) for m, c in e.items()}

    def mono_from_factors(self, factors: list) -> tuple:
        """(sign, Monomial or None) from an ordered list of (Atom, mult).

        Sorts with Koszul signs, merges equal atoms, kills odd squares and
        carries saturated multiplicities into bottom letters.
        """
        f = self.f
        items = [(a, k) for a, k in factors if k]
        sign = f.one()
        while True:
            # insertion sort counting odd-odd transpositions
            keyed = [(self.atom_key(a), a, k, self.atom_degree(a) % 2)
                     for a, k in items]
            arr = []
            for key, a, k, odd in keyed:
                pos = len(arr)
                while pos > 0 and arr[pos - 1][0] > key:
                    pos -= 1
                if odd and f.characteristic != 2:
                    crossed = sum(kk * oo for _, _, kk, oo in arr[pos:])
                    if crossed % 2:
                        sign = f.neg(sign)
                arr.insert(pos, (key, a, k, odd))
            # merge equal atoms
            merged: list = []
            for key, a, k, odd in arr:
                if merged and merged[-1][0] == a:
                    merged[-1][1] += k
                else:
                    merged.append([a, k, odd])
            carries = []
            out = []
            for a, k, odd in merged:
                if odd and f.characteristic != 2 and k >= 2:
                    return f.zero(), None
                cap = 1 if f.characteristic == 2 else (
                    f.characteristic - 1 if f.characteristic else None)
                if cap is not None and k > cap:
                    ncar, k = divmod(k, cap + 1)
                    carries.append((self.bottom_carry(a), ncar))
                if k:
                    out.append((a, k))
            if not carries:
                return sign, tuple(out)
            items = out + carries

    def bottom_carry(self, a: Atom) -> Atom:
        """The p-th power (square mod 2) of an atom as a bottom-letter atom."""
        na = Atom(((0, 0),) + a.word, a.core)
        self.check_atom(na)
        return na

    def mul_mono(self, m1: Monomial, m2: Monomial, c) -> dict:
        sign, m = self.mono_from_factors(list(m1) + list(m2))
        if m is None or self.f.is_zero(sign):
            return {}
        c = self.f.mul(c, sign)
        return {} if self.f.is_zero(c) else {m: c}

    def mul(self, e1: dict, e2: dict) -> dict:
        out: dict = {}
        for m1, c1 in e1.items():
            for m2, c2 in e2.items():
                for m, c in self.mul_mono(m1, m2, self.f.mul(c1, c2)).items():
                    s = self.f.add(out.get(m, self.f.zero()), c)
                    if self.f.is_zero(s):
                        out.pop(m, None)
                    else:
                        out[m] = s
        return out

    def element_degree(self, e: dict):
        degs = {self.mono_degree(m) for m in e}
        if len(degs) > 1:
            raise AlgebraError(f"inhomogeneous element: degrees {sorted(degs)}")
        return degs.pop() if degs else None

    # -- operation calculus --------------------------------------------------
    def apply_letter(self, beta: int, i: int, e: dict,
                     climb_mode: bool = False) -> dict:
        """Letter e_i (with optional Bockstein) applied to a homogeneous
        element, interpreted at the stable index of its degree.

        climb_mode evaluates the letter the way the differential extension
        needs it: prepends above the bottom die on undecorated bracket
        atoms and on decorated atoms whose head letter differs from the one
        being formed.  Both restrictions are forced by d.d = 0 on deep
        windows; see the page tests and the notes in dgal."""
        if self.p == 0:
            raise AlgebraError("no operation letters in characteristic 0")
        d = self.element_degree(e)
        if d is None:
            return {}
        if self.p == 2:
            if beta:
                raise AlgebraError("no Bockstein mod 2")
            return self.apply_q(i + d, e, climb_mode=climb_mode)
        if (i + d) % 2:
            raise AlgebraError(f"letter {i} parity mismatch on degree {d}")
        return self.apply_q((i + d) // 2, e, beta=beta, climb_mode=climb_mode)

    def apply_q(self, j: int, e: dict, beta: int = 0,
                climb_mode: bool = False) -> dict:
        out = self.zero()
        for m, c in e.items():
            out = self.add(out, self.scale(c, self._q_mono(j, beta, m,
                                                           climb_mode)))
        return out

    def _q_mono(self, j: int, beta: int, m: Monomial,
                climb_mode: bool = False) -> dict:
        if not m:
            # unit: Q^0 = identity, anything else vanishes
            if j == 0 and not beta:
                return self.unit()
            return {}
        if len(m) == 1 and m[0][1] == 1:
            return self._q_atom(j, beta, m[0][0], climb_mode)
        # Cartan: peel one copy of the first atom
        (a, k) = m[0]
        rest = ((a, k - 1),) + m[1:] if k > 1 else m[1:]
        da = self.atom_degree(a)
        out = self.zero()
        if self.p == 2:
            for ja in range(da, min(da + self.n, j) + 1):
                ea = self._q_atom(ja, 0, a, climb_mode)
                if not ea:
                    continue
                erest = self._q_mono(j - ja, 0, rest, climb_mode)
                out = self.add(out, self.mul(ea, erest))
            return out
        # odd p; Q^j and its Bockstein expand with a derivation rule
        lo = (da + 1) // 2
        hi = (da + self.n) // 2
        for ja in range(lo, min(hi, j) + 1):
            erest_j = j - ja
            ea = self._q_atom(ja, 0, a, climb_mode)
            if ea:
                erest = self._q_mono(erest_j, beta, rest, climb_mode)
                out = self.add(out, self.mul(ea, erest))
            if beta:
                eba = self._q_atom(ja, 1, a, climb_mode)
                if eba:
                    erest = self._q_mono(erest_j, 0, rest, climb_mode)
                    # sign: the Bockstein passed the first factor
                    sgn = -1 if (2 * ja * (self.p - 1) + da) % 2 else 1
                    out = self.add(out, self.scale(sgn, self.mul(eba, erest)))
        return out

    def _climb_blocks(self, i: int, a: Atom) -> bool:
        # in climb mode a forming letter above the bottom does not land on
        # a bare bracket class, nor below the head letter of a decorated
        # atom; rewrites through the Adem relation are unaffected
        if i < 1:
            return False
        if not a.word:
            return a.core[0] == "b"
        return i < a.word[0][1]

    def _q_atom(self, j: int, beta: int, a: Atom,
                climb_mode: bool = False) -> dict:
        d = self.atom_degree(a)
        if self.p == 2:
            if j < d or j > d + self.n:
                return {}
            i = j - d
            if beta:
                raise AlgebraError("no Bockstein mod 2")
            if climb_mode and self._climb_blocks(i, a):
                return {}
            if not a.word or i <= a.word[0][1]:
                na = Atom(((0, i),) + a.word, a.core)
                return self.from_atom(na)
            # inadmissible composite: Adem for Q^r Q^s, r > 2s; the climb
            # restriction applies to the original application only
            inner = Atom(a.word[1:], a.core)
            s = a.word[0][1] + self.atom_degree(inner)
            r = j
            assert r > 2 * s
            out = self.zero()
            for t in range((r + 1) // 2, r - s):
                if _binom2(t - s - 1, 2 * t - r):
                    et = self._q_atom(t, 0, inner)
                    for mt, ct in et.items():
                        assert len(mt) == 1 and mt[0][1] == 1
                        e2 = self._q_atom(r + s - t, 0, mt[0][0])
                        out = self.add(out, self.scale(ct, e2))
            return out
        # odd p
        if 2 * j < d or 2 * j > d + self.n:
            return {}
        i = 2 * j - d
        if beta and i == 0:
            return {}
        if climb_mode and self._climb_blocks(i, a):
            return {}
        if not a.word or i <= a.word[0][1]:
            na = Atom(((beta, i),) + a.word, a.core)
            self.check_atom(na)
            return self.from_atom(na)
        raise AlgebraError(
            f"needs mod-p Adem: Q^{j} on atom with word {a.word}")

    def apply_beta(self, e: dict) -> dict:
        """Bockstein, as a derivation; zero on undecorated Lie atoms."""
        if self.p in (0, 2):
            raise AlgebraError("Bockstein needs odd characteristic")
        out = self.zero()
        for m, c in e.items():
            sign = 1
            for t, (a, k) in enumerate(m):
                ba = self._beta_atom(a)
                if ba:
                    rest = m[:t] + ((a, k - 1),) + m[t + 1:] if k > 1 \
                        else m[:t] + m[t + 1:]
                    coeff = self.f.mul(c, self.f.conv(sign * k))
                    prefix = {m[:t]: self.f.one()} if t else self.unit()
                    term = self.mul(prefix, ba)
                    term = self.mul(term, {(((a, k - 1),) if k > 1 else ()) + m[t + 1:]: self.f.one()})
                    out = self.add(out, self.scale(coeff, term))
                if (self.atom_degree(a) * k) % 2:
                    sign = -sign
        return out

    def _beta_atom(self, a: Atom) -> dict:
        if not a.word:
            return {}  # no Bockstein action on the generators we support
        beta, i = a.word[0]
        if beta or i == 0:
            return {}
        return self.from_atom(Atom(((1, i),) + a.word[1:], a.core))

    # -- brackets --------------------------------------------------------------
    def shifted_mono(self, m: Monomial) -> int:
        return self.mono_degree(m) + self.n

    def bracket(self, e1: dict, e2: dict) -> dict:
        out = self.zero()
        for m1, c1 in e1.items():
            for m2, c2 in e2.items():
                t = self._br_mono(m1, m2)
                out = self.add(out, self.scale(self.f.mul(c1, c2), t))
        return out

    def _br_mono(self, m1: Monomial, m2: Monomial) -> dict:
        if not m1 or not m2:
            return {}
        single2 = len(m2) == 1 and m2[0][1] == 1
        single1 = len(m1) == 1 and m1[0][1] == 1
        if not single2:
            # right Poisson: [z, x*y] = [z,x]*y + (-1)^(sh(z) deg(x)) x*[z,y]
            (a, k) = m2[0]
            x = ((a, 1),)
            rest = ((a, k - 1),) + m2[1:] if k > 1 else m2[1:]
            t1 = self.mul(self._br_mono(m1, x), {rest: self.f.one()})
            sgn = -1 if (self.shifted_mono(m1) * self.atom_degree(a)) % 2 else 1
            t2 = self.scale(sgn, self.mul({x: self.f.one()},
                                          self._br_mono(m1, rest)))
            return self.add(t1, t2)
        if not single1:
            sgn = -1 if (self.shifted_mono(m1) * self.shifted_mono(m2)) % 2 else 1
            return self.scale(-sgn, self._br_mono(m2, m1))
        return self._br_atoms(m1[0][0], m2[0][0])

    def _br_atoms(self, a: Atom, b: Atom) -> dict:
        if b.word:
            beta, i = b.word[0]
            if i < self.n:
                return {}
            if beta:
                raise AlgebraError(
                    "bracket with a Bockstein-decorated top atom is undetermined")
            inner = Atom(b.word[1:], b.core)
            y = self.from_atom(inner)
            # ad(e_n y) = ad(y)^2 (mod 2) or ad(y)^p (odd p), acting on a
            acc = self.from_atom(a)
            power = 2 if self.p == 2 else self.p
            for _ in range(power):
                acc = self.bracket(y, acc)
            sh_a = self.atom_degree(a) + self.n
            sh_b = self.atom_degree(b) + self.n
            sgn = -1 if (sh_a * sh_b) % 2 else 1
            # acc = [e_n y, a]; we want [a, e_n y]
            return self.scale(-sgn, acc)
        if a.word:
            sh_a = self.atom_degree(a) + self.n
            sh_b = self.atom_degree(b) + self.n
            sgn = -1 if (sh_a * sh_b) % 2 else 1
            return self.scale(-sgn, self._br_atoms(b, a))
        res = self.lie.bracket(a.core, b.core)
        out = {}
        for mon, c in res.items():
            cc = self.f.conv(c)
            if not self.f.is_zero(cc):
                out[((Atom((), mon), 1),)] = cc
        return out

    # -- basis -----------------------------------------------------------------
    def atoms(self) -> list:
        """All valid atoms of degree <= max_deg, sorted by atom_key."""
        if self._atoms is not None:
            return self._atoms
        out = []
        for d in sorted(self.lie.basis):
            for core in self.lie.basis[d]:
                base = Atom((), core)
                stack = [base]
                out.append(base)
                while stack:
                    cur = stack.pop()
                    dcur = self.atom_degree(cur)
                    cap = cur.word[0][1] if cur.word else self.n
                    if self.p == 0:
                        continue
                    for i in range(0, cap + 1):
                        betas = (0,) if self.p == 2 else (0, 1)
                        for beta in betas:
                            if self.p > 2:
                                if i % 2 != dcur % 2:
                                    continue
                                if beta and i == 0:
                                    continue
                            nd = (i + 2 * dcur if self.p == 2
                                  else self.p * dcur + (self.p - 1) * i - beta)
                            if nd > self.max_deg:
                                continue
                            na = Atom(((beta, i),) + cur.word, cur.core)
                            out.append(na)
                            stack.append(na)
        out.sort(key=self.atom_key)
        self._atoms = out
        return out

    def basis(self) -> dict:
        """Monomial basis per degree 0..max_deg; within a degree ordered by
        (number of atom factors with multiplicity, factor tuple)."""
        if self._basis is not None:
            return self._basis
        atoms = self.atoms()
        per_degree: dict = {d: [] for d in range(self.max_deg + 1)}

        def rec(idx: int, acc: list, deg: int):
            per_degree[deg].append(tuple(acc))
            for k in range(idx, len(atoms)):
                a = atoms[k]
                da = self.atom_degree(a)
                if da == 0 or deg + da > self.max_deg:
                    continue
                odd = da % 2
                if self.p == 2:
                    cap = 1
                elif odd:
                    cap = 1
                elif self.p:
                    cap = self.p - 1
                else:
                    cap = (self.max_deg - deg) // da
                mult = 1
                while mult <= cap and deg + mult * da <= self.max_deg:
                    acc.append((a, mult))
                    rec(k + 1, acc, deg + mult * da)
                    acc.pop()
                    mult += 1

        rec(0, [], 0)
        for d in per_degree:
            per_degree[d].sort(key=lambda m: (sum(k for _, k in m),
                                              tuple((self.atom_key(a), k) for a, k in m)))
        self._basis = per_degree
        return per_degree

    # -- rendering ---------------------------------------------------------
    def render_core(self, m: Mon) -> str:
        if m[0] == "g":
            return self.g.names[m[1]]
        return f"[{self.render_core(m[1])},{self.render_core(m[2])}]"

    def render_atom(self, a: Atom) -> str:
        core = self.render_core(a.core)
        if not a.word:
            return core
        word = "".join(("b." if beta else "") + f"e_{i}" for beta, i in a.word)
        return f"{word}({core})"

    def render_mono(self, m: Monomial) -> str:
        if not m:
            return "1"
        parts = []
        for a, k in m:
            s = self.render_atom(a)
            parts.append(s if k == 1 else f"{s}^{k}")
        return "*".join(parts)

    def render(self, e: dict) -> str:
        if not e:
            return "0"
        parts = []
        for m in sorted(e, key=lambda m: (self.mono_degree(m),
                                          sum(k for _, k in m),
                                          tuple((self.atom_key(a), k) for a, k in m))):
            c = e[m]
            cs = "" if c == self.f.one() else f"{c}*"
            parts.append(f"{cs}{self.render_mono(m)}")
        return " + ".join(parts)


def _binom2(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return int((b & (a - b)) == 0)


# -- expression trees and the module-level entry points ----------------------

def normalize(expr, g: GeneratorSet, max_deg: int | None = None) -> dict:
    """Evaluate an expression tree to a canonical element.

    Trees: ("gen", name), ("sum", [t...]), ("prod", [t...]),
    ("scale", c, t), ("pow", t, k), ("bracket", t1, t2),
    ("e", i, t), ("be", i, t), ("beta", t).
    """
    if max_deg is None:
        max_deg = _expr_degree_bound(expr, g)
    alg = FreeAlgebra(g, max_deg)
    return eval_expr(alg, expr)


def eval_expr(alg: FreeAlgebra, expr) -> dict:
    tag = expr[0]
    if tag == "gen":
        idx = alg.g.index(expr[1])
        return alg.from_atom(Atom((), gen(idx)))
    if tag == "sum":
        return alg.add(*[eval_expr(alg, t) for t in expr[1]])
    if tag == "prod":
        out = alg.unit()
        for t in expr[1]:
            out = alg.mul(out, eval_expr(alg, t))
        return out
    if tag == "scale":
        return alg.scale(expr[1], eval_expr(alg, expr[2]))
    if tag == "pow":
        base = eval_expr(alg, expr[1])
        out = alg.unit()
        for _ in range(expr[2]):
            out = alg.mul(out, base)
        return out
    if tag == "bracket":
        return alg.bracket(eval_expr(alg, expr[1]), eval_expr(alg, expr[2]))
    if tag == "e":
        return alg.apply_letter(0, expr[1], eval_expr(alg, expr[2]))
    if tag == "be":
        return alg.apply_letter(1, expr[1], eval_expr(alg, expr[2]))
    if tag == "beta":
        return alg.apply_beta(eval_expr(alg, expr[1]))
    raise AlgebraError(f"unknown expression tag {tag!r}")


def _expr_degree_bound(expr, g: GeneratorSet) -> int:
    """Upper bound for the degree of an expression, to size the window."""
    p = g.field.characteristic
    tag = expr[0]
    if tag == "gen":
        return g.degrees[g.index(expr[1])]
    if tag == "sum":
        return max(_expr_degree_bound(t, g) for t in expr[1])
    if tag == "prod":
        return sum(_expr_degree_bound(t, g) for t in expr[1])
    if tag == "scale":
        return _expr_degree_bound(expr[2], g)
    if tag == "pow":
        return _expr_degree_bound(expr[1], g) * expr[2]
    if tag == "bracket":
        return (_expr_degree_bound(expr[1], g) + _expr_degree_bound(expr[2], g)
                + g.n)
    if tag in ("e", "be"):
        d = _expr_degree_bound(expr[2], g)
        return expr[1] + 2 * d if p == 2 else p * d + (p - 1) * expr[1]
    if tag == "beta":
        return _expr_degree_bound(expr[1], g)
    raise AlgebraError(f"unknown expression tag {tag!r}")


def expr_of_element(alg: FreeAlgebra, e: dict):
    """Rebuild an expression tree evaluating to the given element."""
    terms = []
    for m, c in e.items():
        factors = []
        for a, k in m:
            t = _expr_of_core(alg, a.core)
            for beta, i in reversed(a.word):
                t = ("be" if beta else "e", i, t)
            factors.append(("pow", t, k) if k > 1 else t)
        body = ("prod", factors) if factors else ("prod", [])
        terms.append(("scale", c, body))
    return ("sum", terms)


def _expr_of_core(alg: FreeAlgebra, m: Mon):
    if m[0] == "g":
        return ("gen", alg.g.names[m[1]])
    return ("bracket", _expr_of_core(alg, m[1]), _expr_of_core(alg, m[2]))


def lie_basis(g: GeneratorSet, max_deg: int) -> dict:
    """Canonical Lie monomials per degree (nested-tuple form)."""
    ctx = LieContext(degrees=g.degrees, n=g.n, field=g.field)
    return lie_basis_monomials(ctx, max_deg)


def pn_basis(g: GeneratorSet, max_deg: int) -> dict:
    """Monomial basis per degree 0..max_deg."""
    return FreeAlgebra(g, max_deg).basis()


def eword_enumerate(atom_degree: int, g: GeneratorSet, max_deg: int) -> list:
    """All operation words applicable to an element of the given degree
    whose results stay within max_deg, the empty word included."""
    if atom_degree < 1:
        raise AlgebraError("atom degree must be >= 1")
    p = g.field.characteristic
    out = [()]
    if p == 0:
        return out
    stack = [((), atom_degree)]
    while stack:
        word, d = stack.pop()
        cap = word[0][1] if word else g.n
        for i in range(0, cap + 1):
            for beta in ((0,) if p == 2 else (0, 1)):
                if p > 2:
                    if i % 2 != d % 2:
                        continue
                    if beta and i == 0:
                        continue
                nd = i + 2 * d if p == 2 else p * d + (p - 1) * i - beta
                if nd > max_deg:
                    continue
                nw = ((beta, i),) + word
                out.append(nw)
                stack.append((nw, nd))
    out.sort(key=lambda w: (len(w), w))
    return out


def eword_to_dl(word: tuple, x_degree: int, g: GeneratorSet) -> tuple:
    """Convert a letter word (outermost first) on a core of the given degree
    to the stable upper-index form: tuple of (beta, j), outermost first.
    Checks the admissibility inequalities on the result."""
    p = g.field.characteristic
    if p == 0:
        raise AlgebraError("no operation words in characteristic 0")
    degs = [x_degree]
    for beta, i in reversed(word):
        d = degs[-1]
        degs.append(i + 2 * d if p == 2 else p * d + (p - 1) * i - beta)
    degs.pop()  # degree of the full atom not needed
    out = []
    for (beta, i), d in zip(word, reversed(degs)):
        if p == 2:
            j = i + d
        else:
            if (i + d) % 2:
                raise AlgebraError("parity violation in word")
            j = (i + d) // 2
        out.append((beta, j))
    # admissibility: mod 2, j_l <= 2 j_{l+1}; innermost j in the window
    js = [j for _, j in out]
    for a, b in zip(js, js[1:]):
        if p == 2 and a > 2 * b:
            raise AlgebraError("inadmissible word")
        if p > 2 and a > p * b:
            raise AlgebraError("inadmissible word")
    if js:
        if p == 2 and not (x_degree <= js[-1] <= x_degree + g.n):
            raise AlgebraError("innermost index out of window")
        if p > 2 and not (x_degree <= 2 * js[-1] <= x_degree + g.n):
            raise AlgebraError("innermost index out of window")
    return tuple(out)


# -- label parsing ------------------------------------------------------------

def parse_label(s: str, g: GeneratorSet):
    """Parse printable monomial labels like 'u_1u_2^2', 'e_1(u_2)',
    '[u_2,u_3]', 'b.e_2(v_1)', 'u_2u_3+u_3u_2' into expression trees."""
    toks = _tokenize(s, g.names)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take(kind=None):
        t = toks[pos[0]]
        if kind and t[0] != kind:
            raise AlgebraError(f"expected {kind}, got {t} in {s!r}")
        pos[0] += 1
        return t

    def parse_sum():
        terms = [parse_term()]
        while peek() and peek()[0] in ("+", "-"):
            op = take()[0]
            t = parse_term()
            terms.append(("scale", -1, t) if op == "-" else t)
        return ("sum", terms) if len(terms) > 1 else terms[0]

    def parse_term():
        coeff = 1
        if peek() and peek()[0] == "int":
            coeff = take()[1]
            if peek() and peek()[0] == "*":
                take()
        factors = [parse_factor()]
        while True:
            t = peek()
            if t and t[0] == "*":
                take()
                factors.append(parse_factor())
            elif t and t[0] in ("name", "op", "bop", "[", "("):
                factors.append(parse_factor())
            else:
                break
        body = factors[0] if len(factors) == 1 else ("prod", factors)
        return body if coeff == 1 else ("scale", coeff, body)

    def parse_factor():
        t = take()
        if t[0] == "name":
            node = ("gen", t[1])
        elif t[0] in ("op", "bop"):
            arg = parse_factor()
            node = ("be" if t[0] == "bop" else "e", t[1], arg)
        elif t[0] == "[":
            a = parse_sum()
            take(",")
            b = parse_sum()
            take("]")
            node = ("bracket", a, b)
        elif t[0] == "(":
            node = parse_sum()
            take(")")
        else:
            raise AlgebraError(f"unexpected token {t} in {s!r}")
        if peek() and peek()[0] == "^":
            take()
            k = take("int")[1]
            node = ("pow", node, k)
        return node

    tree = parse_sum()
    if pos[0] != len(toks):
        raise AlgebraError(f"trailing input in {s!r}")
    return tree


def _tokenize(s: str, names: tuple):
    import re
    toks = []
    i = 0
    by_len = sorted(names, key=len, reverse=True)
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "[],()^*+-":
            toks.append((ch,))
            i += 1
            continue
        if s.startswith("b.e_", i):
            m = re.match(r"b\.e_(\d+)", s[i:])
            toks.append(("bop", int(m.group(1))))
            i += m.end()
            continue
        m = re.match(r"e_(\d+)(?=[\(e]|b\.)", s[i:])
        if m:
            toks.append(("op", int(m.group(1))))
            i += m.end()
            continue
        hit = next((nm for nm in by_len if s.startswith(nm, i)), None)
        if hit is not None:
            toks.append(("name", hit))
            i += len(hit)
            continue
        m = re.match(r"\d+", s[i:])
        if m:
            toks.append(("int", int(m.group(0))))
            i += m.end()
            continue
        raise AlgebraError(f"cannot tokenize {s!r} at {i}")
    return toks
