"""Homology presentations of the supported input spaces: graded generators
with a reduced coproduct and a Steenrod action.

Families:
  rp      real projective space modulo a skeleton, mod 2 only
  cp      complex projective space modulo a skeleton, any field
  sphere  a single cell, everything reduced is trivial
  file    user-defined, loaded from the text format below

The presentations are infinite; a constructor materializes cells up to the
degree bound the caller asks for.  Coproducts store every ordered pair that
survives the truncation.  The Steenrod table stores the homology-side
action: for rp, op j sends the i-cell to binom(i-j, j) times the (i-j)-cell;
for cp the printed formulas in terms of cell indices are used as given.

Text format (one declaration per line, '#' comments):

    family file
    field 2
    connectivity 2
    generator e_3 3
    coproduct e_6 e_3 e_3 1
    steenrod 2 e_5 e_3 1

meaning: Sq^2 sends e_5 to 1*e_3; the coproduct of e_6 contains e_3 (x) e_3
with coefficient 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .exactlin import FieldSpec


class SpaceError(Exception):
    pass


@dataclass(frozen=True)
class SpacePresentation:
    family: str
    field: FieldSpec
    generators: tuple          # ((label, degree), ...) ordered by degree
    coproduct: dict            # label -> ((l1, l2, coeff), ...)
    steenrod: dict             # (op_index, label) -> (coeff, target_label)
    connectivity: int
    max_degree: int            # cells materialized up to this degree
    params: tuple = ()         # family parameters, for re-materializing

    def degree(self, label: str) -> int:
        for l, d in self.generators:
            if l == label:
                return d
        raise SpaceError(f"unknown generator {label}")

    def labels(self) -> list:
        return [l for l, _ in self.generators]


def rp_quotient(n: int, f: FieldSpec, max_degree: int = 40) -> SpacePresentation:
    """RP^infinity with the n-skeleton collapsed; cells e_i, i > n, degree i."""
    if n < 1:
        raise SpaceError("skeleton index must be >= 1")
    if f.characteristic != 2:
        raise SpaceError("rp homology needs characteristic 2")
    gens = tuple((f"e_{i}", i) for i in range(n + 1, max_degree + 1))
    coproduct = {}
    for i in range(n + 1, max_degree + 1):
        pairs = []
        for j in range(n + 1, i - n):
            if i - j > n:
                pairs.append((f"e_{j}", f"e_{i - j}", 1))
        coproduct[f"e_{i}"] = tuple(pairs)
    steenrod = {}
    for i in range(n + 1, max_degree + 1):
        for j in range(1, i + 1):
            if i - j <= n:
                continue
            c = comb(i - j, j) % 2
            if c:
                steenrod[(j, f"e_{i}")] = (1, f"e_{i - j}")
    return SpacePresentation("rp", f, gens, coproduct, steenrod,
                             connectivity=n, max_degree=max_degree,
                             params=(n,))


def cp_quotient(n: int, f: FieldSpec, max_degree: int = 40) -> SpacePresentation:
    """CP^infinity with the n-skeleton collapsed; cells c_i, i > n, degree 2i."""
    if n < 1:
        raise SpaceError("skeleton index must be >= 1")
    p = f.characteristic
    top = max_degree // 2
    gens = tuple((f"c_{i}", 2 * i) for i in range(n + 1, top + 1))
    coproduct = {}
    for i in range(n + 1, top + 1):
        pairs = []
        for j in range(n + 1, i - n):
            if i - j > n:
                pairs.append((f"c_{j}", f"c_{i - j}", 1))
        coproduct[f"c_{i}"] = tuple(pairs)
    steenrod = {}
    if p == 2:
        # op index 2j: the printed rule in cell indices
        for i in range(n + 1, top + 1):
            for j in range(1, i + 1):
                if i - j <= n:
                    continue
                c = comb(i - j, j) % 2
                if c:
                    steenrod[(2 * j, f"c_{i}")] = (1, f"c_{i - j}")
    elif p > 2:
        # power operations P^j, degree drop 2j(p-1)
        for i in range(n + 1, top + 1):
            for j in range(1, i + 1):
                t = i - (p - 1) * j
                if t <= n:
                    continue
                c = comb(t, j) % p
                if c:
                    steenrod[(j, f"c_{i}")] = (c, f"c_{t}")
    return SpacePresentation("cp", f, gens, coproduct, steenrod,
                             connectivity=2 * n + 1, max_degree=max_degree,
                             params=(n,))


def sphere(d: int, f: FieldSpec, max_degree: int = 40) -> SpacePresentation:
    """A single cell in degree d >= 2; reduced structure trivial."""
    if d < 2:
        raise SpaceError("sphere dimension must be >= 2")
    gens = (("x", d),) if d <= max_degree else ()
    return SpacePresentation("sphere", f, gens, {"x": ()} if gens else {}, {},
                             connectivity=d - 1, max_degree=max_degree,
                             params=(d,))


def rematerialize(sp: SpacePresentation, max_degree: int) -> SpacePresentation:
    """Same space, cells up to a (possibly larger) degree bound."""
    if max_degree <= sp.max_degree:
        return sp
    if sp.family == "rp":
        return rp_quotient(sp.params[0], sp.field, max_degree)
    if sp.family == "cp":
        return cp_quotient(sp.params[0], sp.field, max_degree)
    if sp.family == "sphere":
        return sphere(sp.params[0], sp.field, max_degree)
    raise SpaceError(f"cannot extend a {sp.family} presentation beyond "
                     f"degree {sp.max_degree}; regenerate the input file")


def validate(sp: SpacePresentation, max_deg: int) -> tuple:
    """Coassociativity and cocommutativity of the reduced coproduct, and
    Steenrod degree bookkeeping, for cells of degree <= max_deg.
    Returns (ok, message); the message names the first failure.
    """
    f = sp.field
    degs = dict(sp.generators)
    for label, d in sp.generators:
        if d > max_deg:
            continue
        pairs = sp.coproduct.get(label, ())
        for (a, b, c) in pairs:
            if degs[a] + degs[b] != d:
                return False, f"coproduct of {label}: degrees {a},{b} do not add up"
        # cocommutativity with the Koszul sign
        table = {}
        for (a, b, c) in pairs:
            table[(a, b)] = f.add(table.get((a, b), f.zero()), f.conv(c))
        for (a, b), c in table.items():
            sign = -1 if (degs[a] * degs[b]) % 2 else 1
            cc = table.get((b, a), f.zero())
            if not f.is_zero(f.sub(c, f.mul(f.conv(sign), cc))):
                return False, f"coproduct of {label} not cocommutative at ({a},{b})"
    # coassociativity: compare the two triple coproducts
    for label, d in sp.generators:
        if d > max_deg:
            continue
        left = {}
        right = {}
        for (a, b, c) in sp.coproduct.get(label, ()):
            for (a1, a2, c2) in sp.coproduct.get(a, ()):
                k = (a1, a2, b)
                left[k] = f.add(left.get(k, f.zero()),
                                f.mul(f.conv(c), f.conv(c2)))
            for (b1, b2, c2) in sp.coproduct.get(b, ()):
                k = (a, b1, b2)
                right[k] = f.add(right.get(k, f.zero()),
                                 f.mul(f.conv(c), f.conv(c2)))
        for k in set(left) | set(right):
            if not f.is_zero(f.sub(left.get(k, f.zero()), right.get(k, f.zero()))):
                return False, f"coproduct of {label} not coassociative at {k}"
    # Steenrod degree drops: squares drop by the operation index, odd-p
    # power operations by 2j(p-1)
    for (j, label), (c, target) in sp.steenrod.items():
        if degs[label] > max_deg:
            continue
        if f.characteristic > 2:
            drop = 2 * j * (f.characteristic - 1)
        else:
            drop = j
        if degs[label] - drop != degs[target]:
            return False, f"operation {j} on {label}: degree bookkeeping fails"
    return True, "ok"


# -- text format ---------------------------------------------------------------

def dumps(sp: SpacePresentation) -> str:
    lines = [f"family {sp.family}",
             f"field {sp.field.characteristic}",
             f"connectivity {sp.connectivity}",
             f"maxdegree {sp.max_degree}"]
    for label, d in sp.generators:
        lines.append(f"generator {label} {d}")
    for label, _ in sp.generators:
        for (a, b, c) in sp.coproduct.get(label, ()):
            lines.append(f"coproduct {label} {a} {b} {c}")
    for (j, label), (c, target) in sorted(sp.steenrod.items(),
                                          key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append(f"steenrod {j} {label} {target} {c}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> SpacePresentation:
    family = "file"
    char = None
    connectivity = None
    max_degree = 0
    gens = []
    coproduct: dict = {}
    steenrod = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "family":
                family = parts[1]
            elif kind == "field":
                char = int(parts[1])
            elif kind == "connectivity":
                connectivity = int(parts[1])
            elif kind == "maxdegree":
                max_degree = int(parts[1])
            elif kind == "generator":
                gens.append((parts[1], int(parts[2])))
            elif kind == "coproduct":
                coproduct.setdefault(parts[1], []).append(
                    (parts[2], parts[3], int(parts[4])))
            elif kind == "steenrod":
                steenrod[(int(parts[1]), parts[2])] = (int(parts[4]), parts[3])
            else:
                raise SpaceError(f"line {ln}: unknown declaration {kind!r}")
        except (IndexError, ValueError) as exc:
            raise SpaceError(f"line {ln}: malformed {kind!r} declaration") from exc
    if char is None:
        raise SpaceError("missing 'field' declaration")
    gens.sort(key=lambda g: (g[1], g[0]))
    if connectivity is None:
        connectivity = min((d for _, d in gens), default=1) - 1
    if not max_degree:
        max_degree = max((d for _, d in gens), default=0)
    known = {l for l, _ in gens}
    cop = {}
    for label, pairs in coproduct.items():
        merged: dict = {}
        for (a, b, c) in pairs:
            if label not in known or a not in known or b not in known:
                raise SpaceError("coproduct references unknown generator")
            merged[(a, b)] = merged.get((a, b), 0) + c
        cop[label] = tuple((a, b, c) for (a, b), c in merged.items() if c)
    cop = {l: cop.get(l, ()) for l, _ in gens}
    return SpacePresentation(family, FieldSpec(char), tuple(gens), cop,
                             steenrod, connectivity, max_degree)
