"""Finite groups materialized as explicit multiplication tables.

Elements are the indices 0..n-1 with index 0 always the identity.  Groups
are built through four constructors (cyclic, dihedral, direct product,
permutation closure); every table is validated on construction.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

ORDER_CAP = 20_000

# Full O(n^3) associativity verification up to this order; random triples above.
_FULL_ASSOC_LIMIT = 512
_ASSOC_SAMPLES = 10_000


class GroupTable:
    """A finite group as an n x n index table with inverses precomputed.

    Immutable after construction; safe to share read-only between workers.
    """

    __slots__ = ("name", "order", "mult", "inv", "identity", "generator_names",
                 "element_names", "abelian")

    def __init__(
        self,
        name: str,
        mult: Sequence[Sequence[int]],
        inv: Sequence[int] | None = None,
        generator_names: dict[str, int] | None = None,
        element_names: Sequence[str] | None = None,
        validate: bool = True,
    ):
        self.name = name
        self.order = len(mult)
        if self.order == 0:
            raise ValueError("group must have at least the identity element")
        self.mult = [list(row) for row in mult]
        self.identity = 0
        if inv is None:
            inv = self._derive_inverses()
        self.inv = list(inv)
        self.generator_names = dict(generator_names or {})
        if element_names is None:
            element_names = [str(i) for i in range(self.order)]
        self.element_names = list(element_names)
        self.abelian = self._compute_abelian()
        if validate:
            self._validate()

    def _derive_inverses(self) -> list[int]:
        inv = [-1] * self.order
        for x in range(self.order):
            row = self.mult[x]
            for y in range(self.order):
                if row[y] == 0:
                    inv[x] = y
                    break
            if inv[x] < 0:
                raise ValueError(f"element {x} has no inverse")
        return inv

    def _compute_abelian(self) -> bool:
        mult = self.mult
        for x in range(self.order):
            row = mult[x]
            for y in range(x + 1, self.order):
                if row[y] != mult[y][x]:
                    return False
        return True

    def _validate(self) -> None:
        n = self.order
        mult = self.mult
        if any(len(row) != n for row in mult):
            raise ValueError("multiplication table is not square")
        full = list(range(n))
        if mult[0] != full:
            raise ValueError("row 0 is not the identity row")
        for x in range(n):
            if mult[x][0] != x:
                raise ValueError("column 0 is not the identity column")
            if sorted(mult[x]) != full:
                raise ValueError(f"row {x} is not a permutation of 0..n-1")
        for y in range(n):
            col = sorted(mult[x][y] for x in range(n))
            if col != full:
                raise ValueError(f"column {y} is not a permutation of 0..n-1")
        if len(self.inv) != n:
            raise ValueError("inverse table has wrong length")
        for x in range(n):
            y = self.inv[x]
            if mult[x][y] != 0 or mult[y][x] != 0:
                raise ValueError(f"inverse table wrong at element {x}")
        self._check_associativity()

    def _check_associativity(self) -> None:
        n = self.order
        mult = self.mult
        if n <= _FULL_ASSOC_LIMIT:
            for x in range(n):
                row_x = mult[x]
                for y in range(n):
                    row_y = mult[y]
                    if mult[row_x[y]] != [row_x[w] for w in row_y]:
                        raise ValueError(f"not associative at x={x}, y={y}")
        else:
            rng = random.Random(0xA55)
            for _ in range(_ASSOC_SAMPLES):
                x = rng.randrange(n)
                y = rng.randrange(n)
                z = rng.randrange(n)
                if mult[mult[x][y]][z] != mult[x][mult[y][z]]:
                    raise ValueError(f"not associative at ({x},{y},{z})")

    def mul(self, x: int, y: int) -> int:
        return self.mult[x][y]

    def inverse(self, x: int) -> int:
        return self.inv[x]

    def elements(self) -> range:
        return range(self.order)

    def element_name(self, x: int) -> str:
        return self.element_names[x]

    def power(self, x: int, e: int) -> int:
        if e < 0:
            x = self.inv[x]
            e = -e
        acc = 0
        for _ in range(e):
            acc = self.mult[acc][x]
        return acc

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"


# ---------------------------------------------------------------------------
# Words over generator names
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class ElementWord:
    """A product of generator powers, e.g. ``b*a^3`` or ``a^-4``."""

    factors: tuple[tuple[str, int], ...]

    @staticmethod
    def parse(text: str) -> "ElementWord":
        compact = text.replace(" ", "").replace("\t", "")
        if not compact:
            raise ValueError("empty word")
        factors: list[tuple[str, int]] = []
        for token in compact.split("*"):
            if token == "e":
                continue
            m = _TOKEN_RE.match(token)
            if m is None:
                raise ValueError(f"cannot parse word token {token!r}")
            name = m.group(1)
            exp = int(m.group(2)) if m.group(2) is not None else 1
            factors.append((name, exp))
        return ElementWord(tuple(factors))

    def renamed(self, mapping: dict[str, str]) -> "ElementWord":
        return ElementWord(tuple((mapping.get(n, n), e) for n, e in self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "e"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self.factors)


def resolve_word(group: GroupTable, word: "ElementWord | str") -> int:
    """Resolve a word to an element index, multiplying left to right."""
    if isinstance(word, str):
        word = ElementWord.parse(word)
    acc = group.identity
    for name, exp in word.factors:
        if name not in group.generator_names:
            raise ValueError(f"unbound generator name {name!r} in group {group.name}")
        acc = group.mult[acc][group.power(group.generator_names[name], exp)]
    return acc


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def build_cyclic(n: int, name: str | None = None) -> GroupTable:
    """The cyclic group of order n with generator ``a``."""
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    mult = [list(range(i, n)) + list(range(0, i)) for i in range(n)]
    inv = [(n - i) % n for i in range(n)]
    names = ["e"] + ["a" if i == 1 else f"a^{i}" for i in range(1, n)]
    return GroupTable(
        name or f"Z{n}",
        mult,
        inv,
        generator_names={"a": 1 % n},
        element_names=names,
    )


def build_dihedral(m: int) -> GroupTable:
    """The dihedral group of order 2m: ``a`` rotation of order m, ``b`` a reflection.

    Indices 0..m-1 are the rotations a^i, indices m..2m-1 the reflections b*a^i.
    The defining relation is (b*a)^2 = e, equivalently a^i * b = b * a^-i.
    """
    if m < 2:
        raise ValueError("dihedral rotation order must be >= 2")
    n = 2 * m
    mult = [[0] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            mult[i][j] = (i + j) % m                      # a^i a^j
            mult[i][m + j] = m + (j - i) % m              # a^i (b a^j) = b a^(j-i)
            mult[m + i][j] = m + (i + j) % m              # (b a^i) a^j
            mult[m + i][m + j] = (j - i) % m              # (b a^i)(b a^j) = a^(j-i)
    inv = [(m - i) % m for i in range(m)] + [m + i for i in range(m)]
    names = ["e"] + ["a" if i == 1 else f"a^{i}" for i in range(1, m)]
    names += ["b"] + ["b*a" if i == 1 else f"b*a^{i}" for i in range(1, m)]
    return GroupTable(f"D{n}", mult, inv,
                      generator_names={"a": 1, "b": m}, element_names=names)


def build_direct_product(g: GroupTable, h: GroupTable,
                         name: str | None = None) -> GroupTable:
    """Componentwise product; element (x, y) gets index x*|h| + y."""
    order = g.order * h.order
    if order > ORDER_CAP:
        raise ValueError(f"group too large: product order {order} exceeds cap {ORDER_CAP}")
    hn = h.order
    mult = [[0] * order for _ in range(order)]
    for x1 in range(g.order):
        for y1 in range(hn):
            row = mult[x1 * hn + y1]
            grow = g.mult[x1]
            hrow = h.mult[y1]
            for x2 in range(g.order):
                base = grow[x2] * hn
                off = x2 * hn
                for y2 in range(hn):
                    row[off + y2] = base + hrow[y2]
    inv = [g.inv[x] * hn + h.inv[y] for x in range(g.order) for y in range(hn)]

    g_rename, h_rename = _disambiguate(g.generator_names, h.generator_names)
    gen_names: dict[str, int] = {}
    for old, idx in g.generator_names.items():
        gen_names[g_rename.get(old, old)] = idx * hn
    for old, idx in h.generator_names.items():
        gen_names[h_rename.get(old, old)] = idx

    names = []
    for x in range(g.order):
        gname = _renamed_word(g.element_names[x], g_rename)
        for y in range(hn):
            hname = _renamed_word(h.element_names[y], h_rename)
            if gname == "e":
                names.append(hname)
            elif hname == "e":
                names.append(gname)
            else:
                names.append(f"{gname}*{hname}")
    return GroupTable(name or f"{g.name}x{h.name}", mult, inv,
                      generator_names=gen_names, element_names=names)


def _disambiguate(left: dict[str, int], right: dict[str, int]):
    clashes = set(left) & set(right)
    return ({n: f"{n}1" for n in clashes}, {n: f"{n}2" for n in clashes})


def _renamed_word(text: str, mapping: dict[str, str]) -> str:
    if not mapping or text == "e":
        return text
    try:
        return str(ElementWord.parse(text).renamed(mapping))
    except ValueError:
        return text


def build_from_permutations(degree: int, generators: Sequence[Sequence[int]],
                            names: Sequence[str] | None = None,
                            name: str | None = None) -> GroupTable:
    """Close a set of permutations of {0..degree-1} under composition.

    The product x*y means "apply x first, then y".  Elements are indexed in
    breadth-first discovery order with the identity first.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    gens: list[tuple[int, ...]] = []
    for p in generators:
        t = tuple(p)
        if sorted(t) != list(range(degree)):
            raise ValueError(f"generator {p!r} is not a permutation of 0..{degree - 1}")
        gens.append(t)
    if names is not None and len(names) != len(gens):
        raise ValueError("names list must match the number of generators")

    ident = tuple(range(degree))
    elems: list[tuple[int, ...]] = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for gpm in gens:
                q = tuple(gpm[v] for v in p)
                if q not in index:
                    if len(elems) >= ORDER_CAP:
                        raise ValueError(f"group too large: closure exceeds cap {ORDER_CAP}")
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt

    n = len(elems)
    mult = [[0] * n for _ in range(n)]
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            mult[i][j] = index[tuple(q[v] for v in p)]
    inv = [0] * n
    for i, p in enumerate(elems):
        ip = [0] * degree
        for src, dst in enumerate(p):
            ip[dst] = src
        inv[i] = index[tuple(ip)]

    gen_names = {}
    for pos, gpm in enumerate(gens):
        label = names[pos] if names is not None else f"g{pos}"
        gen_names[label] = index[gpm]
    element_names = [_cycle_notation(p) for p in elems]
    return GroupTable(name or f"Perm{degree}:{n}", mult, inv,
                      generator_names=gen_names, element_names=element_names)


def _cycle_notation(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        v = perm[start]
        while v != start:
            cyc.append(v)
            seen[v] = True
            v = perm[v]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "e"


def rename_generators(group: GroupTable, new_names: Sequence[str]) -> GroupTable:
    """Positionally rename generators, rewriting word-style element names."""
    old = list(group.generator_names)
    if len(new_names) != len(old):
        raise ValueError(f"expected {len(old)} generator names, got {len(new_names)}")
    mapping = dict(zip(old, new_names))
    gen_names = {mapping[n]: i for n, i in group.generator_names.items()}
    element_names = [_renamed_word(t, mapping) for t in group.element_names]
    return GroupTable(group.name, group.mult, group.inv,
                      generator_names=gen_names, element_names=element_names,
                      validate=False)


def group_from_spec(spec: dict) -> GroupTable:
    """Build a group from its JSON description.

    Schema: {"kind": "cyclic"|"dihedral"|"product"|"permutation", ...} with
    "n" for cyclic/dihedral, "factors" for product, "degree"/"generators"
    (0-based one-line image arrays) for permutation.  An optional "names"
    list renames generators positionally.
    """
    if not isinstance(spec, dict):
        raise ValueError("group spec must be a JSON object")
    kind = spec.get("kind")
    if kind == "cyclic":
        group = build_cyclic(_int_field(spec, "n"))
    elif kind == "dihedral":
        group = build_dihedral(_int_field(spec, "n"))
    elif kind == "product":
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise ValueError("product spec needs a non-empty 'factors' list")
        parts = [group_from_spec(f) for f in factors]
        group = parts[0]
        for rhs in parts[1:]:
            group = build_direct_product(group, rhs)
    elif kind == "permutation":
        gens = spec.get("generators")
        if not isinstance(gens, list):
            raise ValueError("permutation spec needs a 'generators' list")
        group = build_from_permutations(
            _int_field(spec, "degree"), gens, names=spec.get("names"))
        if spec.get("names"):
            return group
    else:
        raise ValueError(f"unknown group kind {kind!r}")
    if "names" in spec:
        group = rename_generators(group, spec["names"])
    return group


def _int_field(spec: dict, key: str) -> int:
    value = spec.get(key)
    if not isinstance(value, int):
        raise ValueError(f"group spec field {key!r} must be an integer")
    return value


# ---------------------------------------------------------------------------
# Subgroups and cosets
# ---------------------------------------------------------------------------

def is_subgroup(group: GroupTable, elems: Iterable[int]) -> bool:
    """True iff elems contains the identity and is closed under product and inverse."""
    t = set(elems)
    if not t or group.identity not in t:
        return False
    for x in t:
        if group.inv[x] not in t:
            return False
        row = group.mult[x]
        for y in t:
            if row[y] not in t:
                return False
    return True


def subgroup_generated(group: GroupTable, elems: Iterable[int]) -> set[int]:
    """The subgroup generated by elems (the trivial subgroup for an empty seed)."""
    gens = {group.identity}
    for x in elems:
        gens.add(x)
        gens.add(group.inv[x])
    closure = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = group.mult[x]
            for g in gens:
                z = row[g]
                if z not in closure:
                    closure.add(z)
                    nxt.append(z)
        frontier = nxt
    return closure


def cosets(group: GroupTable, subgroup: Iterable[int]) -> list[list[int]]:
    """Right cosets Hg as a partition, ordered by minimal element index."""
    h = sorted(set(subgroup))
    if not is_subgroup(group, h):
        raise ValueError("the given set is not a subgroup")
    seen = [False] * group.order
    blocks = []
    for g in range(group.order):
        if seen[g]:
            continue
        block = sorted(group.mult[x][g] for x in h)
        for z in block:
            seen[z] = True
        blocks.append(block)
    return blocks
