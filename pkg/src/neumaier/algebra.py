"""Exact integer group-ring arithmetic and the clique/difference-set identities.

Every check in this module is an exact template match over the integers; a
"pass" means every coefficient fits the template simultaneously.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import GroupTable


class AlgebraElement:
    """An integer-coefficient element of the group ring, indexed by element."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupTable, coeffs: Sequence[int]):
        if len(coeffs) != group.order:
            raise ValueError("coefficient vector length must equal the group order")
        self.group = group
        self.coeffs = tuple(int(x) for x in coeffs)

    @staticmethod
    def zero(group: GroupTable) -> "AlgebraElement":
        return AlgebraElement(group, [0] * group.order)

    def _require_same_group(self, other: "AlgebraElement") -> None:
        if self.group is not other.group:
            raise ValueError("group mismatch between algebra elements")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same_group(other)
        return AlgebraElement(self.group,
                              [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same_group(other)
        return AlgebraElement(self.group,
                              [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.group, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        return AlgebraElement(self.group, [other * a for a in self.coeffs])

    __rmul__ = __mul__

    def involute(self) -> "AlgebraElement":
        out = [0] * self.group.order
        inv = self.group.inv
        for x, cx in enumerate(self.coeffs):
            out[inv[x]] = cx
        return AlgebraElement(self.group, out)

    def support(self) -> list[int]:
        return [x for x, cx in enumerate(self.coeffs) if cx != 0]

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraElement)
                and self.group is other.group and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.group), self.coeffs))

    def __repr__(self) -> str:
        terms = [f"{c}*{self.group.element_names[x]}"
                 for x, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) if terms else "0"


def subset_sum(group: GroupTable, elems: Iterable[int]) -> AlgebraElement:
    """The 0/1 indicator element of a subset of the group."""
    coeffs = [0] * group.order
    for x in elems:
        coeffs[x] = 1
    return AlgebraElement(group, coeffs)


def convolve(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    u._require_same_group(v)
    return AlgebraElement(u.group, _convolve_coeffs(u.group, u.coeffs, v.coeffs))


def _convolve_coeffs(group: GroupTable, u: Sequence[int], v: Sequence[int]) -> list[int]:
    out = [0] * group.order
    mult = group.mult
    vs = [(j, vj) for j, vj in enumerate(v) if vj]
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = mult[i]
        for j, vj in vs:
            out[row[j]] += ui * vj
    return out


def involute(u: AlgebraElement) -> AlgebraElement:
    return u.involute()


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------

def _require_connection_set(group: GroupTable, s: frozenset[int]) -> None:
    if group.identity in s:
        raise ValueError("connection set contains the identity element")
    for x in s:
        if group.inv[x] not in s:
            raise ValueError(
                f"connection set is not inverse-closed: {group.element_names[x]}")


def check_regular_clique_identity(group: GroupTable, s: Iterable[int],
                                  c: Iterable[int]) -> int | None:
    """Fit S-bar * C-bar = a * (G\\C)-bar + (|C|-1) * C-bar; return a if exact.

    A unique nexus a >= 1 is returned iff every coefficient matches; this is
    the group-ring face of "C is a regular clique with nexus a".
    """
    s = frozenset(s)
    c = frozenset(c)
    _require_connection_set(group, s)
    if group.identity not in c:
        raise ValueError("clique must contain the identity element")
    prod = _convolve_coeffs(group, subset_sum(group, s).coeffs,
                            subset_sum(group, c).coeffs)
    inside = len(c) - 1
    a = None
    for z in range(group.order):
        if z in c:
            if prod[z] != inside:
                return None
        elif a is None:
            a = prod[z]
        elif prod[z] != a:
            return None
    if a is None or a < 1:
        return None
    return a


def check_pds_identity(group: GroupTable, s: Iterable[int]) -> tuple[int, int] | None:
    """Fit S-bar^2 = mu*G-bar + (lambda-mu)*S-bar + (|S|-mu)*e; return (lambda, mu).

    An exact fit is equivalent to Cay(G, S) being strongly regular.  Returns
    None when no pair of constants matches (or when S u {e} = G, where mu is
    not determined).
    """
    s = frozenset(s)
    _require_connection_set(group, s)
    ind = subset_sum(group, s).coeffs
    sq = _convolve_coeffs(group, ind, ind)
    if sq[group.identity] != len(s):
        return None
    lam = mu = None
    for z in range(group.order):
        if z == group.identity:
            continue
        if z in s:
            if lam is None:
                lam = sq[z]
            elif sq[z] != lam:
                return None
        else:
            if mu is None:
                mu = sq[z]
            elif sq[z] != mu:
                return None
    if lam is None or mu is None:
        return None
    return lam, mu


def check_second_identity(group: GroupTable, s: Iterable[int], c: Iterable[int],
                          lam: int, mu: int, a: int, reverse: bool = False) -> bool:
    """Check S-bar*(S-bar - C-bar) against its four-block expansion.

    The product must equal (mu-a) on G\\(S u {e}), (lambda-a) on S\\C,
    (lambda-|C|+1) on C\\{e} and (|S|-|C|+1) at e.  Note S-bar - C-bar is the
    indicator of S\\C minus the identity, C being a clique through e.
    With ``reverse`` the factors are multiplied in the opposite order, which
    can differ over a non-abelian group.
    """
    s = frozenset(s)
    c = frozenset(c)
    _require_connection_set(group, s)
    if group.identity not in c:
        raise ValueError("clique must contain the identity element")
    sbar = subset_sum(group, s)
    diff = sbar - subset_sum(group, c)
    lhs = (diff * sbar if reverse else sbar * diff).coeffs
    k, csize = len(s), len(c)
    e = group.identity
    for z in range(group.order):
        if z == e:
            want = k - csize + 1
        elif z in c:
            want = lam - csize + 1
        elif z in s:
            want = lam - a
        else:
            want = mu - a
        if lhs[z] != want:
            return False
    return True


def check_complement_identities(group: GroupTable, s: Iterable[int],
                                c: Iterable[int], lam: int, mu: int,
                                a: int) -> bool:
    """Check both complement products exactly.

    With T = G\\(S u {e}):
      T-bar * C-bar        = (|C|-a) * (G\\C)-bar
      T-bar * (S\\C)-bar   = (|S|-mu-|C|+a+1) * T-bar
                             + (|S|-|C|-lambda+a-1) * (S\\C)-bar
                             + (|S|-lambda-1) * (C\\{e})-bar
    """
    s = frozenset(s)
    c = frozenset(c)
    _require_connection_set(group, s)
    if group.identity not in c:
        raise ValueError("clique must contain the identity element")
    e = group.identity
    k, csize = len(s), len(c)
    t = frozenset(range(group.order)) - s - {e}
    tbar = subset_sum(group, t).coeffs

    first = _convolve_coeffs(group, tbar, subset_sum(group, c).coeffs)
    for z in range(group.order):
        want = 0 if z in c else csize - a
        if first[z] != want:
            return False

    second = _convolve_coeffs(group, tbar, subset_sum(group, s - c).coeffs)
    for z in range(group.order):
        if z == e:
            want = 0
        elif z in c:
            want = k - lam - 1
        elif z in s:
            want = k - csize - lam + a - 1
        else:
            want = k - mu - csize + a + 1
        if second[z] != want:
            return False
    return True


# ---------------------------------------------------------------------------
# Schur-ring closure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionBasis:
    """An ordered partition of G with block 0 = {identity}.

    Inversion must permute the blocks (x -> x^-1 maps each block onto a
    block); that is the closure property the simple basis of a Schur ring
    carries.
    """

    group: GroupTable
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(group: GroupTable, blocks: Iterable[Iterable[int]]) -> "PartitionBasis":
        normalized = tuple(tuple(sorted(set(b))) for b in blocks)
        if not normalized or any(not b for b in normalized):
            raise ValueError("partition blocks must be non-empty")
        if normalized[0] != (group.identity,):
            raise ValueError("block 0 must be exactly {identity}")
        flat = [x for b in normalized for x in b]
        if sorted(flat) != list(range(group.order)):
            raise ValueError("blocks must partition the group")
        block_sets = [frozenset(b) for b in normalized]
        for b in block_sets:
            image = frozenset(group.inv[x] for x in b)
            if image not in block_sets:
                raise ValueError("inversion does not permute the partition blocks")
        return PartitionBasis(group, normalized)


@dataclass
class SchurClosure:
    """Outcome of a closure check: the structure tensor, or the first failure."""

    closed: bool
    tensor: list[list[list[int]]] | None = None
    witness: tuple[int, int, int] | None = None


def check_schur_closure(group: GroupTable, basis: PartitionBasis) -> SchurClosure:
    """Verify T_i-bar * T_j-bar is an integer combination of the block sums.

    Returns the structure constants p[i][j][k] when every product is constant
    on every block, else the first (i, j, element) where constancy fails.
    """
    if basis.group is not group:
        raise ValueError("basis belongs to a different group")
    d = len(basis.blocks)
    block_of = [0] * group.order
    for bi, block in enumerate(basis.blocks):
        for x in block:
            block_of[x] = bi
    sums = [subset_sum(group, block).coeffs for block in basis.blocks]
    tensor = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            prod = _convolve_coeffs(group, sums[i], sums[j])
            seen = [None] * d
            for z in range(group.order):
                bz = block_of[z]
                if seen[bz] is None:
                    seen[bz] = prod[z]
                elif prod[z] != seen[bz]:
                    return SchurClosure(False, witness=(i, j, z))
            tensor[i][j] = [v if v is not None else 0 for v in seen]
    return SchurClosure(True, tensor=tensor)
