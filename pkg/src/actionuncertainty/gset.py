"""Finite left G-sets and the subset combinatorics of transitive actions.

Subsets of G and of X are passed around as sorted tuples of indices.  The
base point ``x0`` is always explicit.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ActionAxiomViolation, InputError, NotTransitive, Violation
from .groups import Group, Subgroup, is_subgroup, left_cosets

Subset = tuple[int, ...]


def _sorted(it: Iterable[int]) -> Subset:
    return tuple(sorted(set(it)))


@dataclass(frozen=True, eq=False)
class GSet:
    group: Group
    size: int
    action: tuple[tuple[int, ...], ...]  # action[alpha][x] = alpha x
    transitive: bool
    kind: str = "table"

    @classmethod
    def from_table(cls, g: Group, table: Sequence[Sequence[int]], kind: str = "table") -> "GSet":
        if len(table) != g.order:
            raise ActionAxiomViolation(f"action table needs {g.order} rows")
        rows = tuple(tuple(int(v) for v in row) for row in table)
        m = len(rows[0]) if rows else 0
        if m == 0:
            raise ActionAxiomViolation("empty G-set")
        pts = list(range(m))
        for a, row in enumerate(rows):
            if len(row) != m or sorted(row) != pts:
                raise ActionAxiomViolation(f"action of element {a} is not a bijection")
        if rows[g.identity] != tuple(pts):
            raise ActionAxiomViolation("identity does not act trivially")
        for a in g.elements:
            for b in g.elements:
                ab = rows[g.mul(a, b)]
                ra, rb = rows[a], rows[b]
                if any(ab[x] != ra[rb[x]] for x in pts):
                    raise ActionAxiomViolation(f"(ab)x != a(bx) for a={a}, b={b}")
        orbit = {rows[a][0] for a in g.elements}
        return cls(g, m, rows, len(orbit) == m, kind)

    @property
    def points(self) -> range:
        return range(self.size)

    def act(self, a: int, x: int) -> int:
        return self.action[a][x]

    def act_set(self, a: int, pts: Iterable[int]) -> Subset:
        row = self.action[a]
        return _sorted(row[x] for x in pts)

    def image(self, elems: Iterable[int], pts: Iterable[int]) -> Subset:
        """A Y = {alpha y : alpha in A, y in Y}."""
        pts = list(pts)
        return _sorted(self.action[a][y] for a in elems for y in pts)

    def orbit(self, x: int) -> Subset:
        return _sorted(self.action[a][x] for a in self.group.elements)

    def require_transitive(self):
        if not self.transitive:
            raise NotTransitive("the G-set is not transitive")

    def __repr__(self):
        return f"GSet({self.group.name}, m={self.size}, kind={self.kind})"


@functools.lru_cache(maxsize=None)
def regular_gset(g: Group) -> GSet:
    """The left regular G-set (one shared instance per group)."""
    return GSet(g, g.order, g.cayley, True, "regular")


def natural_gset(g: Group) -> GSet:
    if g.perms is None:
        raise InputError(f"group {g.name} was not given by permutations")
    return GSet.from_table(g, g.perms, "natural")


def build_action(g: Group, spec) -> GSet:
    """``"regular"``, ``"natural"`` or an explicit n x m table."""
    if spec == "regular":
        return regular_gset(g)
    if spec == "natural":
        return natural_gset(g)
    if isinstance(spec, str):
        raise InputError(f"unknown action kind {spec!r}")
    return GSet.from_table(g, spec)


def coset_action(g: Group, h: Subgroup) -> GSet:
    """G acting on G/H by left multiplication, points in left_cosets order."""
    cosets = left_cosets(g, h)
    where = {}
    for i, c in enumerate(cosets):
        for a in c:
            where[a] = i
    table = [[where[g.mul(a, c[0])] for c in cosets] for a in g.elements]
    return GSet.from_table(g, table, f"G/H{list(h.elements)}")


# ---------------------------------------------------------------------------
# transitive-action combinatorics

def point_stabilizer(xs: GSet, x0: int) -> Subgroup:
    xs.require_transitive()
    g = xs.group
    h = Subgroup(g, tuple(a for a in g.elements if xs.action[a][x0] == x0))
    if h.order * xs.size != g.order:
        raise Violation("|G| != |G_x0| * |X|")
    return h


def zeta_image(xs: GSet, x0: int, elems: Iterable[int]) -> Subset:
    """zeta_x0(A) = A x0."""
    return _sorted(xs.action[a][x0] for a in elems)


def zeta_preimage(xs: GSet, x0: int, y: Iterable[int]) -> Subset:
    """{alpha : alpha x0 in Y}."""
    xs.require_transitive()
    y = set(y)
    return tuple(a for a in xs.group.elements if xs.action[a][x0] in y)


@dataclass(frozen=True)
class ClosureVerdict:
    preimage_of_image: bool  # zeta^-1(zeta(A)) == A
    coset_union: bool  # A G_x0 == A
    cardinality: bool  # |A| == k |A x0|

    @property
    def closed(self) -> bool:
        return self.preimage_of_image

    def __bool__(self):
        return self.closed


def is_x0_closed(xs: GSet, x0: int, a: Iterable[int]) -> ClosureVerdict:
    """Evaluate the three equivalent closure criteria; they must agree."""
    xs.require_transitive()
    g = xs.group
    a = _sorted(a)
    stab = point_stabilizer(xs, x0)
    c1 = zeta_preimage(xs, x0, zeta_image(xs, x0, a)) == a
    c2 = g.product_set(a, stab.elements) == a
    c3 = len(a) == stab.order * len(zeta_image(xs, x0, a))
    if not (c1 == c2 == c3):
        raise Violation(f"x0-closure criteria disagree for {a}: {c1}, {c2}, {c3}")
    return ClosureVerdict(c1, c2, c3)


def right_stabilizer(g: Group, s: Iterable[int]) -> Subgroup:
    """{alpha : S alpha = S}."""
    s = _sorted(s)
    if not s:
        raise InputError("right stabilizer of the empty set")
    sset = set(s)
    h = tuple(a for a in g.elements if all(g.mul(b, a) in sset for b in s))
    if not is_subgroup(g, h):
        raise Violation("right stabilizer is not a subgroup")
    return Subgroup(g, h)


def is_block(xs: GSet, b: Iterable[int], x0: int | None = None) -> bool:
    """alpha B meets B in all of B or nothing, for every alpha.

    When a base point in B is supplied (default: min B) the answer is
    cross-checked against "zeta_x0^-1(B) is a subgroup".
    """
    xs.require_transitive()
    b = _sorted(b)
    if not b:
        raise InputError("empty block candidate")
    bset = set(b)
    direct = True
    for a in xs.group.elements:
        inter = bset.intersection(xs.action[a][y] for y in b)
        if inter and len(inter) != len(b):
            direct = False
            break
    x0 = b[0] if x0 is None else x0
    if x0 in bset:
        via_subgroup = is_subgroup(xs.group, zeta_preimage(xs, x0, b))
        if via_subgroup != direct:
            raise Violation(f"block criteria disagree for {b}")
    return direct


def associated_block(xs: GSet, x0: int, s: Iterable[int]) -> Subset:
    """X_S = G_S x0 with G_S the right stabilizer of zeta^-1(S)."""
    xs.require_transitive()
    s = _sorted(s)
    if x0 not in s:
        raise InputError(f"base point {x0} is not in S")
    g = xs.group
    lifted = zeta_preimage(xs, x0, s)
    gs = right_stabilizer(g, lifted)
    block = zeta_image(xs, x0, gs.elements)
    k = g.order // xs.size
    if gs.order != k * len(block):
        raise Violation("|G_S| != k |X_S|")
    if x0 not in block or not is_block(xs, block, x0):
        raise Violation(f"X_S = {block} is not a block through x0")
    inter = set(xs.points)
    for a in lifted:
        inter &= set(xs.act_set(g.inv(a), s))
    if _sorted(inter) != block:
        raise Violation("X_S differs from the intersection of alpha^-1 S")
    return block


def block_decomposition(xs: GSet, x0: int, s: Iterable[int]) -> list[tuple[int, Subset]]:
    """Disjoint translates gamma X_S covering S; gamma minimal per translate."""
    s = _sorted(s)
    block = associated_block(xs, x0, s)
    g = xs.group
    translates: dict[Subset, int] = {}
    for a in g.elements:
        t = xs.act_set(a, block)
        if set(t) <= set(s) and t not in translates:
            translates[t] = a
    pieces = sorted(((gamma, t) for t, gamma in translates.items()), key=lambda p: p[1])
    covered = [x for _, t in pieces for x in t]
    if sorted(covered) != list(s) or len(pieces) * len(block) != len(s):
        raise Violation("translates of X_S do not partition S")
    return pieces


@dataclass(frozen=True)
class CoverReport:
    complement_image: Subset  # S'^-1 S  (S' = zeta^-1(X - S))
    block: Subset  # X_S


def complement_cover_check(xs: GSet, x0: int, s: Iterable[int]) -> CoverReport:
    """X is the disjoint union of S'^-1 S and X_S."""
    xs.require_transitive()
    s = _sorted(s)
    if not s or len(s) == xs.size:
        raise InputError("need a nonempty proper subset")
    if x0 not in s:
        raise InputError(f"base point {x0} is not in S")
    g = xs.group
    comp = [x for x in xs.points if x not in set(s)]
    lifted_comp = zeta_preimage(xs, x0, comp)
    left = xs.image(g.inverse_set(lifted_comp), s)
    block = associated_block(xs, x0, s)
    if set(left) & set(block) or set(left) | set(block) != set(xs.points):
        raise Violation(f"S'^-1 S = {left} and X_S = {block} do not partition X")
    return CoverReport(left, block)


def equivariant_isomorphism(a: GSet, b: GSet) -> tuple[int, ...] | None:
    """A G-equivariant bijection a -> b (as an image list), if one exists.

    Transitive sets only: try every image of point 0 and extend along the group.
    """
    if a.group is not b.group and a.group.cayley != b.group.cayley:
        raise InputError("G-sets over different groups")
    if a.size != b.size or not (a.transitive and b.transitive):
        return None
    g = a.group
    for y in b.points:
        phi: dict[int, int] = {}
        ok = True
        for el in g.elements:
            x, t = a.action[el][0], b.action[el][y]
            if phi.setdefault(x, t) != t:
                ok = False
                break
        if ok and len(set(phi.values())) == a.size:
            return tuple(phi[x] for x in a.points)
    return None


@dataclass(frozen=True)
class BlockLemmaReport:
    sizes: bool  # |lift(S)| = k|S| and |G_S| = k|X_S|
    partition: bool  # S is a disjoint union of translates of X_S
    intersection: bool  # X_S = intersection of alpha^-1 S over the lift
    complement_disjoint: bool  # alpha' outside the lift => alpha'^-1 S misses X_S

    def all(self) -> bool:
        return self.sizes and self.partition and self.intersection and self.complement_disjoint


def block_lemma_check(xs: GSet, x0: int, s: Iterable[int]) -> BlockLemmaReport:
    """Evaluate each part of the X_S lemma independently (no early raise)."""
    xs.require_transitive()
    s = _sorted(s)
    g = xs.group
    k = g.order // xs.size
    lifted = zeta_preimage(xs, x0, s)
    gs = right_stabilizer(g, lifted)
    block = zeta_image(xs, x0, gs.elements)
    sizes = len(lifted) == k * len(s) and gs.order == k * len(block)
    pieces = {xs.act_set(a, block) for a in g.elements}
    inside = [p for p in pieces if set(p) <= set(s)]
    partition = sorted(x for p in inside for x in p) == list(s)
    inter = set(xs.points)
    for a in lifted:
        inter &= set(xs.act_set(g.inv(a), s))
    intersection = _sorted(inter) == block
    lifted_set = set(lifted)
    complement_disjoint = all(
        not set(xs.act_set(g.inv(a), s)) & set(block) for a in g.elements if a not in lifted_set)
    return BlockLemmaReport(sizes, partition, intersection, complement_disjoint)


def translate_cover_criterion(xs: GSet, s: Iterable[int], a: Iterable[int]) -> bool:
    """A S != X  iff  some x has A^-1 x inside the complement of S; returns A S != X."""
    xs.require_transitive()
    s = _sorted(s)
    a = _sorted(a)
    if not s or len(s) == xs.size:
        raise InputError("need a nonempty proper subset")
    g = xs.group
    comp = set(xs.points) - set(s)
    left = len(xs.image(a, s)) != xs.size
    right = any(set(xs.image(g.inverse_set(a), [x])) <= comp for x in xs.points)
    if left != right:
        raise Violation(f"translate cover criterion disagrees for S={s}, A={a}")
    return left


@dataclass(frozen=True)
class ClosureLawReport:
    left_product: bool  # B A closed when A is
    union: bool
    intersection: bool
    image_of_intersection: bool  # (A n B) x0 = A x0 n B x0

    def all(self) -> bool:
        return self.left_product and self.union and self.intersection and self.image_of_intersection


def closure_law_check(xs: GSet, x0: int, a: Iterable[int], b: Iterable[int]) -> ClosureLawReport:
    """Closure laws for x0-closed A, B (B only needs to be closed for the set laws)."""
    g = xs.group
    a, b = _sorted(a), _sorted(b)
    if not is_x0_closed(xs, x0, a):
        raise InputError("A must be x0-closed")
    left = bool(is_x0_closed(xs, x0, g.product_set(b, a))) if b else True
    if not is_x0_closed(xs, x0, b):
        return ClosureLawReport(left, True, True, True)
    inter = _sorted(set(a) & set(b))
    union = bool(is_x0_closed(xs, x0, _sorted(set(a) | set(b))))
    closed_inter = bool(is_x0_closed(xs, x0, inter)) if inter else True
    img = zeta_image(xs, x0, inter) == _sorted(set(zeta_image(xs, x0, a)) & set(zeta_image(xs, x0, b)))
    return ClosureLawReport(left, union, closed_inter, img)
