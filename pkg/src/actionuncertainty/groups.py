"""Finite groups as Cayley tables on element indices 0..n-1."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import AxiomViolation, CapExceeded, InputError, NotClosed
from .errors import NotHomomorphism
from .fields import FieldContext, FieldValue, lcm, roots_of_unity

DEFAULT_SUBGROUP_CAP = 24
DEFAULT_CLOSURE_CAP = 5040


@dataclass(frozen=True, eq=False)
class Group:
    order: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = "G"
    # image lists when the group was built from permutation generators
    perms: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    @classmethod
    def from_cayley(cls, table: Sequence[Sequence[int]], name: str = "G",
                    perms=None) -> "Group":
        n = len(table)
        if n == 0:
            raise AxiomViolation("empty Cayley table")
        rows = tuple(tuple(int(v) for v in row) for row in table)
        full = set(range(n))
        for a, row in enumerate(rows):
            if len(row) != n or set(row) != full:
                raise AxiomViolation(f"row {a} is not a permutation of 0..{n - 1}")
        for b in range(n):
            if {rows[a][b] for a in range(n)} != full:
                raise AxiomViolation(f"column {b} is not a permutation of 0..{n - 1}")
        ident = [e for e in range(n) if rows[e] == tuple(range(n))
                 and all(rows[a][e] == a for a in range(n))]
        if not ident:
            raise AxiomViolation("no identity element")
        e = ident[0]
        inverse = []
        for a in range(n):
            inv = [b for b in range(n) if rows[a][b] == e]
            if len(inv) != 1 or rows[inv[0]][a] != e:
                raise AxiomViolation(f"element {a} has no two-sided inverse")
            inverse.append(inv[0])
        for a, b, c in itertools.product(range(n), repeat=3):
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise AxiomViolation(f"associativity fails at ({a}, {b}, {c})")
        return cls(n, rows, e, tuple(inverse), name,
                   tuple(tuple(p) for p in perms) if perms is not None else None)

    # -- basic structure ------------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.cayley[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        return lcm(*(self.element_order(a) for a in self.elements))

    def is_abelian(self) -> bool:
        c = self.cayley
        return all(c[a][b] == c[b][a] for a in self.elements for b in range(a))

    def product_set(self, a: Iterable[int], b: Iterable[int]) -> tuple[int, ...]:
        b = list(b)
        return tuple(sorted({self.cayley[x][y] for x in a for y in b}))

    def inverse_set(self, a: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted({self.inverse[x] for x in a}))

    def label(self, a: int) -> str:
        """Cycle notation (1-based) for permutation groups, else the index."""
        if self.perms is None:
            return str(a)
        return cycle_notation(self.perms[a])

    def element_from_perm(self, images: Sequence[int]) -> int:
        if self.perms is None:
            raise InputError(f"group {self.name} has no permutation representation")
        try:
            return self.perms.index(tuple(images))
        except ValueError:
            raise InputError(f"{images} is not an element of {self.name}") from None

    def element_from_cycles(self, text: str) -> int:
        """Look up ``"(12)(34)"``-style cycle notation (1-based points)."""
        if self.perms is None:
            raise InputError(f"group {self.name} has no permutation representation")
        degree = len(self.perms[0])
        images = list(range(degree))
        for cyc in text.replace(" ", "").strip("()").split(")("):
            pts = [int(c) - 1 for c in (cyc.split(",") if "," in cyc else cyc)] if cyc else []
            for i, x in enumerate(pts):
                images[x] = pts[(i + 1) % len(pts)]
        return self.element_from_perm(images)

    def __repr__(self):
        return f"Group({self.name!r}, order={self.order})"


def cycle_notation(images: Sequence[int]) -> str:
    seen, parts = set(), []
    for start in range(len(images)):
        if start in seen or images[start] == start:
            seen.add(start)
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = images[x]
        parts.append(cyc)
    if not parts:
        return "(1)"
    sep = "" if len(images) < 10 else ","
    return "".join("(" + sep.join(map(str, c)) + ")" for c in parts)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p q)(x) = p(q(x)): apply q first."""
    return tuple(p[x] for x in q)


def group_from_permutations(generators: Sequence[Sequence[int]], degree: int,
                            name: str = "G", cap: int = DEFAULT_CLOSURE_CAP) -> Group:
    """Close generators under composition, breadth-first from the identity."""
    gens = [tuple(int(v) for v in g) for g in generators]
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise AxiomViolation(f"generator {list(g)} is not a permutation of {degree} points")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        e = queue.popleft()
        for s in gens:
            x = compose(s, e)
            if x not in index:
                if len(elements) >= cap:
                    raise NotClosed(f"closure exceeds {cap} elements")
                index[x] = len(elements)
                elements.append(x)
                queue.append(x)
    table = [[index[compose(a, b)] for b in elements] for a in elements]
    return Group.from_cayley(table, name, perms=elements)


def load_group(spec: dict, cap: int = DEFAULT_CLOSURE_CAP) -> Group:
    """Build a validated group from ``{"cayley": ...}`` or permutation generators."""
    name = spec.get("name", "G")
    if "cayley" in spec:
        return Group.from_cayley(spec["cayley"], name, perms=spec.get("perms"))
    if "permutation_generators" in spec:
        gens = spec["permutation_generators"]
        degree = int(spec.get("degree", len(gens[0]) if gens else 1))
        return group_from_permutations(gens, degree, name, cap)
    raise InputError("group spec needs 'cayley' or 'permutation_generators'")


def cyclic_group(n: int, name: str | None = None) -> Group:
    return Group.from_cayley([[(a + b) % n for b in range(n)] for a in range(n)], name or f"Z{n}")


def direct_product(g: Group, h: Group, name: str | None = None) -> Group:
    """Elements (a, b) indexed as a * |H| + b."""
    m = h.order
    table = [[g.mul(a // m, c // m) * m + h.mul(a % m, c % m)
              for c in range(g.order * m)] for a in range(g.order * m)]
    return Group.from_cayley(table, name or f"{g.name}x{h.name}")


# ---------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        return a in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.elements == self.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Subgroup({list(self.elements)})"

    def is_abelian(self) -> bool:
        c = self.parent.cayley
        return all(c[a][b] == c[b][a] for a in self.elements for b in self.elements)


def _check_indices(g: Group, subset: Iterable[int]) -> list[int]:
    out = [int(a) for a in subset]
    if any(a < 0 or a >= g.order for a in out):
        raise InputError(f"element index out of range for {g.name}")
    return out


def is_subgroup(g: Group, subset: Iterable[int]) -> bool:
    s = set(_check_indices(g, subset))
    if not s:
        raise InputError("empty subset")
    if g.identity not in s:
        return False
    if any(g.inverse[a] not in s for a in s):
        return False
    return all(g.cayley[a][b] in s for a in s for b in s)


def generated_subgroup(g: Group, gens: Iterable[int]) -> Subgroup:
    elems = {g.identity}
    frontier = [g.identity]
    gens = _check_indices(g, gens)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.cayley[x][s]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(g, tuple(elems))


def whole(g: Group) -> Subgroup:
    return Subgroup(g, tuple(g.elements))


def trivial(g: Group) -> Subgroup:
    return Subgroup(g, (g.identity,))


def all_subgroups(g: Group, cap: int = DEFAULT_SUBGROUP_CAP) -> list[Subgroup]:
    """Every subgroup, sorted by (size, element tuple).

    Seeds are the subgroups generated by at most two elements; joins of
    pairs are then added until nothing new appears.
    """
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds subgroup cap {cap}")
    found: dict[tuple[int, ...], Subgroup] = {}
    for a in g.elements:
        for b in range(a, g.order):
            h = generated_subgroup(g, (a, b))
            found.setdefault(h.elements, h)
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for h1, h2 in itertools.combinations(current, 2):
            j = generated_subgroup(g, h1.elements + h2.elements)
            if j.elements not in found:
                found[j.elements] = j
                changed = True
    return sorted(found.values(), key=lambda h: (h.order, h.elements))


def left_cosets(g: Group, h: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets gamma*H, each sorted, ordered by minimal element."""
    seen: set[int] = set()
    out = []
    for gamma in g.elements:
        if gamma in seen:
            continue
        coset = tuple(sorted(g.cayley[gamma][b] for b in h.elements))
        seen.update(coset)
        out.append(coset)
    return sorted(out)


def is_normal(g: Group, h: Subgroup) -> bool:
    return all(g.mul(g.mul(a, b), g.inv(a)) in h for a in g.elements for b in h.elements)


def conjugate_subgroup(g: Group, h: Subgroup, a: int) -> Subgroup:
    return Subgroup(g, tuple(g.mul(g.mul(a, b), g.inv(a)) for b in h.elements))


# ---------------------------------------------------------------------------
# characters (homomorphisms into F^x)

Domain = Union[Group, Subgroup]


def _domain_elements(h: Domain) -> tuple[int, ...]:
    return tuple(h.elements)


def _domain_group(h: Domain) -> Group:
    return h.parent if isinstance(h, Subgroup) else h


@dataclass(frozen=True, eq=False)
class Character:
    """A homomorphism from a subgroup into F^x, validated on construction."""

    group: Group
    domain: tuple[int, ...]
    values: dict  # element index -> FieldValue

    def __post_init__(self):
        g = self.group
        if set(self.values) != set(self.domain):
            raise InputError("character values must cover exactly its domain")
        if self.values[g.identity] != 1:
            raise NotHomomorphism("eta(1) != 1")
        for a in self.domain:
            if not self.values[a]:
                raise NotHomomorphism(f"eta({a}) = 0")
            for b in self.domain:
                if self.values[g.mul(a, b)] != self.values[a] * self.values[b]:
                    raise NotHomomorphism(f"eta({a}*{b}) != eta({a})*eta({b})")

    @property
    def field(self) -> FieldContext:
        return self.values[self.group.identity].ctx

    def __call__(self, a: int) -> FieldValue:
        return self.values[a]

    def value_tuple(self) -> tuple:
        return tuple(self.values[a] for a in self.domain)

    def sort_key(self):
        return tuple(v.sort_key() for v in self.value_tuple())

    def inverse(self) -> "Character":
        return Character(self.group, self.domain, {a: v.inverse() for a, v in self.values.items()})

    def __mul__(self, other: "Character") -> "Character":
        if other.domain != self.domain:
            raise InputError("characters on different domains")
        return Character(self.group, self.domain, {a: self.values[a] * other.values[a] for a in self.domain})

    def restrict(self, h: Domain) -> "Character":
        dom = _domain_elements(h)
        return Character(self.group, dom, {a: self.values[a] for a in dom})

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())

    def __eq__(self, other):
        return isinstance(other, Character) and self.domain == other.domain and \
            self.value_tuple() == other.value_tuple()

    def __hash__(self):
        return hash(self.value_tuple())

    def __repr__(self):
        return f"Character({[v.to_json() for v in self.value_tuple()]})"


def generating_sequence(h: Domain) -> list[int]:
    """Greedy generators: scan elements, keep those outside the span so far."""
    g = _domain_group(h)
    gens: list[int] = []
    span = {g.identity}
    for a in _domain_elements(h):
        if a not in span:
            gens.append(a)
            span = set(generated_subgroup(g, gens).elements)
    return gens


def homs_to_units(h: Domain, fc: FieldContext) -> list[Character]:
    """All of Hom(H, F^x), sorted by value tuple.

    Each generator gets every root of unity whose order divides its own
    order; assignments are extended along words and kept only if the
    resulting map is multiplicative on the whole table.
    """
    g = _domain_group(h)
    dom = _domain_elements(h)
    gens = generating_sequence(h)
    choices = [roots_of_unity(fc, g.element_order(s)) for s in gens]
    one = fc(1)
    out = []
    for assignment in itertools.product(*choices):
        values = {g.identity: one}
        frontier = [g.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for s, v in zip(gens, assignment):
                    y = g.mul(x, s)
                    w = values[x] * v
                    if y in values:
                        if values[y] != w:
                            ok = False
                            break
                    else:
                        values[y] = w
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok:
            continue
        try:
            out.append(Character(g, dom, values))
        except NotHomomorphism:
            continue
    return sorted(out, key=Character.sort_key)


def trivial_character(h: Domain, fc: FieldContext) -> Character:
    one = fc(1)
    return Character(_domain_group(h), _domain_elements(h), {a: one for a in _domain_elements(h)})
