"""Functions on a G-set viewed as elements of the permutation module FX."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import FieldMismatch, InputError, MismatchedContext, Violation, ZeroFunction
from .fields import FieldContext, FieldValue
from .groups import Character, Group, Subgroup, is_subgroup
from .gset import GSet, Subset
from .linalg import rank_payloads


@dataclass(frozen=True, eq=False)
class FunctionOnX:
    gset: GSet
    field: FieldContext
    values: tuple[FieldValue, ...]

    def __post_init__(self):
        if len(self.values) != self.gset.size:
            raise InputError(f"expected {self.gset.size} values, got {len(self.values)}")
        for v in self.values:
            if not isinstance(v, FieldValue) or v.ctx != self.field:
                raise FieldMismatch(f"value {v!r} is not in {self.field.spec}")

    @classmethod
    def from_values(cls, gset: GSet, field: FieldContext, raw: Iterable) -> "FunctionOnX":
        return cls(gset, field, tuple(field(v) for v in raw))

    @classmethod
    def from_payloads(cls, gset: GSet, field: FieldContext, payloads: Iterable) -> "FunctionOnX":
        return cls(gset, field, tuple(FieldValue(field, p) for p in payloads))

    @classmethod
    def delta(cls, gset: GSet, field: FieldContext, x: int) -> "FunctionOnX":
        return cls.from_values(gset, field, [1 if y == x else 0 for y in gset.points])

    @classmethod
    def constant(cls, gset: GSet, field: FieldContext, c=1) -> "FunctionOnX":
        return cls.from_values(gset, field, [c] * gset.size)

    @property
    def group(self) -> Group:
        return self.gset.group

    @property
    def payloads(self) -> tuple:
        return tuple(v.payload for v in self.values)

    def __getitem__(self, x: int) -> FieldValue:
        return self.values[x]

    def is_zero(self) -> bool:
        return not any(self.values)

    def scale(self, c) -> "FunctionOnX":
        c = self.field(c)
        return FunctionOnX(self.gset, self.field, tuple(c * v for v in self.values))

    def _same_context(self, other: "FunctionOnX"):
        if other.gset is not self.gset or other.field != self.field:
            raise MismatchedContext("functions live on different G-sets or fields")

    def __add__(self, other: "FunctionOnX") -> "FunctionOnX":
        self._same_context(other)
        return FunctionOnX(self.gset, self.field, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "FunctionOnX") -> "FunctionOnX":
        self._same_context(other)
        return FunctionOnX(self.gset, self.field, tuple(a - b for a, b in zip(self.values, other.values)))

    def __eq__(self, other):
        return isinstance(other, FunctionOnX) and self.gset is other.gset and \
            self.field == other.field and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def to_json(self) -> list[str]:
        return [v.to_json() for v in self.values]

    def __repr__(self):
        return f"FunctionOnX({self.to_json()})"


def support(f: FunctionOnX) -> Subset:
    return tuple(x for x, v in enumerate(f.values) if v)


def _translate_payloads(xs: GSet, a: int, vals: Sequence) -> list:
    out = [None] * len(vals)
    row = xs.action[a]
    for y, v in enumerate(vals):
        out[row[y]] = v
    return out


def translate(a: int, f: FunctionOnX) -> FunctionOnX:
    """(alpha f)(x) = f(alpha^-1 x)."""
    return FunctionOnX(f.gset, f.field, tuple(_translate_payloads(f.gset, a, f.values)))


def _require_regular(f: FunctionOnX):
    xs = f.gset
    if xs.size != xs.group.order or xs.action != xs.group.cayley:
        raise MismatchedContext("expected a function on the regular G-set")


def convolve_group(g: FunctionOnX, h: FunctionOnX) -> FunctionOnX:
    """(g*h)(alpha) = sum_beta g(beta) h(beta^-1 alpha)."""
    _require_regular(g)
    _require_regular(h)
    g._same_context(h)
    grp = g.group
    fc = g.field
    out = [fc.zero()] * grp.order
    gv, hv = g.payloads, h.payloads
    for b in grp.elements:
        if fc.is_zero(gv[b]):
            continue
        for c in grp.elements:
            if not fc.is_zero(hv[c]):
                a = grp.mul(b, c)
                out[a] = fc.add(out[a], fc.mul(gv[b], hv[c]))
    return FunctionOnX.from_payloads(g.gset, fc, out)


def convolve_action(g: FunctionOnX, f: FunctionOnX) -> FunctionOnX:
    """(g*f)(x) = sum_alpha g(alpha) f(alpha^-1 x), the module action of g on f."""
    _require_regular(g)
    if g.group is not f.group:
        raise MismatchedContext("different groups")
    if g.field != f.field:
        raise MismatchedContext("different fields")
    fc = f.field
    out = [fc.zero()] * f.gset.size
    fv = f.payloads
    for a, coeff in enumerate(g.payloads):
        if fc.is_zero(coeff):
            continue
        row = f.gset.action[a]
        for y, v in enumerate(fv):
            out[row[y]] = fc.add(out[row[y]], fc.mul(coeff, v))
    return FunctionOnX.from_payloads(f.gset, fc, out)


@dataclass(frozen=True)
class TranslateMatrix:
    rows: tuple[tuple[FieldValue, ...], ...]  # row alpha = alpha f
    row_order: tuple[int, ...]


def translate_matrix(f: FunctionOnX) -> TranslateMatrix:
    rows = tuple(tuple(_translate_payloads(f.gset, a, f.values)) for a in f.group.elements)
    return TranslateMatrix(rows, tuple(f.group.elements))


def translate_payload_rows(f: FunctionOnX) -> list[list]:
    vals = f.payloads
    return [_translate_payloads(f.gset, a, vals) for a in f.group.elements]


def dim_FGf(f: FunctionOnX) -> int:
    """dim of the submodule FGf, as the rank of the matrix of all translates."""
    if f.is_zero():
        raise ZeroFunction("dim FGf is only reported for nonzero f")
    return rank_payloads(f.field, translate_payload_rows(f))


def is_G_linear(f: FunctionOnX, over: Union[Group, Subgroup, Iterable[int], None] = None) -> Character | None:
    """The character eta with alpha f = eta(alpha) f on ``over``, if there is one.

    ``over`` may also be a bare element set; a set that is not a subgroup
    carries no character, so the answer is then None.
    """
    if f.is_zero():
        raise ZeroFunction("G-linearity of the zero function is meaningless")
    grp = f.group
    if over is None:
        domain = tuple(grp.elements)
    elif isinstance(over, (Group, Subgroup)):
        domain = tuple(over.elements)
    else:
        domain = tuple(sorted(set(over)))
        if not domain or not is_subgroup(grp, domain):
            return None
    supp = support(f)
    x = supp[0]
    fx_inv = f.values[x].inverse()
    eta = {}
    for a in domain:
        if f.gset.act_set(a, supp) != supp:
            return None
        t = _translate_payloads(f.gset, a, f.values)
        c = t[x] * fx_inv
        if any(t[y] != c * f.values[y] for y in f.gset.points):
            return None
        eta[a] = c
    return Character(grp, domain, eta)


@dataclass(frozen=True)
class RegularLinearForm:
    """f = c * eta^-1 on the regular set."""
    scalar: FieldValue
    character: Character


def regular_linear_form(f: FunctionOnX) -> RegularLinearForm | None:
    _require_regular(f)
    eta = is_G_linear(f)
    if eta is None:
        return None
    c = f.values[f.group.identity]
    if any(f.values[a] != c * eta(a).inverse() for a in f.group.elements):
        raise Violation("G-linear f is not c * eta^-1")
    return RegularLinearForm(c, eta)
