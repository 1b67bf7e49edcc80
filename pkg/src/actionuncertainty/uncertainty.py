"""Uncertainty bounds for functions on transitive G-sets.

For 0 != f on X with S = supp(f):

    |S| * dim FGf >= |X| + |S| - |X_S| >= |X|

with classical equality exactly when zeta^-1(S) is a subgroup on whose lift
f is a scaled character.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional

from .errors import (FullSupport, InputError, NotAbelian, NotHomomorphism, NotSemisimple,
                     Violation, ZeroFunction)
from .fields import FieldContext, FieldValue, semisimplicity_check
from .fourier import (DualSet, abelian_characters, build_dual_set, fourier_transform,
                      rank_support, support_size)
from .groups import Character, Group, Subgroup, homs_to_units, is_subgroup
from .gset import (GSet, Subset, associated_block, regular_gset, right_stabilizer,
                   zeta_preimage)
from .linalg import rank_payloads
from .permmodule import (FunctionOnX, _require_regular, _translate_payloads, dim_FGf,
                         is_G_linear, support)


@dataclass(frozen=True)
class EqualityCertificate:
    """S = X_S is a block, its lift is a subgroup, and f(beta x0) = c eta(beta)."""
    block: Subset
    lifted_subgroup: Subgroup
    character: Character
    scalar: FieldValue
    x0: int
    kind: str = "CosetIndicatorLike"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "block": list(self.block),
            "lifted_subgroup": list(self.lifted_subgroup.elements),
            "character": [v.to_json() for v in self.character.value_tuple()],
            "scalar": self.scalar.to_json(),
            "x0": self.x0,
        }


@dataclass(frozen=True)
class EqualityRefutation:
    reason: str
    kind: str = "None"

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"kind": self.kind, "reason": self.reason}


@dataclass(frozen=True)
class UncertaintyReport:
    group: str
    action: str
    field: str
    x0: int
    supp_size: int
    dim: int
    block_size: int
    size: int
    rank_support: Optional[int] = None
    certificate: Optional[EqualityCertificate] = None

    def __post_init__(self):
        if not self.lhs >= self.rhs_sharp >= self.rhs_classical:
            raise Violation(f"bound sandwich fails: {self.lhs} >= {self.rhs_sharp} >= {self.rhs_classical}")
        if self.rank_support is not None and self.rank_support != self.dim:
            raise Violation(f"rk-supp {self.rank_support} != dim FGf {self.dim}")

    @property
    def lhs(self) -> int:
        return self.supp_size * self.dim

    @property
    def rhs_sharp(self) -> int:
        return self.size + self.supp_size - self.block_size

    @property
    def rhs_classical(self) -> int:
        return self.size

    @property
    def sharp_equality(self) -> bool:
        return self.lhs == self.rhs_sharp

    @property
    def classical_equality(self) -> bool:
        return self.lhs == self.rhs_classical

    def bound_values(self) -> tuple:
        return (self.supp_size, self.dim, self.block_size, self.lhs, self.rhs_sharp, self.rhs_classical)

    def to_json(self) -> dict:
        out = {
            "group": self.group, "action": self.action, "field": self.field, "x0": self.x0,
            "supp_size": self.supp_size, "dim": self.dim, "block_size": self.block_size,
            "lhs": self.lhs, "rhs_sharp": self.rhs_sharp, "rhs_classical": self.rhs_classical,
            "sharp_equality": self.sharp_equality, "classical_equality": self.classical_equality,
        }
        if self.rank_support is not None:
            out["rank_support"] = self.rank_support
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


# ---------------------------------------------------------------------------
# support-only data, cached per (G-set, x0, S)

@functools.lru_cache(maxsize=1 << 16)
def block_for(xs: GSet, x0: int, s: Subset) -> Subset:
    if len(s) == xs.size:
        return tuple(xs.points)
    return associated_block(xs, x0, s)


@functools.lru_cache(maxsize=1 << 16)
def _lift_info(xs: GSet, x0: int, s: Subset) -> tuple[Subset, bool]:
    lifted = zeta_preimage(xs, x0, s)
    return lifted, is_subgroup(xs.group, lifted)


def _check_function(f: FunctionOnX, x0: Optional[int]) -> tuple[Subset, int]:
    if f.is_zero():
        raise ZeroFunction("f must be nonzero")
    f.gset.require_transitive()
    s = support(f)
    x0 = s[0] if x0 is None else x0
    if x0 not in s:
        raise InputError(f"base point {x0} is not in supp(f) = {list(s)}")
    return s, x0


def analyze(f: FunctionOnX, x0: Optional[int] = None) -> UncertaintyReport:
    s, x0 = _check_function(f, x0)
    xs = f.gset
    return UncertaintyReport(xs.group.name, xs.kind, f.field.spec, x0, len(s), dim_FGf(f),
                             len(block_for(xs, x0, s)), xs.size)


def regular_analyze(f: FunctionOnX) -> UncertaintyReport:
    """analyze on the regular set with X_S replaced by the right stabilizer G_S."""
    _require_regular(f)
    rep = analyze(f)
    g_s = right_stabilizer(f.group, support(f))
    if g_s.order != rep.block_size:
        raise Violation(f"|G_S| = {g_s.order} but |X_S| = {rep.block_size}")
    return rep


# ---------------------------------------------------------------------------
# the covering argument

@dataclass(frozen=True)
class GreedyResult:
    t: int
    chosen: tuple[int, ...]
    dim: int
    cover_bound: int  # t|S| - |S| + |X_S|


@functools.lru_cache(maxsize=1 << 16)
def greedy_selection(xs: GSet, x0: int, s: Subset) -> tuple[int, ...]:
    """alpha_1..alpha_{t-1} from S'^-1 until they cover S'^-1 S, then alpha_t from S^-1."""
    g = xs.group
    sset = set(s)
    comp = [x for x in xs.points if x not in sset]
    if not comp:
        raise FullSupport("supp(f) = X; the covering argument needs S' nonempty")
    candidates = sorted(g.inverse_set(zeta_preimage(xs, x0, comp)))
    target = set(xs.image(candidates, s))
    chosen = [candidates[0]]
    covered = set(xs.act_set(candidates[0], s))
    while covered != target:
        a = next(c for c in candidates if not set(xs.act_set(c, s)) <= covered)
        chosen.append(a)
        covered |= set(xs.act_set(a, s))
    last = min(g.inverse_set(zeta_preimage(xs, x0, s)))
    if set(xs.act_set(last, s)) <= covered:
        raise Violation("final translate adds no new point")
    chosen.append(last)
    return tuple(chosen)


def greedy_translate_bound(f: FunctionOnX, x0: Optional[int] = None) -> GreedyResult:
    s, x0 = _check_function(f, x0)
    xs = f.gset
    if len(s) == xs.size:
        raise FullSupport("supp(f) = X; the covering argument needs S' nonempty")
    chosen = greedy_selection(xs, x0, s)
    t = len(chosen)
    dim = dim_FGf(f)
    rows = [_translate_payloads(xs, a, f.payloads) for a in chosen]
    if rank_payloads(f.field, rows) != t:
        raise Violation("chosen translates are not independent")
    bound = t * len(s) - len(s) + len(block_for(xs, x0, s))
    if t > dim or xs.size > bound:
        raise Violation(f"covering bounds fail: t={t}, dim={dim}, |X|={xs.size}, bound={bound}")
    return GreedyResult(t, chosen, dim, bound)


# ---------------------------------------------------------------------------
# equality in the classical bound

def classify_equality_classical(f: FunctionOnX, x0: Optional[int] = None):
    """Certificate iff |supp f| dim FGf = |X|; the equivalence is asserted."""
    s, x0 = _check_function(f, x0)
    xs = f.gset
    g = xs.group
    lifted, is_sub = _lift_info(xs, x0, s)
    result = None
    if not is_sub:
        result = EqualityRefutation("the lift of supp(f) is not a subgroup")
    else:
        h = Subgroup(g, lifted)
        c = f.values[x0]
        c_inv = c.inverse()
        values = {b: f.values[xs.action[b][x0]] * c_inv for b in lifted}
        try:
            eta = Character(g, lifted, values)
        except NotHomomorphism:
            result = EqualityRefutation("f on the lift is not a scaled character")
        else:
            linear = is_G_linear(f, h)
            if linear is None or linear != eta.inverse():
                raise Violation("beta f = eta(beta) f disagrees with f(beta x0) = c eta(beta)")
            result = EqualityCertificate(s, h, eta, c, x0)
            validate_certificate(f, result)
    equal = len(s) * dim_FGf(f) == xs.size
    if equal != isinstance(result, EqualityCertificate):
        raise Violation(f"classical equality is {equal} but certificate search says otherwise for {f}")
    return result


def validate_certificate(f: FunctionOnX, cert: EqualityCertificate) -> None:
    xs = f.gset
    if support(f) != cert.block:
        raise Violation("certificate block is not supp(f)")
    if block_for(xs, cert.x0, cert.block) != cert.block:
        raise Violation("supp(f) is not its own block X_S")
    if zeta_preimage(xs, cert.x0, cert.block) != cert.lifted_subgroup.elements:
        raise Violation("lifted subgroup is not the preimage of S")
    if not is_subgroup(xs.group, cert.lifted_subgroup.elements):
        raise Violation("lift is not a subgroup")
    for b in cert.lifted_subgroup.elements:
        if f.values[xs.action[b][cert.x0]] != cert.scalar * cert.character(b):
            raise Violation("f(beta x0) != c eta(beta)")


def coset_indicator_function(g: Group, h: Subgroup, gamma: int, eta: Character,
                             c, fc: FieldContext) -> FunctionOnX:
    """f(gamma beta) = c eta(beta) on gamma H, zero elsewhere, on the regular set."""
    c = fc(c)
    if not c:
        raise InputError("c must be nonzero")
    if tuple(eta.domain) != tuple(h.elements):
        raise InputError("eta must be defined on H")
    if eta.field != fc:
        raise InputError(f"eta takes values in {eta.field.spec}, not {fc.spec}")
    if gamma not in g.elements:
        raise InputError(f"gamma = {gamma} is not a group element")
    vals = [fc(0)] * g.order
    for b in h.elements:
        vals[g.mul(gamma, b)] = c * eta(b)
    return FunctionOnX(regular_gset(g), fc, tuple(vals))


# ---------------------------------------------------------------------------
# Fourier side

def rank_support_analyze(f: FunctionOnX, ds: DualSet, x0: Optional[int] = None) -> UncertaintyReport:
    if not semisimplicity_check(ds.field, f.group):
        raise NotSemisimple(f"{ds.field.spec} is not semisimple for {f.group.name}")
    rep = analyze(f, x0)
    rk = rank_support(fourier_transform(f, ds))
    return UncertaintyReport(rep.group, rep.action, rep.field, rep.x0, rep.supp_size, rep.dim,
                             rep.block_size, rep.size, rank_support=rk)


@dataclass(frozen=True)
class CosetDecomposition:
    """f = c' chi I_{gamma H}."""
    scalar: FieldValue
    character: Character
    gamma: int
    subgroup: Subgroup

    def rebuild(self, xs: GSet) -> FunctionOnX:
        g = xs.group
        fc = self.scalar.ctx
        coset = {g.mul(self.gamma, b) for b in self.subgroup.elements}
        return FunctionOnX(xs, fc, tuple(self.scalar * self.character(a) if a in coset else fc(0)
                                         for a in g.elements))


@dataclass(frozen=True)
class BoundLedger:
    order: int
    supp: int
    supp_hat: int
    right_stabilizer: int
    decomposition: Optional[CosetDecomposition] = None

    @property
    def lhs(self) -> int:
        return self.supp * self.supp_hat

    @property
    def rhs_classical(self) -> int:
        return self.order

    @property
    def rhs_sharp(self) -> int:
        return self.order + self.supp - self.right_stabilizer

    @property
    def classical_equality(self) -> bool:
        return self.lhs == self.rhs_classical

    @property
    def sharp_equality(self) -> bool:
        return self.lhs == self.rhs_sharp


@functools.lru_cache(maxsize=64)
def _character_dual_set(g: Group, fc: FieldContext) -> DualSet:
    return build_dual_set(regular_gset(g), abelian_characters(g, fc))


def coset_decomposition(f: FunctionOnX) -> Optional[CosetDecomposition]:
    """Write f = c' chi I_{gamma H} with chi a global character, if possible."""
    _require_regular(f)
    g = f.group
    s = support(f)
    gamma = s[0]
    h_elems = tuple(sorted(g.mul(g.inv(gamma), a) for a in s))
    if not is_subgroup(g, h_elems):
        return None
    c = f.values[gamma]
    c_inv = c.inverse()
    try:
        eta = Character(g, h_elems, {b: f.values[g.mul(gamma, b)] * c_inv for b in h_elems})
    except NotHomomorphism:
        return None
    for chi in homs_to_units(g, f.field):
        if chi.restrict(Subgroup(g, h_elems)) == eta:
            dec = CosetDecomposition(c * chi(gamma).inverse(), chi, gamma, Subgroup(g, h_elems))
            if dec.rebuild(f.gset) != f:
                raise Violation("coset decomposition does not rebuild f")
            return dec
    raise Violation("a character of H has no extension to G")


def donoho_stark_check(g: Group, fc: FieldContext, f: FunctionOnX) -> BoundLedger:
    if not g.is_abelian():
        raise NotAbelian(f"{g.name} is not abelian")
    if not semisimplicity_check(fc, g):
        raise NotSemisimple(f"{fc.spec} is not semisimple for {g.name}")
    if f.group is not g:
        raise InputError("f is not a function on this group")
    _require_regular(f)
    if f.is_zero():
        raise ZeroFunction("f must be nonzero")
    ds = _character_dual_set(g, fc)
    ft = fourier_transform(f, ds)
    supp_hat = support_size(ft)
    if supp_hat != rank_support(ft) or supp_hat != dim_FGf(f):
        raise Violation("|supp f^| differs from rk-supp or dim FGf for an abelian group")
    s = support(f)
    ledger = BoundLedger(g.order, len(s), supp_hat, right_stabilizer(g, s).order)
    if ledger.lhs < ledger.rhs_sharp:
        raise Violation(f"sharpened bound fails for {f}")
    dec = coset_decomposition(f) if ledger.classical_equality else None
    if ledger.classical_equality and dec is None:
        raise Violation(f"classical equality without coset form for {f}")
    if not ledger.classical_equality and coset_decomposition(f) is not None:
        raise Violation(f"coset-form f misses classical equality: {f}")
    return BoundLedger(ledger.order, ledger.supp, ledger.supp_hat, ledger.right_stabilizer, dec)
