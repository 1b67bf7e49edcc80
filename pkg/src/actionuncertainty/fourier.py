"""Dual sets and Fourier transforms of functions on a G-set.

Irreducible representations of nonabelian groups are supplied as data and
validated; for abelian groups they are the characters G -> E^x.  A dual set
is a basis {lambda^psi_ij} of E^X with alpha lambda^psi = lambda^psi rho^psi(alpha).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import (CapExceeded, FieldMismatch, InputError, NotAbelian, NoSuchRoot,
                     NotHomomorphism, NotPrime, NotSemisimple, OrthogonalityFailure,
                     Violation, WrongDegreeSum)
from .fields import (Cyclotomic, FieldContext, FieldValue, contains_roots, embed, embeds,
                     is_prime, random_element, semisimplicity_check)
from .groups import Group, homs_to_units
from .gset import GSet, regular_gset
from .linalg import (determinant_payloads, diagonalize, identity_payloads,
                     independent_columns, matmul_payloads, rank_payloads)
from .permmodule import FunctionOnX, support, translate

EXHAUSTIVE_SCHUR_ORDER = 8
EXHAUSTIVE_EQUIVARIANCE_ORDER = 12
CHEBOTAREV_CAP = 7

Matrix = tuple[tuple, ...]  # payload matrix


def _mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True, eq=False)
class Irrep:
    degree: int
    matrices: tuple[Matrix, ...]  # indexed by group element; payload entries

    def __call__(self, a: int) -> Matrix:
        return self.matrices[a]

    def entry(self, a: int, i: int, j: int):
        return self.matrices[a][i][j]


@dataclass(frozen=True, eq=False)
class RepresentationBundle:
    group: Group
    field: FieldContext
    irreps: tuple[Irrep, ...]
    schur_samples: int = 200
    seed: int = 0

    def __post_init__(self):
        validate_bundle(self)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.degree for r in self.irreps)


def validate_bundle(b: RepresentationBundle) -> None:
    g, fc = b.group, b.field
    for idx, r in enumerate(b.irreps):
        if len(r.matrices) != g.order:
            raise InputError(f"irrep {idx} needs one matrix per group element")
        for m in r.matrices:
            if len(m) != r.degree or any(len(row) != r.degree for row in m):
                raise InputError(f"irrep {idx} has a matrix of the wrong shape")
        if r.matrices[g.identity] != _mat(identity_payloads(fc, r.degree)):
            raise NotHomomorphism(f"irrep {idx}: rho(1) is not the identity")
        for a in g.elements:
            for c in g.elements:
                if _mat(matmul_payloads(fc, r(a), r(c))) != r(g.mul(a, c)):
                    raise NotHomomorphism(f"irrep {idx}: rho({a}*{c}) != rho({a}) rho({c})")
    total = sum(r.degree ** 2 for r in b.irreps)
    if total != g.order:
        raise WrongDegreeSum(f"sum of squared degrees is {total}, |G| = {g.order}")
    if not semisimplicity_check(fc, g):
        raise NotSemisimple(f"char {fc.characteristic} divides |G| = {g.order}")
    _check_schur(b)


def _schur_lhs(b: RepresentationBundle, p: Irrep, q: Irrep, i, j, k, l, a):
    g, fc = b.group, b.field
    acc = fc.zero()
    for beta in g.elements:
        acc = fc.add(acc, fc.mul(p.entry(g.inv(beta), i, j), q.entry(g.mul(beta, a), k, l)))
    return acc


def _check_schur(b: RepresentationBundle) -> None:
    """sum_beta rho^psi_ij(beta^-1) rho^phi_kl(beta alpha) = (n/n_psi) rho^psi_il(alpha) [psi=phi, j=k]."""
    g, fc = b.group, b.field
    tuples = []
    for s, p in enumerate(b.irreps):
        for t, q in enumerate(b.irreps):
            for i, j, k, l in itertools.product(range(p.degree), range(p.degree),
                                                range(q.degree), range(q.degree)):
                tuples.append((s, t, i, j, k, l))
    alphas = list(g.elements)
    if g.order > EXHAUSTIVE_SCHUR_ORDER:
        rng = random.Random(b.seed)
        tuples = rng.sample(tuples, min(len(tuples), b.schur_samples))
        alphas = rng.sample(alphas, min(len(alphas), 4))
    for s, t, i, j, k, l in tuples:
        p, q = b.irreps[s], b.irreps[t]
        scale = fc.div(fc.from_int(g.order), fc.from_int(p.degree))
        for a in alphas:
            lhs = _schur_lhs(b, p, q, i, j, k, l, a)
            rhs = fc.mul(scale, p.entry(a, i, l)) if (s == t and j == k) else fc.zero()
            if lhs != rhs:
                raise OrthogonalityFailure(
                    f"Schur relation fails for irreps ({s},{t}), indices {(i, j, k, l)}, alpha={a}")


def abelian_characters(g: Group, e: FieldContext) -> RepresentationBundle:
    if not g.is_abelian():
        raise NotAbelian(f"{g.name} is not abelian")
    if not contains_roots(e, g.exponent()):
        raise NoSuchRoot(f"{e.spec} lacks a primitive {g.exponent()}-th root of unity")
    irreps = tuple(Irrep(1, tuple(((chi(a).payload,),) for a in g.elements))
                   for chi in homs_to_units(g, e))
    return RepresentationBundle(g, e, irreps)


def bundle_from_json(g: Group, field: FieldContext, irreps: Sequence[dict]) -> RepresentationBundle:
    out = []
    for idx, spec in enumerate(irreps):
        d = int(spec["degree"])
        mats = spec["matrices"]
        if set(map(str, mats)) != {str(a) for a in g.elements}:
            raise InputError(f"irrep {idx} must list a matrix for every element 0..{g.order - 1}")
        by_elem = {int(k): v for k, v in mats.items()}
        out.append(Irrep(d, tuple(_mat([[field.parse(x) for x in row] for row in by_elem[a]])
                                  for a in g.elements)))
    return RepresentationBundle(g, field, tuple(out))


# ---------------------------------------------------------------------------
# dual sets

def _perm_operator(xs: GSet, fc: FieldContext, coeffs: Sequence) -> list[list]:
    """Matrix of sum_g c_g g on E^X (columns = images of the point deltas)."""
    m = xs.size
    mat = [[fc.zero()] * m for _ in range(m)]
    for a, c in enumerate(coeffs):
        if fc.is_zero(c):
            continue
        row = xs.action[a]
        for y in range(m):
            mat[row[y]][y] = fc.add(mat[row[y]][y], c)
    return mat


def _matrix_unit(b: RepresentationBundle, r: Irrep, i: int, j: int) -> list:
    """Coefficients of e_ij = (n_psi/n) sum_g rho_ji(g^-1) g, so that g e_ij = sum_k rho_ki(g) e_kj."""
    g, fc = b.group, b.field
    scale = fc.div(fc.from_int(r.degree), fc.from_int(g.order))
    return [fc.mul(scale, r.entry(g.inv(a), j, i)) for a in g.elements]


def _apply(fc: FieldContext, mat, vec) -> list:
    out = []
    for row in mat:
        acc = fc.zero()
        for x, v in zip(row, vec):
            if not fc.is_zero(x) and not fc.is_zero(v):
                acc = fc.add(acc, fc.mul(x, v))
        out.append(acc)
    return out


@dataclass(frozen=True, eq=False)
class DualSet:
    gset: GSet
    bundle: RepresentationBundle
    multiplicities: tuple[int, ...]
    lambdas: tuple[tuple[tuple[tuple, ...], ...], ...]  # [psi][i][j] -> payload vector of length m

    @property
    def field(self) -> FieldContext:
        return self.bundle.field

    def functions(self):
        """(psi, i, j, values) in canonical order."""
        for s, block in enumerate(self.lambdas):
            for i, row in enumerate(block):
                for j, vec in enumerate(row):
                    yield s, i, j, vec

    def evaluation_matrix(self) -> list[list]:
        return [list(vec) for *_, vec in self.functions()]


def build_dual_set(xs: GSet, bundle: RepresentationBundle) -> DualSet:
    g, fc = bundle.group, bundle.field
    if xs.group is not g and xs.group.cayley != g.cayley:
        raise InputError("dual set: G-set and bundle use different groups")
    if not semisimplicity_check(fc, g):
        raise NotSemisimple(f"char {fc.characteristic} divides |G| = {g.order}")
    mults, lambdas = [], []
    for r in bundle.irreps:
        e11 = _perm_operator(xs, fc, _matrix_unit(bundle, r, 0, 0))
        cols = independent_columns(fc, e11)
        ws = [[row[c] for row in e11] for c in cols]
        units = [_perm_operator(xs, fc, _matrix_unit(bundle, r, j, 0)) for j in range(r.degree)]
        block = []
        for w in ws:
            row = [_apply(fc, units[j], w) for j in range(r.degree)]
            lead = next(v for v in row[0] if not fc.is_zero(v))
            inv = fc.inv(lead)
            block.append(tuple(tuple(fc.mul(inv, v) for v in vec) for vec in row))
        mults.append(len(ws))
        lambdas.append(tuple(block))
    ds = DualSet(xs, bundle, tuple(mults), tuple(lambdas))
    validate_dual_set(ds)
    return ds


def evaluation_determinant(ds: DualSet) -> FieldValue:
    return FieldValue(ds.field, determinant_payloads(ds.field, ds.evaluation_matrix()))


def transformation_law_holds(ds: DualSet) -> bool:
    """alpha lambda^psi = lambda^psi rho^psi(alpha), every alpha, psi, i, j."""
    xs, fc = ds.gset, ds.field
    for s, block in enumerate(ds.lambdas):
        r = ds.bundle.irreps[s]
        for a in xs.group.elements:
            rho = r(a)
            row_map = xs.action[a]
            for vecs in block:
                for j in range(r.degree):
                    moved = [None] * xs.size
                    for y, v in enumerate(vecs[j]):
                        moved[row_map[y]] = v
                    expect = [fc.zero()] * xs.size
                    for k in range(r.degree):
                        c = rho[k][j]
                        if not fc.is_zero(c):
                            expect = [fc.add(e, fc.mul(c, v)) for e, v in zip(expect, vecs[k])]
                    if moved != expect:
                        return False
    return True


def validate_dual_set(ds: DualSet) -> None:
    m = ds.gset.size
    total = sum(mu * r.degree for mu, r in zip(ds.multiplicities, ds.bundle.irreps))
    if total != m:
        raise Violation(f"sum m_psi n_psi = {total} != |X| = {m}")
    if ds.field.is_zero(determinant_payloads(ds.field, ds.evaluation_matrix())):
        raise Violation("dual set is not a basis of E^X")
    if not transformation_law_holds(ds):
        raise Violation("dual set violates the transformation law")


# ---------------------------------------------------------------------------
# transforms

@dataclass(frozen=True, eq=False)
class FourierTransform:
    dual_set: DualSet
    blocks: tuple[Matrix, ...]  # per psi: m_psi x n_psi payload matrix

    @property
    def field(self) -> FieldContext:
        return self.dual_set.field

    def block(self, s: int) -> list[list[FieldValue]]:
        return [[FieldValue(self.field, v) for v in row] for row in self.blocks[s]]

    def values(self) -> list[FieldValue]:
        return [FieldValue(self.field, v) for blk in self.blocks for row in blk for v in row]

    def __eq__(self, other):
        return isinstance(other, FourierTransform) and self.dual_set is other.dual_set and \
            self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)


def _lift(f: FunctionOnX, e: FieldContext) -> list:
    if f.field == e:
        return list(f.payloads)
    if not embeds(f.field, e):
        raise FieldMismatch(f"{f.field.spec} does not embed in {e.spec}")
    return [embed(v, e).payload for v in f.values]


def fourier_transform(f: FunctionOnX, ds: DualSet) -> FourierTransform:
    """f^(lambda_ij) = sum_x f(x) lambda_ij(x)."""
    if f.group is not ds.gset.group and f.group.cayley != ds.gset.group.cayley:
        raise InputError("function and dual set are over different groups")
    if f.gset.size != ds.gset.size or f.gset.action != ds.gset.action:
        raise InputError("function and dual set are on different G-sets")
    fc = ds.field
    vals = _lift(f, fc)
    blocks = []
    for block in ds.lambdas:
        blocks.append(tuple(tuple(_dot(fc, vals, vec) for vec in row) for row in block))
    return FourierTransform(ds, tuple(blocks))


def _dot(fc: FieldContext, u, v):
    acc = fc.zero()
    for a, b in zip(u, v):
        if not fc.is_zero(a) and not fc.is_zero(b):
            acc = fc.add(acc, fc.mul(a, b))
    return acc


def act_on_transform(a: int, ft: FourierTransform) -> FourierTransform:
    """(alpha . f^)(lambda^psi) = f^(lambda^psi) rho^psi(alpha^-1)."""
    ds, fc = ft.dual_set, ft.field
    g = ds.gset.group
    blocks = []
    for s, blk in enumerate(ft.blocks):
        if not blk:
            blocks.append(blk)
            continue
        rho = ds.bundle.irreps[s](g.inv(a))
        blocks.append(_mat(matmul_payloads(fc, [list(r) for r in blk], rho)))
    return FourierTransform(ds, tuple(blocks))


def equivariance_check(f: FunctionOnX, ds: DualSet, trials: int = 16,
                       rng: random.Random | None = None) -> bool:
    g = ds.gset.group
    if g.order <= EXHAUSTIVE_EQUIVARIANCE_ORDER:
        alphas = list(g.elements)
    else:
        rng = rng or random.Random(0)
        alphas = [rng.randrange(g.order) for _ in range(trials)]
    ft = fourier_transform(f, ds)
    return all(fourier_transform(translate(a, f), ds) == act_on_transform(a, ft) for a in alphas)


def rank_support(ft: FourierTransform) -> int:
    """sum_psi n_psi rank(f^(lambda^psi))."""
    total = 0
    for s, blk in enumerate(ft.blocks):
        if blk:
            total += ft.dual_set.bundle.irreps[s].degree * rank_payloads(ft.field, blk)
    return total


def _weighted_nonzeros(ft: FourierTransform, blocks) -> int:
    fc = ft.field
    return sum(ft.dual_set.bundle.irreps[s].degree * sum(not fc.is_zero(v) for row in blk for v in row)
               for s, blk in enumerate(blocks))


def support_size(ft: FourierTransform) -> int:
    """|supp f^| = sum_psi n_psi |supp f^(lambda^psi)| for the dual set at hand."""
    return _weighted_nonzeros(ft, ft.blocks)


@dataclass(frozen=True)
class MinSuppWitness:
    q: tuple[Matrix, ...]  # per psi, m_psi x m_psi
    p: tuple[Matrix, ...]  # per psi, n_psi x n_psi
    nonzeros: tuple[int, ...]  # per psi, count of ones after diagonalizing
    weighted_count: int
    sampled: int


def _random_invertible(fc: FieldContext, n: int, rng: random.Random) -> list[list]:
    while True:
        mat = [[random_element(fc, rng).payload for _ in range(n)] for _ in range(n)]
        if n == 0 or rank_payloads(fc, mat) == n:
            return mat


def min_supp_witness(ft: FourierTransform, samples: int = 8,
                     rng: random.Random | None = None) -> MinSuppWitness:
    """Diagonalize each block by base changes; count matches rk-supp.

    Random (P, Q) samples are also checked never to undercut that count.
    """
    fc, ds = ft.field, ft.dual_set
    qs, ps, counts = [], [], []
    for s, blk in enumerate(ft.blocks):
        r = ds.bundle.irreps[s]
        mu = ds.multiplicities[s]
        if mu == 0:
            qs.append(())
            ps.append(_mat(identity_payloads(fc, r.degree)))
            counts.append(0)
            continue
        q, p, rank = diagonalize(fc, [list(row) for row in blk])
        d = matmul_payloads(fc, matmul_payloads(fc, q, [list(row) for row in blk]), p)
        for i in range(mu):
            for j in range(r.degree):
                want = fc.one() if (i == j and i < rank) else fc.zero()
                if d[i][j] != want:
                    raise Violation(f"block {s} did not diagonalize")
        qs.append(_mat(q))
        ps.append(_mat(p))
        counts.append(rank)
    weighted = sum(ds.bundle.irreps[s].degree * c for s, c in enumerate(counts))
    if weighted != rank_support(ft):
        raise Violation("diagonal witness count differs from rk-supp")
    rng = rng or random.Random(0)
    for _ in range(samples):
        changed = []
        for s, blk in enumerate(ft.blocks):
            r = ds.bundle.irreps[s]
            mu = ds.multiplicities[s]
            if mu == 0:
                changed.append(blk)
                continue
            q = _random_invertible(fc, mu, rng)
            p = _random_invertible(fc, r.degree, rng)
            changed.append(matmul_payloads(fc, matmul_payloads(fc, q, [list(row) for row in blk]), p))
        if _weighted_nonzeros(ft, changed) < weighted:
            raise Violation("a base change produced a support smaller than rk-supp")
    return MinSuppWitness(tuple(qs), tuple(ps), tuple(counts), weighted, samples)


# ---------------------------------------------------------------------------
# prime-order checks

def _fourier_matrix(p: int) -> tuple[Cyclotomic, list[list]]:
    fc = Cyclotomic.of(p)
    w = fc.generator()
    powers = [fc.power(w, k) for k in range(p)]
    return fc, [[powers[(i * j) % p] for j in range(p)] for i in range(p)]


@dataclass(frozen=True)
class ChebotarevResult:
    p: int
    minors_checked: int
    all_nonzero: bool
    first_zero: tuple | None = None

    def __bool__(self):
        return self.all_nonzero


def all_minors(fc: FieldContext, w: list[list]) -> dict[tuple[tuple, tuple], object]:
    """Every square minor of a square matrix, keyed by (rows, cols).

    Built bottom-up by Laplace expansion along the first chosen row, so each
    minor costs k multiplications and no inversions.
    """
    n = len(w)
    minors: dict[tuple[tuple, tuple], object] = {((), ()): fc.one()}
    for k in range(1, n + 1):
        for rows in itertools.combinations(range(n), k):
            top, rest = rows[0], rows[1:]
            for cols in itertools.combinations(range(n), k):
                acc = fc.zero()
                for j, c in enumerate(cols):
                    term = fc.mul(w[top][c], minors[(rest, cols[:j] + cols[j + 1:])])
                    acc = fc.sub(acc, term) if j % 2 else fc.add(acc, term)
                minors[(rows, cols)] = acc
    del minors[((), ())]
    return minors


def chebotarev_minor_check(p: int, cap: int = CHEBOTAREV_CAP) -> ChebotarevResult:
    """Every square minor of (omega^ij) over Q(zeta_p) is nonzero."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p > cap:
        raise CapExceeded(f"p = {p} exceeds the cap {cap}")
    fc, w = _fourier_matrix(p)
    minors = all_minors(fc, w)
    expected = sum(math.comb(p, k) ** 2 for k in range(1, p + 1))
    if len(minors) != expected:
        raise Violation(f"enumerated {len(minors)} minors, expected {expected}")
    for key in sorted(minors, key=lambda rc: (len(rc[0]), rc)):
        if fc.is_zero(minors[key]):
            return ChebotarevResult(p, len(minors), False, key)
    return ChebotarevResult(p, len(minors), True)


@dataclass(frozen=True)
class TaoSample:
    values: tuple[str, ...]
    supp: int
    supp_hat: int


def tao_bound_check(p: int, samples: int, rng: random.Random) -> list[TaoSample]:
    """|supp f| + |supp f^| >= p + 1 for random nonzero f on Z_p over Q(zeta_p)."""
    from .groups import cyclic_group

    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    g = cyclic_group(p)
    fc = Cyclotomic.of(p)
    xs = regular_gset(g)
    ds = build_dual_set(xs, abelian_characters(g, fc))
    out = []
    while len(out) < samples:
        k = rng.randint(1, p)
        pts = set(rng.sample(range(p), k))
        vals = [random_element(fc, rng) if x in pts else fc(0) for x in range(p)]
        f = FunctionOnX(xs, fc, tuple(vals))
        if f.is_zero():
            continue
        ft = fourier_transform(f, ds)
        s, sh = len(support(f)), support_size(ft)
        if s + sh < p + 1:
            raise Violation(f"additive bound fails for {f}: {s} + {sh} < {p + 1}")
        out.append(TaoSample(tuple(f.to_json()), s, sh))
    return out
