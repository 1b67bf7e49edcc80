"""Batch verification: exhaustive sweeps, lemma suites and the equality atlas."""
from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import CapExceeded, InputError, Violation
from .fields import (FieldContext, FieldValue, PrimeField, elements, field_from_spec, is_prime,
                     random_element)
from .fourier import (DualSet, abelian_characters, build_dual_set, chebotarev_minor_check,
                      equivariance_check, evaluation_determinant, fourier_transform,
                      rank_support, support_size, tao_bound_check, transformation_law_holds)
from .groups import Group, all_subgroups, cyclic_group, homs_to_units, load_group
from .gset import (GSet, block_lemma_check, closure_law_check, complement_cover_check,
                   coset_action, equivariant_isomorphism, is_x0_closed, regular_gset,
                   translate_cover_criterion)
from .io import DATA_DIR, builtin_bundle, builtin_group, function_from_ref, resolve
from .linalg import nullspace
from .permmodule import FunctionOnX, dim_FGf, support
from .uncertainty import (EqualityCertificate, analyze, classify_equality_classical,
                          donoho_stark_check, greedy_translate_bound)

GLOBAL_MAX_ORDER = 12
LEDGER_COLUMNS = ["group", "action", "field", "f-index", "supp", "dim", "block", "lhs",
                  "rhs_sharp", "rhs_classical", "sharp_eq", "classical_eq"]
ORDER8_GROUPS = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8",
                 "Z2xZ2", "Z2xZ4", "Z2^3", "S3", "D4", "Q8"]
ABELIAN_ORDER8 = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ4", "Z2^3"]


@dataclass
class SweepConfig:
    groups: list
    fields: list[str]
    actions: str = "all-transitive"
    max_order: int = 8
    normalize: str = "leading-one"
    jobs: int = 1
    seed: int = 0
    functions: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)  # {"json": path, "csv": path}
    base_dir: Path = DATA_DIR

    def __post_init__(self):
        if self.max_order > GLOBAL_MAX_ORDER:
            raise CapExceeded(f"max_order {self.max_order} exceeds the cap {GLOBAL_MAX_ORDER}")
        if not self.fields and not self.functions:
            raise InputError("at least one field spec is required")
        if self.actions not in ("all-transitive", "regular"):
            raise InputError(f"unknown actions mode {self.actions!r}")
        if self.normalize not in ("leading-one", "none"):
            raise InputError(f"unknown normalization {self.normalize!r}")
        if self.jobs < 1:
            raise InputError("jobs must be positive")
        if set(self.outputs) - {"json", "csv"}:
            raise InputError("outputs may only name 'json' and 'csv' paths")

    @classmethod
    def from_json(cls, obj: dict, base_dir: Path = DATA_DIR) -> "SweepConfig":
        known = {"groups", "fields", "actions", "max_order", "normalize", "jobs", "seed", "functions", "outputs"}
        extra = set(obj) - known
        if extra:
            raise InputError(f"unknown config keys {sorted(extra)}")
        return cls(groups=list(obj.get("groups", [])), fields=list(obj.get("fields", [])),
                   actions=obj.get("actions", "all-transitive"), max_order=int(obj.get("max_order", 8)),
                   normalize=obj.get("normalize", "leading-one"), jobs=int(obj.get("jobs", 1)),
                   seed=int(obj.get("seed", 0)), functions=list(obj.get("functions", [])),
                   outputs=dict(obj.get("outputs", {})), base_dir=base_dir)

    @classmethod
    def load(cls, path: str | Path) -> "SweepConfig":
        loaded = resolve(str(path), Path.cwd())
        return cls.from_json(loaded.obj, loaded.base)

    def describe(self) -> dict:
        return {"groups": [g if isinstance(g, str) else g.get("name", "inline") for g in self.groups],
                "fields": self.fields, "actions": self.actions, "max_order": self.max_order,
                "normalize": self.normalize, "seed": self.seed}


@dataclass
class SweepLedger:
    config: dict
    rows: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    atlas_sharp: list[dict] = field(default_factory=list)
    atlas_classical: list[dict] = field(default_factory=list)
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    expected_instances: Optional[int] = None
    elapsed: float = 0.0  # not serialized, keeps ledgers byte-stable

    @property
    def instance_count(self) -> int:
        return len(self.rows)

    @property
    def ok(self) -> bool:
        return not self.violations and all(t["failed"] == 0 for t in self.tallies.values())

    def tally(self, name: str, passed: bool, n: int = 1):
        t = self.tallies.setdefault(name, {"passed": 0, "failed": 0})
        t["passed" if passed else "failed"] += n

    def merge(self, other: "SweepLedger"):
        self.rows.extend(other.rows)
        self.violations.extend(other.violations)
        self.atlas_sharp.extend(other.atlas_sharp)
        self.atlas_classical.extend(other.atlas_classical)
        for name, t in other.tallies.items():
            mine = self.tallies.setdefault(name, {"passed": 0, "failed": 0})
            mine["passed"] += t["passed"]
            mine["failed"] += t["failed"]

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "instance_count": self.instance_count,
            "expected_instance_count": self.expected_instances,
            "violations": self.violations,
            "tallies": {k: self.tallies[k] for k in sorted(self.tallies)},
            "equality_atlas": {"sharp": self.atlas_sharp, "classical": self.atlas_classical},
        }

    def csv_rows(self):
        return LEDGER_COLUMNS, [[r[c] for c in LEDGER_COLUMNS] for r in self.rows]


# ---------------------------------------------------------------------------
# enumeration

def transitive_actions(g: Group) -> list[GSet]:
    """One coset action per isomorphism class of transitive G-sets, largest first."""
    kept: list[GSet] = []
    for h in all_subgroups(g):
        xs = coset_action(g, h)
        if not any(k.size == xs.size and equivariant_isomorphism(k, xs) is not None for k in kept):
            kept.append(xs)
    return kept


def enumerate_functions(xs: GSet, fc: FieldContext, normalize: str = "leading-one"):
    """All nonzero functions, lexicographic in canonical element order."""
    elems = elements(fc)
    one = fc(1)
    for vals in itertools.product(elems, repeat=xs.size):
        lead = next((v for v in vals if v), None)
        if lead is None or (normalize == "leading-one" and lead != one):
            continue
        yield FunctionOnX(xs, fc, vals)


def function_count(m: int, q: int, normalize: str) -> int:
    return (q ** m - 1) // (q - 1) if normalize == "leading-one" else q ** m - 1


def function_record(f: FunctionOnX) -> dict:
    """A self-contained function object that ``analyze`` accepts as-is."""
    xs = f.gset
    g = xs.group
    action: dict = {"group": {"name": g.name, "cayley": [list(r) for r in g.cayley]}}
    if xs.kind.startswith("G/H"):
        action.update(kind="coset", subgroup=json.loads(xs.kind[3:]))
    else:
        action.update(kind="table", table=[list(r) for r in xs.action])
    return {"action": action, "field": f.field.spec, "values": f.to_json()}


def check_instance(f: FunctionOnX, ledger: SweepLedger, index: int, group_label: str):
    xs = f.gset
    base = {"group": group_label, "action": xs.kind, "field": f.field.spec, "f-index": index}
    repro = dict(base, function=function_record(f))
    try:
        rep = analyze(f)
    except Violation as exc:
        ledger.tally("sharp_bound", False)
        ledger.violations.append(dict(repro, check="sharp_bound", message=str(exc)))
        return
    ledger.tally("sharp_bound", True)
    ledger.rows.append(dict(base, supp=rep.supp_size, dim=rep.dim, block=rep.block_size, lhs=rep.lhs,
                            rhs_sharp=rep.rhs_sharp, rhs_classical=rep.rhs_classical,
                            sharp_eq=rep.sharp_equality, classical_eq=rep.classical_equality))
    if rep.sharp_equality:
        ledger.atlas_sharp.append(dict(base, values=f.to_json(), classical=rep.classical_equality))
    if rep.supp_size < xs.size:
        try:
            greedy_translate_bound(f)
            ledger.tally("greedy_cover", True)
        except Violation as exc:
            ledger.tally("greedy_cover", False)
            ledger.violations.append(dict(repro, check="greedy_cover", message=str(exc)))
    try:
        cert = classify_equality_classical(f)
        certified = isinstance(cert, EqualityCertificate)
        agree = certified == rep.classical_equality
        ledger.tally("classical_equivalence", agree)
        if not agree:
            ledger.violations.append(dict(repro, check="classical_equivalence",
                                          message="certificate disagrees with lhs == |X|"))
        if certified:
            ledger.atlas_classical.append(dict(base, values=f.to_json(), kind=cert.kind))
    except Violation as exc:
        ledger.tally("classical_equivalence", False)
        ledger.violations.append(dict(repro, check="classical_equivalence", message=str(exc)))


def _run_unit(unit: tuple) -> SweepLedger:
    group_obj, action_index, field_spec, actions_mode, normalize = unit
    g = load_group(group_obj)
    xs = regular_gset(g) if actions_mode == "regular" else transitive_actions(g)[action_index]
    fc = field_from_spec(field_spec)
    ledger = SweepLedger({})
    for i, f in enumerate(enumerate_functions(xs, fc, normalize)):
        check_instance(f, ledger, i, g.name)
    return ledger


def run_sweep(cfg: SweepConfig) -> SweepLedger:
    start = time.perf_counter()
    ledger = SweepLedger(cfg.describe())
    if cfg.functions:
        for i, ref in enumerate(cfg.functions):
            f = function_from_ref(ref, cfg.base_dir)
            if f.group.order > cfg.max_order:
                raise CapExceeded(f"{f.group.name} has order {f.group.order} > {cfg.max_order}")
            check_instance(f, ledger, i, f.group.name)
        ledger.expected_instances = len(cfg.functions)
        ledger.elapsed = time.perf_counter() - start
        return ledger
    if not cfg.groups:
        raise InputError("the sweep needs at least one group")
    units = []
    expected = 0
    for ref in cfg.groups:
        loaded = resolve(ref, cfg.base_dir)
        g = load_group(loaded.obj)
        if g.order > cfg.max_order:
            raise CapExceeded(f"{g.name} has order {g.order} > max_order {cfg.max_order}")
        actions = [regular_gset(g)] if cfg.actions == "regular" else transitive_actions(g)
        for ai, xs in enumerate(actions):
            for spec in cfg.fields:
                fc = field_from_spec(spec)
                if not fc.is_finite:
                    raise InputError(f"cannot enumerate all functions over {spec}")
                expected += function_count(xs.size, fc.order, cfg.normalize)
                units.append((loaded.obj, ai, spec, cfg.actions, cfg.normalize))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            parts = list(pool.map(_run_unit, units))
    else:
        parts = [_run_unit(u) for u in units]
    for part in parts:
        ledger.merge(part)
    ledger.expected_instances = expected
    if ledger.instance_count + len([v for v in ledger.violations if v["check"] == "sharp_bound"]) != expected:
        raise Violation(f"sweep produced {ledger.instance_count} instances, expected {expected}")
    ledger.elapsed = time.perf_counter() - start
    return ledger


# ---------------------------------------------------------------------------
# lemma suites

def smallest_prime_1_mod(n: int) -> int:
    p = n + 1
    while not (is_prime(p) and (p - 1) % n == 0):
        p += 1
    return p


def _cyclic(n: int) -> Group:
    return builtin_group(f"Z{n}") if n <= 8 else cyclic_group(n)


def rk_supp_cyclic_suite(ledger: SweepLedger, ns=range(2, 13)):
    """rk-supp = dim FGf for every {0,1}-valued f on Z_n over GF(p), p = 1 mod n."""
    for n in ns:
        g = _cyclic(n)
        fc = PrimeField(smallest_prime_1_mod(n))
        xs = regular_gset(g)
        ds = build_dual_set(xs, abelian_characters(g, fc))
        for bits in itertools.product((0, 1), repeat=n):
            if not any(bits):
                continue
            f = FunctionOnX.from_values(xs, fc, bits)
            ft = fourier_transform(f, ds)
            ok = rank_support(ft) == dim_FGf(f) == support_size(ft)
            ledger.tally("rk_supp_dim_cyclic", ok)
            if not ok:
                ledger.violations.append({"check": "rk_supp_dim_cyclic", "group": g.name,
                                          "field": fc.spec, "values": f.to_json()})


def random_function(xs: GSet, fc: FieldContext, rng: random.Random) -> FunctionOnX:
    while True:
        k = rng.randint(1, xs.size)
        pts = set(rng.sample(range(xs.size), k))
        f = FunctionOnX(xs, fc, tuple(random_element(fc, rng) if x in pts else fc(0)
                                      for x in xs.points))
        if not f.is_zero():
            return f


def s3_dual_sets() -> list[DualSet]:
    bundle = builtin_bundle("S3_Qzeta3")
    g = bundle.group
    from .gset import natural_gset

    return [build_dual_set(natural_gset(g), bundle), build_dual_set(regular_gset(g), bundle)]


def rk_supp_s3_suite(ledger: SweepLedger, samples: int, seed: int):
    """Random f over Q lifted into Q(zeta_3); rk-supp = dim on both S3 sets."""
    from .fields import Rationals

    q = Rationals()
    rng = random.Random(seed)
    for ds in s3_dual_sets():
        for _ in range(samples):
            f = random_function(ds.gset, q, rng)
            ok = rank_support(fourier_transform(f, ds)) == dim_FGf(f)
            ledger.tally("rk_supp_dim_s3", ok)
            if not ok:
                ledger.violations.append({"check": "rk_supp_dim_s3", "action": ds.gset.kind,
                                          "values": f.to_json()})


def all_dual_sets() -> list[DualSet]:
    """S3 natural/regular with the bundle; regular sets of the abelian groups of order <= 8."""
    out = s3_dual_sets()
    for name in ABELIAN_ORDER8:
        g = builtin_group(name)
        fc = PrimeField(smallest_prime_1_mod(g.exponent()))
        out.append(build_dual_set(regular_gset(g), abelian_characters(g, fc)))
    return out


def dual_set_suite(ledger: SweepLedger, samples: int, seed: int):
    rng = random.Random(seed)
    for ds in all_dual_sets():
        ledger.tally("dual_set_basis", bool(evaluation_determinant(ds)))
        ledger.tally("dual_set_transformation_law", transformation_law_holds(ds))
        for _ in range(samples):
            f = random_function(ds.gset, ds.field, rng)
            ok = equivariance_check(f, ds)
            ledger.tally("fourier_equivariance", ok)
            if not ok:
                ledger.violations.append({"check": "fourier_equivariance", "group": ds.gset.group.name,
                                          "values": f.to_json()})


def chebotarev_suite(ledger: SweepLedger, samples: int, seed: int, primes=(2, 3, 5, 7)):
    rng = random.Random(seed)
    for p in primes:
        ledger.tally("chebotarev_minors", bool(chebotarev_minor_check(p)))
        try:
            tao_bound_check(p, samples, rng)
            ledger.tally("additive_bound", True, samples)
        except Violation as exc:
            ledger.tally("additive_bound", False)
            ledger.violations.append({"check": "additive_bound", "p": p, "message": str(exc)})


def _random_subset(rng: random.Random, universe, lo: int = 0) -> tuple[int, ...]:
    universe = list(universe)
    k = rng.randint(lo, len(universe))
    return tuple(sorted(rng.sample(universe, k)))


def _structural_instance(ledger: SweepLedger, xs: GSet, x0: int, s, a, b):
    g = xs.group
    # three-way closure criteria (raises on disagreement)
    try:
        is_x0_closed(xs, x0, a)
        ledger.tally("closure_three_way", True)
    except Violation:
        ledger.tally("closure_three_way", False)
    closed_a = tuple(sorted(set(g.product_set(a, [x for x in g.elements
                                                  if xs.action[x][x0] == x0]))))
    closed_b = tuple(sorted(set(g.product_set(b, [x for x in g.elements
                                                  if xs.action[x][x0] == x0]))))
    ledger.tally("closure_laws", closure_law_check(xs, x0, closed_a, b).all()
                 and closure_law_check(xs, x0, closed_a, closed_b).all())
    if x0 in s:
        ledger.tally("block_lemma", block_lemma_check(xs, x0, s).all())
        if len(s) < xs.size:
            try:
                complement_cover_check(xs, x0, s)
                ledger.tally("complement_cover", True)
            except Violation:
                ledger.tally("complement_cover", False)
    if 0 < len(s) < xs.size:
        try:
            translate_cover_criterion(xs, s, a)
            ledger.tally("translate_cover", True)
        except Violation:
            ledger.tally("translate_cover", False)


def structural_suite(ledger: SweepLedger, samples: int, seed: int):
    """Random (G, X, x0, S, A, B) instances plus exhaustive small cases."""
    rng = random.Random(seed)
    pool = []
    for name in ORDER8_GROUPS:
        g = builtin_group(name)
        for xs in transitive_actions(g):
            pool.append(xs)
    pool = [xs for xs in pool if xs.size > 1]
    for _ in range(samples):
        # nonempty proper S so every lemma sees each random instance
        xs = rng.choice(pool)
        g = xs.group
        s = tuple(sorted(rng.sample(list(xs.points), rng.randint(1, xs.size - 1))))
        x0 = rng.choice(s)
        a = _random_subset(rng, g.elements)
        b = _random_subset(rng, g.elements)
        _structural_instance(ledger, xs, x0, s, a, b)
    from .gset import natural_gset

    s3 = builtin_group("S3")
    z6 = builtin_group("Z6")
    for xs in [natural_gset(s3), regular_gset(s3), regular_gset(z6)]:
        g = xs.group
        subsets_g = [c for k in range(g.order + 1) for c in itertools.combinations(g.elements, k)]
        x0 = 0
        for k in range(1, xs.size + 1):
            for s in itertools.combinations(xs.points, k):
                for y in s:
                    ledger.tally("block_lemma", block_lemma_check(xs, y, s).all())
                    if len(s) < xs.size:
                        complement_cover_check(xs, y, s)
                        ledger.tally("complement_cover", True)
                if len(s) < xs.size:
                    for a in subsets_g:
                        translate_cover_criterion(xs, s, a)
                    ledger.tally("translate_cover", True, len(subsets_g))
        for a in subsets_g:
            is_x0_closed(xs, x0, a)
        ledger.tally("closure_three_way", True, len(subsets_g))
        closed = [a for a in subsets_g if is_x0_closed(xs, x0, a)]
        for a in closed:
            for b in closed:
                ledger.tally("closure_laws", closure_law_check(xs, x0, a, b).all())


def verify_lemma_suite(cfg: Optional[SweepConfig] = None, seed: int = 0, suites=None,
                       structural_samples: int = 200, s3_samples: int = 1000,
                       fourier_samples: int = 100, tao_samples: int = 100) -> SweepLedger:
    seed = cfg.seed if cfg is not None else seed
    suites = set(suites or ["structural", "rk_supp", "fourier", "chebotarev", "atlas"])
    ledger = SweepLedger({"suites": sorted(suites), "seed": seed})
    start = time.perf_counter()
    if "structural" in suites:
        structural_suite(ledger, structural_samples, seed)
    if "rk_supp" in suites:
        rk_supp_cyclic_suite(ledger)
        rk_supp_s3_suite(ledger, s3_samples, seed)
    if "fourier" in suites:
        dual_set_suite(ledger, fourier_samples, seed)
    if "chebotarev" in suites:
        chebotarev_suite(ledger, tao_samples, seed)
    if "atlas" in suites:
        for entry in donoho_stark_atlas():
            ledger.tally("donoho_stark_atlas", entry.ok)
            if not entry.ok:
                ledger.violations.append({"check": "donoho_stark_atlas", **entry.to_json()})
    ledger.elapsed = time.perf_counter() - start
    return ledger


# ---------------------------------------------------------------------------
# equality atlas for |supp f| |supp f^| >= |G| on abelian groups

@dataclass
class AtlasEntry:
    group: str
    field: str
    found: int
    family: int
    missing_from_family: list  # equality functions not of the form c chi I_{gamma H}
    missing_from_search: list  # family members the search did not find
    below_bound: list  # functions with |supp f| |supp f^| < |G| (must be empty)

    @property
    def ok(self) -> bool:
        return not (self.missing_from_family or self.missing_from_search or self.below_bound)

    def to_json(self) -> dict:
        return {"group": self.group, "field": self.field, "found": self.found, "family": self.family,
                "missing_from_family": self.missing_from_family,
                "missing_from_search": self.missing_from_search, "below_bound": self.below_bound}


def coset_character_family(g: Group, fc: FieldContext) -> set[tuple]:
    """Payload tuples of all c chi I_{gamma H}."""
    from .groups import left_cosets

    chars = homs_to_units(g, fc)
    units = [v for v in elements(fc) if v]
    out = set()
    for h in all_subgroups(g):
        for coset in left_cosets(g, h):
            cs = set(coset)
            for chi in chars:
                base = [chi(a).payload if a in cs else fc.zero() for a in g.elements]
                for c in units:
                    out.add(tuple(fc.mul(c.payload, v) for v in base))
    return out


def equality_functions(g: Group, fc: FieldContext, ds: DualSet) -> tuple[set[tuple], list]:
    """Every f with |supp f| |supp f^| = |G|, found by solving for each support pair.

    For supports S and T with |S||T| = |G| the functions with supp f in S and
    f^ vanishing off T form a subspace; all of its nonzero elements are
    enumerated and their supports measured directly.
    """
    n = g.order
    lams = [vec for *_, vec in ds.functions()]
    units = [v.payload for v in elements(fc)]
    found, below = set(), []
    for k in range(1, n + 1):
        if n % k:
            continue
        for s in itertools.combinations(range(n), k):
            for t in itertools.combinations(range(len(lams)), n // k):
                tset = set(t)
                rows = [[lams[j][x] for x in s] for j in range(len(lams)) if j not in tset]
                basis = nullspace(fc, rows, ncols=k)
                for coeffs in itertools.product(units, repeat=len(basis)):
                    vec = [fc.zero()] * k
                    for c, b in zip(coeffs, basis):
                        vec = [fc.add(v, fc.mul(c, w)) for v, w in zip(vec, b)]
                    if all(fc.is_zero(v) for v in vec):
                        continue
                    full = [fc.zero()] * n
                    for x, v in zip(s, vec):
                        full[x] = v
                    f = FunctionOnX.from_payloads(ds.gset, fc, full)
                    prod = len(support(f)) * support_size(fourier_transform(f, ds))
                    if prod < n:
                        below.append(f.to_json())
                    elif prod == n:
                        found.add(tuple(full))
    return found, below


def donoho_stark_atlas(names=ABELIAN_ORDER8) -> list[AtlasEntry]:
    out = []
    for name in names:
        g = builtin_group(name)
        fc = PrimeField(smallest_prime_1_mod(g.exponent()))
        ds = build_dual_set(regular_gset(g), abelian_characters(g, fc))
        found, below = equality_functions(g, fc, ds)
        family = coset_character_family(g, fc)
        for vals in sorted(found & family)[:: max(1, len(found) // 16)]:
            f = FunctionOnX.from_payloads(ds.gset, fc, vals)
            ledger = donoho_stark_check(g, fc, f)
            if ledger.decomposition is None or ledger.decomposition.rebuild(f.gset) != f:
                raise Violation(f"decomposition round trip failed for {f}")

        def fmt(v):
            return [FieldValue(fc, x).to_json() for x in v]

        out.append(AtlasEntry(g.name, fc.spec, len(found), len(family),
                              [fmt(v) for v in sorted(found - family)],
                              [fmt(v) for v in sorted(family - found)], below))
    return out
