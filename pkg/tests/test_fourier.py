import copy
import json
import random

import pytest
from hypothesis import given, strategies as st

from actionuncertainty.errors import (CapExceeded, FieldMismatch, NoSuchRoot, NotAbelian,
                                      NotHomomorphism, NotPrime, NotSemisimple, OrthogonalityFailure,
                                      WrongDegreeSum)
from actionuncertainty.fields import PrimeField, Rationals, field_from_spec
from actionuncertainty.fourier import (abelian_characters, act_on_transform, build_dual_set,
                                       bundle_from_json, chebotarev_minor_check, equivariance_check,
                                       evaluation_determinant, fourier_transform, min_supp_witness,
                                       rank_support, support_size, tao_bound_check,
                                       transformation_law_holds)
from actionuncertainty.gset import natural_gset, regular_gset
from actionuncertainty.harness import all_dual_sets, smallest_prime_1_mod
from actionuncertainty.io import DATA_DIR, builtin_bundle, builtin_group
from actionuncertainty.linalg import determinant_payloads
from actionuncertainty.permmodule import FunctionOnX, dim_FGf, translate

BUNDLE_JSON = json.loads((DATA_DIR / "bundles" / "S3_Qzeta3.json").read_text())
DUAL_SETS = all_dual_sets()


@pytest.fixture(scope="module")
def s3_bundle():
    return builtin_bundle("S3_Qzeta3")


@pytest.fixture(scope="module")
def z6_gf7():
    g = builtin_group("Z6")
    return build_dual_set(regular_gset(g), abelian_characters(g, PrimeField(7)))


def random_f(ds, rng):
    fc = Rationals() if ds.field.characteristic == 0 else ds.field
    vals = [rng.randint(-3, 3) if rng.random() < 0.7 else 0 for _ in ds.gset.points]
    f = FunctionOnX.from_values(ds.gset, fc, vals)
    return FunctionOnX.delta(ds.gset, fc, 0) if f.is_zero() else f


def test_abelian_characters():
    b = abelian_characters(builtin_group("Z6"), PrimeField(7))
    got = {tuple(ir.entry(a, 0, 0) for a in range(6)) for ir in b.irreps}
    assert got == {tuple(pow(3, j * a, 7) for a in range(6)) for j in range(6)}
    z2 = abelian_characters(builtin_group("Z2"), Rationals())
    assert {tuple(int(ir.entry(a, 0, 0)) for a in range(2)) for ir in z2.irreps} == {(1, 1), (1, -1)}
    v4 = abelian_characters(builtin_group("Z2xZ2"), PrimeField(5))
    assert len(v4.irreps) == 4
    assert all(ir.entry(a, 0, 0) in (1, 4) for ir in v4.irreps for a in range(4))


def test_abelian_characters_rejects_s3():
    with pytest.raises(NotAbelian):
        abelian_characters(builtin_group("S3"), field_from_spec("Q(zeta_6)"))


def test_s3_bundle_accepted(s3_bundle):
    assert s3_bundle.degrees == (1, 1, 2)
    assert sum(d * d for d in s3_bundle.degrees) == 6


def test_bundle_missing_irrep():
    g = builtin_group("S3")
    with pytest.raises(WrongDegreeSum):
        bundle_from_json(g, field_from_spec("Q(zeta_3)"), BUNDLE_JSON["irreps"][:2])


def test_bundle_not_homomorphism():
    g = builtin_group("S3")
    irreps = copy.deepcopy(BUNDLE_JSON["irreps"])
    t12 = str(g.element_from_cycles("(12)"))
    # rho((12)) = diag(1, 2) squares to diag(1, 4)
    irreps[2]["matrices"][t12] = [[["1", "0"], ["0", "0"]], [["0", "0"], ["2", "0"]]]
    with pytest.raises(NotHomomorphism):
        bundle_from_json(g, field_from_spec("Q(zeta_3)"), irreps)


def test_bundle_over_non_semisimple_field():
    trivial = {"degree": 1, "matrices": {str(a): [["1"]] for a in range(3)}}
    with pytest.raises(NotSemisimple):
        bundle_from_json(builtin_group("Z3"), PrimeField(3), [trivial] * 3)
    with pytest.raises(NoSuchRoot):
        abelian_characters(builtin_group("Z2"), PrimeField(2))


def test_bundle_fails_orthogonality():
    trivial = {"degree": 1, "matrices": {str(a): [["1"]] for a in range(2)}}
    with pytest.raises(OrthogonalityFailure):
        bundle_from_json(builtin_group("Z2"), Rationals(), [trivial] * 2)


def test_multiplicities(s3_bundle):
    s3 = builtin_group("S3")
    assert build_dual_set(natural_gset(s3), s3_bundle).multiplicities == (1, 0, 1)
    assert build_dual_set(regular_gset(s3), s3_bundle).multiplicities == (1, 1, 2)


def test_abelian_regular_dual_set_is_the_characters(z6_gf7):
    assert z6_gf7.multiplicities == (1,) * 6
    lams = {vec for *_, vec in z6_gf7.functions()}
    chars = {tuple(pow(3, j * a, 7) for a in range(6)) for j in range(6)}
    assert lams == chars


def test_transform_examples(z6_gf7):
    gf7 = PrimeField(7)
    f = FunctionOnX.from_values(z6_gf7.gset, gf7, [1, 1, 0, 0, 0, 0])
    ft = fourier_transform(f, z6_gf7)
    for (*_, lam), v in zip(z6_gf7.functions(), ft.values()):
        assert v.payload == (lam[0] + lam[1]) % 7
    assert sorted(v.payload for v in ft.values()) == sorted((1 + pow(3, j, 7)) % 7 for j in range(6))
    assert rank_support(ft) == 5
    zero = FunctionOnX.from_values(z6_gf7.gset, gf7, [0] * 6)
    assert rank_support(fourier_transform(zero, z6_gf7)) == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_all_ones_transform(n):
    g = builtin_group(f"Z{n}")
    fc = field_from_spec(f"Q(zeta_{n})")
    ds = build_dual_set(regular_gset(g), abelian_characters(g, fc))
    ft = fourier_transform(FunctionOnX.constant(ds.gset, Rationals()), ds)
    vals = ft.values()
    assert sorted(vals, key=lambda v: v.sort_key()) == sorted([fc(n)] + [fc(0)] * (n - 1),
                                                               key=lambda v: v.sort_key())
    assert rank_support(ft) == 1


def test_worked_example_transform(s3_bundle, worked_f):
    ds = build_dual_set(worked_f.gset, s3_bundle)
    ft = fourier_transform(worked_f, ds)
    assert rank_support(ft) == 2 == dim_FGf(worked_f)
    w = min_supp_witness(ft)
    assert w.nonzeros == (0, 0, 1) and w.weighted_count == 2
    t12 = worked_f.group.element_from_cycles("(12)")
    assert fourier_transform(translate(t12, worked_f), ds) == act_on_transform(t12, ft)


def test_transform_field_mismatch(worked_f, z6_gf7):
    f = FunctionOnX.from_values(z6_gf7.gset, PrimeField(5), [1, 0, 0, 0, 0, 0])
    with pytest.raises(FieldMismatch):
        fourier_transform(f, z6_gf7)


def test_min_supp_degenerate_blocks(z6_gf7):
    f = FunctionOnX.from_values(z6_gf7.gset, PrimeField(7), [1, 0, 0, 0, 0, 0])
    w = min_supp_witness(fourier_transform(f, z6_gf7))
    assert w.weighted_count == 6
    zero = FunctionOnX.from_values(z6_gf7.gset, PrimeField(7), [0] * 6)
    assert min_supp_witness(fourier_transform(zero, z6_gf7)).weighted_count == 0


@pytest.mark.parametrize("p, count", [(2, 5), (3, 19), (5, 251)])
def test_chebotarev(p, count):
    res = chebotarev_minor_check(p)
    assert res.all_nonzero and res.first_zero is None
    # the count excludes the empty minor that C(2p, p) includes
    assert res.minors_checked == count


def test_chebotarev_p2_minors():
    m = [[1, 1], [1, -1]]
    assert determinant_payloads(Rationals(), m) == -2


def test_chebotarev_errors():
    with pytest.raises(NotPrime):
        chebotarev_minor_check(4)
    with pytest.raises(CapExceeded):
        chebotarev_minor_check(11)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_additive_bound_samples(p):
    for s in tao_bound_check(p, 10, random.Random(p)):
        assert s.supp + s.supp_hat >= p + 1


@pytest.mark.parametrize("ds", DUAL_SETS, ids=lambda d: f"{d.gset.group.name}-{d.gset.kind}")
def test_dual_set_invariants(ds):
    assert sum(m * n for m, n in zip(ds.multiplicities, ds.bundle.degrees)) == ds.gset.size
    assert evaluation_determinant(ds)
    assert transformation_law_holds(ds)


@pytest.mark.parametrize("ds", DUAL_SETS, ids=lambda d: f"{d.gset.group.name}-{d.gset.kind}")
@given(seed=st.integers(0, 10 ** 6))
def test_rank_support_equals_dim(ds, seed):
    f = random_f(ds, random.Random(seed))
    ft = fourier_transform(f, ds)
    assert rank_support(ft) == dim_FGf(f)
    assert support_size(ft) >= rank_support(ft)
    assert equivariance_check(f, ds)


@given(seed=st.integers(0, 10 ** 6))
def test_transform_is_linear(z6_gf7, seed):
    rng = random.Random(seed)
    f, g = random_f(z6_gf7, rng), random_f(z6_gf7, rng)
    c = rng.randrange(7)
    lhs = fourier_transform(f.scale(c) + g, z6_gf7).values()
    fv, gv = fourier_transform(f, z6_gf7).values(), fourier_transform(g, z6_gf7).values()
    assert lhs == [a * c + b for a, b in zip(fv, gv)]


def test_splitting_primes():
    assert [smallest_prime_1_mod(n) for n in range(1, 13)] == [2, 3, 7, 5, 11, 7, 29, 17, 19, 11, 23, 13]
