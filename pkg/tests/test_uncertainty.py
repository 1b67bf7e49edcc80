import pytest
from hypothesis import given, strategies as st

from actionuncertainty.errors import FullSupport, InputError, NotAbelian, ZeroFunction
from actionuncertainty.fields import PrimeField, field_from_spec
from actionuncertainty.fourier import abelian_characters, build_dual_set
from actionuncertainty.groups import Subgroup, all_subgroups, homs_to_units, left_cosets, trivial_character
from actionuncertainty.gset import regular_gset, right_stabilizer
from actionuncertainty.harness import smallest_prime_1_mod, transitive_actions
from actionuncertainty.io import builtin_bundle, builtin_group
from actionuncertainty.permmodule import FunctionOnX, dim_FGf, support, translate
from actionuncertainty.uncertainty import (EqualityCertificate, analyze, classify_equality_classical,
                                           coset_decomposition, coset_indicator_function,
                                           donoho_stark_check, greedy_translate_bound,
                                           rank_support_analyze, regular_analyze, validate_certificate)

from conftest import regular_function

GROUPS = ["Z2", "Z3", "Z4", "Z6", "Z2xZ2", "S3", "D4", "Q8", "Z2xZ4"]


@st.composite
def functions(draw, specs=("GF(2)", "GF(3)", "GF(5)", "Q")):
    g = builtin_group(draw(st.sampled_from(GROUPS)))
    xs = draw(st.sampled_from(transitive_actions(g)))
    fc = field_from_spec(draw(st.sampled_from(specs)))
    lo, hi = (0, fc.order - 1) if fc.is_finite else (-3, 3)
    vals = draw(st.lists(st.integers(lo, hi), min_size=xs.size, max_size=xs.size))
    f = FunctionOnX.from_values(xs, fc, vals)
    return FunctionOnX.delta(xs, fc, 0) if f.is_zero() else f


def test_worked_example_report(worked_f):
    rep = analyze(worked_f)
    assert (rep.supp_size, rep.dim, rep.block_size) == (2, 2, 1)
    assert (rep.lhs, rep.rhs_sharp, rep.rhs_classical) == (4, 4, 3)
    assert rep.sharp_equality and not rep.classical_equality


def test_constant_and_delta_reports(s3_natural, q):
    rep = analyze(FunctionOnX.constant(s3_natural, q, 2))
    assert (rep.supp_size, rep.dim, rep.block_size, rep.lhs, rep.rhs_sharp) == (3, 1, 3, 3, 3)
    for name in ["Z5", "S3", "Q8"]:
        xs = regular_gset(builtin_group(name))
        rep = analyze(FunctionOnX.delta(xs, q, 0))
        n = xs.size
        assert (rep.supp_size, rep.dim, rep.block_size) == (1, n, 1)
        assert rep.lhs == rep.rhs_sharp == rep.rhs_classical == n


def test_zero_function_rejected(s3_natural, q):
    with pytest.raises(ZeroFunction):
        analyze(FunctionOnX.from_values(s3_natural, q, [0, 0, 0]))


def test_base_point_must_lie_in_support(worked_f):
    with pytest.raises(InputError):
        analyze(worked_f, x0=2)


def test_regular_examples():
    rep = regular_analyze(regular_function("Z4", "GF(2)", [1, 1, 0, 0]))
    assert (rep.supp_size, rep.dim, rep.block_size, rep.lhs, rep.rhs_sharp) == (2, 3, 1, 6, 5)
    rep = regular_analyze(regular_function("Z2", "GF(2)", [1, 1]))
    assert (rep.supp_size, rep.dim, rep.block_size, rep.lhs, rep.rhs_sharp) == (2, 1, 2, 2, 2)
    chi = [pow(3, a, 7) for a in range(6)]
    rep = regular_analyze(regular_function("Z6", "GF(7)", chi))
    assert (rep.supp_size, rep.dim, rep.block_size) == (6, 1, 6)
    assert rep.classical_equality and rep.sharp_equality


def test_greedy_examples(worked_f, s3_natural, q):
    s3 = worked_f.group
    gr = greedy_translate_bound(worked_f)
    assert gr.t == 2 == gr.dim and gr.cover_bound == 3
    assert gr.chosen == (s3.element_from_cycles("(123)"), s3.identity)
    gr = greedy_translate_bound(regular_function("Z3", "Q", [1, 0, 0]))
    assert gr.t == 3
    with pytest.raises(FullSupport):
        greedy_translate_bound(FunctionOnX.constant(s3_natural, q))


def test_classification_examples(worked_f, s3_natural, q):
    s3 = worked_f.group
    assert not classify_equality_classical(worked_f)
    cert = classify_equality_classical(FunctionOnX.delta(s3_natural, q, 0).scale(5))
    assert isinstance(cert, EqualityCertificate)
    assert cert.lifted_subgroup.elements == tuple(sorted([s3.identity, s3.element_from_cycles("(23)")]))
    assert cert.scalar == q(5)
    assert all(v == q(1) for v in cert.character.values.values())


def test_coset_indicator_examples(q):
    s3 = builtin_group("S3")
    triv = Subgroup(s3, (s3.identity,))
    f = coset_indicator_function(s3, triv, s3.identity, trivial_character(triv, q), 1, q)
    assert f == FunctionOnX.delta(regular_gset(s3), q, s3.identity)

    z6 = builtin_group("Z6")
    gf7 = PrimeField(7)
    h = Subgroup(z6, (0, 3))
    f = coset_indicator_function(z6, h, 0, trivial_character(h, gf7), 1, gf7)
    assert f.to_json() == ["1", "0", "0", "1", "0", "0"]
    rep = analyze(f)
    assert rep.dim == 3 and rep.lhs == 6 == rep.rhs_classical

    a3 = next(k for k in all_subgroups(s3) if k.order == 3)
    f = coset_indicator_function(s3, a3, s3.element_from_cycles("(12)"), trivial_character(a3, q), 1, q)
    rep = analyze(f)
    assert (rep.supp_size, rep.dim, rep.lhs) == (3, 2, 6) and rep.classical_equality


def test_coset_indicator_rejects_zero_scalar(q):
    z2 = builtin_group("Z2")
    h = Subgroup(z2, (0,))
    with pytest.raises(InputError):
        coset_indicator_function(z2, h, 0, trivial_character(h, q), 0, q)


def test_rank_support_examples(worked_f):
    ds = build_dual_set(worked_f.gset, builtin_bundle("S3_Qzeta3"))
    assert rank_support_analyze(worked_f, ds).rank_support == 2
    z6 = builtin_group("Z6")
    ds = build_dual_set(regular_gset(z6), abelian_characters(z6, PrimeField(7)))
    rep = rank_support_analyze(regular_function("Z6", "GF(7)", [1, 1, 0, 0, 0, 0]), ds)
    assert (rep.rank_support, rep.supp_size, rep.lhs, rep.rhs_sharp) == (5, 2, 10, 7)
    for n in [3, 4, 5]:
        g = builtin_group(f"Z{n}")
        fc = PrimeField(smallest_prime_1_mod(n))
        ds = build_dual_set(regular_gset(g), abelian_characters(g, fc))
        rep = rank_support_analyze(FunctionOnX.constant(ds.gset, fc), ds)
        assert rep.rank_support == 1 and rep.lhs == n


def test_donoho_stark_examples():
    z6 = builtin_group("Z6")
    gf7 = PrimeField(7)
    led = donoho_stark_check(z6, gf7, regular_function("Z6", "GF(7)", [1, 1, 0, 0, 0, 0]))
    assert (led.lhs, led.rhs_sharp, led.rhs_classical) == (10, 7, 6)
    assert led.decomposition is None
    chi = regular_function("Z6", "GF(7)", [pow(3, a, 7) for a in range(6)])
    led = donoho_stark_check(z6, gf7, chi)
    assert (led.supp, led.supp_hat) == (6, 1) and led.classical_equality
    assert led.decomposition.rebuild(chi.gset) == chi
    with pytest.raises(NotAbelian):
        donoho_stark_check(builtin_group("S3"), field_from_spec("Q(zeta_6)"),
                           FunctionOnX.delta(regular_gset(builtin_group("S3")), field_from_spec("Q(zeta_6)"), 0))


@pytest.mark.parametrize("name", ["Z4", "Z6", "Z2xZ2", "Z2xZ4"])
def test_family_round_trip(name):
    g = builtin_group(name)
    fc = PrimeField(smallest_prime_1_mod(g.exponent()))
    chars = homs_to_units(g, fc)
    for h in all_subgroups(g):
        for coset in left_cosets(g, h):
            chi = chars[len(coset) % len(chars)]
            eta = chi.restrict(h)
            f = coset_indicator_function(g, h, coset[0], eta, 2, fc)
            led = donoho_stark_check(g, fc, f)
            assert led.classical_equality
            dec = coset_decomposition(f)
            assert dec is not None and dec.rebuild(f.gset) == f


# --- properties -------------------------------------------------------------

@given(functions())
def test_sandwich_and_greedy(f):
    rep = analyze(f)
    assert rep.rhs_classical <= rep.rhs_sharp <= rep.lhs
    if rep.supp_size < f.gset.size:
        gr = greedy_translate_bound(f)
        assert gr.t <= rep.dim
        assert f.gset.size <= gr.t * rep.supp_size - rep.supp_size + rep.block_size


@given(functions())
def test_classification_equivalence(f):
    rep = analyze(f)
    cert = classify_equality_classical(f)
    assert isinstance(cert, EqualityCertificate) == (rep.lhs == f.gset.size)
    if cert:
        validate_certificate(f, cert)


@given(functions(), st.data())
def test_report_invariant_under_translation_and_scaling(f, data):
    g = f.group
    a = data.draw(st.sampled_from(list(g.elements)))
    c = data.draw(st.integers(1, 4))
    if f.field.is_finite and c % f.field.characteristic == 0:
        c = 1
    rep = analyze(f)
    moved = translate(a, f.scale(c))
    rep2 = analyze(moved, f.gset.act(a, rep.x0))
    assert rep.bound_values() == rep2.bound_values()


@given(st.sampled_from(["Z2", "Z3", "Z4", "Z6", "Z2xZ2", "Z2xZ4", "Z2^3"]), st.data())
def test_coset_indicators_reach_classical_equality(name, data):
    g = builtin_group(name)
    fc = PrimeField(smallest_prime_1_mod(g.exponent()))
    h = data.draw(st.sampled_from(all_subgroups(g)))
    eta = data.draw(st.sampled_from(homs_to_units(h, fc)))
    gamma = data.draw(st.sampled_from(list(g.elements)))
    c = data.draw(st.integers(1, fc.p - 1))
    f = coset_indicator_function(g, h, gamma, eta, c, fc)
    rep = analyze(f)
    assert rep.classical_equality
    assert support(f) == tuple(sorted(g.mul(gamma, b) for b in h.elements))
    assert right_stabilizer(g, support(f)).order == h.order
    assert dim_FGf(f) * h.order == g.order
