from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tbtop.digits import PeriodicDigits, const
from tbtop.elements import DirectSumElement, OrderSchema, canonicalize_pruefer
from tbtop.indexsets import EVENS, FAC, FiniteSet, ODDS, Residue, SubsetOfFac
from tbtop.sequences import (
    AffineSupport,
    BasisDirectSum,
    ComplementSupport,
    ExplicitPrefix,
    FactorialPruefer,
    IntegerGrowth,
    SchemaViolation,
    classify_growth,
    generate,
    sequence_from_json,
    validate_thm51,
)

DSUM2 = OrderSchema.constant(2)
ODD_BASIS = BasisDirectSum(DSUM2, AffineSupport(2, 1), EVENS)


def flags(check):
    return check.structural, check.prefix_verified


def growth(report):
    return report.raczkowski, report.barbieri


def test_generate_examples():
    fp = FactorialPruefer(2, const(1))
    assert generate(fp, 4) == [canonicalize_pruefer(2, 1, n) for n in (1, 2, 6, 24)]
    assert generate(ODD_BASIS, 3) == [DirectSumElement.basis(DSUM2, k) for k in (1, 3, 5)]
    assert [x.value for x in generate(IntegerGrowth("factorial"), 5)] == [1, 2, 6, 24, 120]


def test_factorial_pruefer_numerators_checked():
    with pytest.raises(ValueError):
        FactorialPruefer(2, const(0))
    with pytest.raises(ValueError):
        FactorialPruefer(3, PeriodicDigits((1, 3)))
    with pytest.raises(ValueError):
        FactorialPruefer(4, const(1))


def test_support_meeting_S_rejected():
    with pytest.raises(ValueError):
        BasisDirectSum(DSUM2, AffineSupport(2, 0), EVENS)


def test_complement_support():
    seq = BasisDirectSum(DSUM2, ComplementSupport(), SubsetOfFac())
    ks = [x.indices()[0] for x in generate(seq, 6)]
    assert ks == [0, 3, 4, 5, 7, 8]
    assert all(seq.preimage(k) == n for n, k in enumerate(ks))
    assert seq.preimage(6) is None


def test_validate_examples():
    assert flags(validate_thm51(ODD_BASIS, EVENS, 20)) == (True, True)
    e = lambda k: DirectSumElement.basis(DSUM2, k)
    bad = ExplicitPrefix((e(1), e(1), e(2)))
    assert flags(validate_thm51(bad, EVENS, 3)) == (False, False)
    good = ExplicitPrefix(tuple(e(2 * n + 1) for n in range(10)))
    assert flags(validate_thm51(good, EVENS, 10)) == (False, True)


def test_validate_needs_nonzero_values():
    seq = BasisDirectSum(DSUM2, AffineSupport(2, 1), EVENS, value=2)
    assert flags(validate_thm51(seq, EVENS, 5)) == (False, False)
    seq = BasisDirectSum(OrderSchema.constant(2, 2), AffineSupport(2, 1), EVENS, value=2)
    assert flags(validate_thm51(seq, EVENS, 5)) == (True, True)


def test_validate_finite_S_not_structural():
    seq = BasisDirectSum(DSUM2, AffineSupport(2, 1), FiniteSet((0, 2)))
    assert flags(validate_thm51(seq, FiniteSet((0, 2)), 5)) == (False, True)


def test_growth_examples():
    assert growth(classify_growth(IntegerGrowth("factorial"), 10)) == (True, True)
    assert growth(classify_growth(IntegerGrowth("exponential", base=2), 10)) == (False, False)
    report = classify_growth(IntegerGrowth("superexp", base=2), 8)
    assert report.barbieri
    assert report.ratios[0] == 8 and report.ratios[2] == 2**7
    assert growth(classify_growth(IntegerGrowth("affine", a=3, b=1), 10)) == (False, False)


def test_growth_prefix_evidence():
    seq = IntegerGrowth("prefix", terms=(1, 3, 12, 60), promise="raczkowski")
    rep = classify_growth(seq, 4)
    assert rep.basis == "prefix" and rep.raczkowski
    with pytest.raises(SchemaViolation):
        generate(IntegerGrowth("prefix", terms=(1, 2, 3), promise="raczkowski"), 3)
    with pytest.raises(ValueError):
        classify_growth(IntegerGrowth("prefix", terms=(0, 1, 2)), 3)


def test_json_roundtrip():
    seqs = [
        FactorialPruefer(3, PeriodicDigits((1, 2))),
        ODD_BASIS,
        BasisDirectSum(DSUM2, ComplementSupport(), FAC),
        IntegerGrowth("superexp", base=3),
        IntegerGrowth("prefix", terms=(1, 5, 30), promise="barbieri"),
        ExplicitPrefix((DirectSumElement.basis(DSUM2, 3),)),
    ]
    for s in seqs:
        assert sequence_from_json(s.to_json()) == s


affine_seqs = st.builds(
    lambda a, b, mod: BasisDirectSum(DSUM2, AffineSupport(a * mod, b), Residue(mod, (b + 1) % mod)),
    st.integers(1, 4), st.integers(0, 20), st.integers(2, 5))

any_seq = st.one_of(
    affine_seqs,
    st.builds(lambda p, c: FactorialPruefer(p, const(c % (p - 1) + 1)), st.sampled_from([2, 3, 5]), st.integers(0, 9)),
    st.sampled_from([IntegerGrowth("factorial"), IntegerGrowth("exponential", base=3),
                     IntegerGrowth("superexp"), IntegerGrowth("affine", a=2, b=5)]),
)


@given(any_seq, st.integers(1, 4), st.integers(0, 3))
def test_prefix_coherence(seq, m, extra):
    assert generate(seq, m + extra)[:m] == generate(seq, m)


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(1, 6), min_size=1, max_size=3), st.integers(1, 7))
def test_factorial_pruefer_faithful(p, cycle, count):
    seq = FactorialPruefer(p, PeriodicDigits(tuple((c - 1) % (p - 1) + 1 for c in cycle)))
    terms = generate(seq, count)
    assert len(set(terms)) == len(terms)


@given(affine_seqs, st.integers(1, 30))
def test_structural_implies_prefix(seq, prefix):
    check = validate_thm51(seq, seq.S, prefix)
    if check.structural:
        assert check.prefix_verified


@given(st.integers(1, 5), st.integers(0, 10), st.integers(1, 30))
def test_preimage_inverts_support(a, b, n):
    seq = BasisDirectSum(DSUM2, AffineSupport(2 * a, 2 * b + 1), EVENS)
    k = seq.term(n).indices()[0]
    assert seq.preimage(k) == n
    assert seq.preimage(k + 1) is None
