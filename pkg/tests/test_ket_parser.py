import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multigme import catalog
from multigme.ket_parser import (
    ArityError,
    IndexRangeError,
    KetExpr,
    KetSyntaxError,
    NormalizationError,
    ZeroStateError,
    from_tensor,
    parse,
    parse_state,
    render,
    to_tensor,
)
from multigme.tensor_core import frobenius_norm

EX2 = (
    "1/sqrt(6)*(|0011>+|1100>) + exp(2i*pi/3)/sqrt(6)*(|0101>+|1010>)"
    " + exp(4i*pi/3)/sqrt(6)*(|0110>+|1001>)"
)


def test_w_state():
    e = parse("(|100> + |010> + |001>)/sqrt(3)")
    assert e.dims == (2, 2, 2)
    assert len(e.terms) == 3
    for c, _ in e.terms:
        assert c == pytest.approx(1 / math.sqrt(3), abs=1e-15)
    t, scale = to_tensor(e)
    assert scale == pytest.approx(1.0, abs=1e-15)
    expected = np.zeros((2, 2, 2))
    for idx in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        expected[idx] = 1 / math.sqrt(3)
    np.testing.assert_allclose(t.array, expected, atol=1e-15)


def test_cancellation_is_zero_state():
    with pytest.raises(ZeroStateError):
        parse("|00> - |00>")


def test_example2_phases():
    e = parse(EX2)
    assert len(e.terms) == 6
    coeffs = dict((idx, c) for c, idx in e.terms)
    w = cmath.exp(2j * math.pi / 3)
    assert coeffs[(0, 1, 0, 1)] == pytest.approx(w / math.sqrt(6), abs=1e-15)
    assert coeffs[(1, 0, 0, 1)] == pytest.approx(w**2 / math.sqrt(6), abs=1e-15)
    t, _ = to_tensor(e)
    np.testing.assert_allclose(t.array, catalog.cluster4().tensor.array, atol=1e-14)


def test_single_mode():
    t, scale = to_tensor(parse("|0>"))
    assert t.dims == (1,) and t.array[0] == 1 and scale == 1.0


def test_auto_normalize_reports_scale():
    t, scale = to_tensor(parse("|00>+|11>"))
    assert scale == pytest.approx(1 / math.sqrt(2))
    np.testing.assert_allclose(t.array, catalog.ghz(2).tensor.array, atol=1e-15)


def test_strict_policy():
    with pytest.raises(NormalizationError):
        to_tensor(parse("|00>+|11>"), normalize="strict")
    t, scale = to_tensor(parse("(|00>+|11>)/sqrt(2)"), normalize="strict")
    assert scale == 1.0 and abs(frobenius_norm(t) - 1) < 1e-12


def test_conjugation_site():
    t = parse_state("i|0>")
    assert t.array[0] == -1j
    assert t.amplitudes[0] == 1j


def test_comma_form_and_header():
    e = parse("dims: 12 2\n|11,1> + |0,0>  # comment")
    assert e.dims == (12, 2)
    assert [idx for _, idx in e.terms] == [(0, 0), (11, 1)]
    e = parse("dims: 2 3\n|00>")
    assert e.dims == (2, 3)


def test_dims_inferred():
    assert parse("|002> + |110>").dims == (2, 2, 3)


@pytest.mark.parametrize(
    "text, exc",
    [
        ("|00> + |000>", ArityError),
        ("dims: 2 2\n|02>", IndexRangeError),
        ("dims: 2 2 2\n|00>", ArityError),
        ("|00> +", KetSyntaxError),
        ("(|00>", KetSyntaxError),
        ("|0a>", KetSyntaxError),
        ("|00> $ |11>", KetSyntaxError),
        ("2 + |00>", KetSyntaxError),
        ("|00>*|11>", KetSyntaxError),
        ("sqrt(3)", KetSyntaxError),
        ("|00>/0", KetSyntaxError),
        ("foo(2)|00>", KetSyntaxError),
        ("", KetSyntaxError),
    ],
)
def test_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_syntax_error_position():
    with pytest.raises(KetSyntaxError) as info:
        parse("# header comment\n|00> +\n  + |11> $")
    assert info.value.line == 3
    assert info.value.col == 10


def test_unicode_ket_and_implicit_product():
    e = parse("2i |01⟩ - 0.5 exp(i pi)|10⟩")
    coeffs = dict((idx, c) for c, idx in e.terms)
    assert coeffs[(0, 1)] == 2j
    assert coeffs[(1, 0)] == pytest.approx(0.5, abs=1e-15)


coeff = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False).filter(lambda c: abs(c) > 1e-3)


@st.composite
def ket_exprs(draw):
    dims = tuple(draw(st.lists(st.integers(1, 12), min_size=1, max_size=4)))
    idxs = draw(
        st.lists(st.tuples(*[st.integers(0, d - 1) for d in dims]), min_size=1, max_size=8, unique=True)
    )
    terms = tuple(sorted(((draw(coeff), i) for i in idxs), key=lambda t: t[1]))
    return KetExpr(terms=terms, dims=dims)


@settings(max_examples=100, deadline=None)
@given(ket_exprs())
def test_render_roundtrip(e):
    back = parse(render(e))
    assert back.dims == e.dims
    assert back.terms == e.terms


@settings(max_examples=50, deadline=None)
@given(ket_exprs(), st.randoms(use_true_random=False))
def test_term_order_irrelevant(e, rnd):
    terms = list(e.terms)
    rnd.shuffle(terms)
    t1, _ = to_tensor(parse(render(KetExpr(terms=tuple(terms), dims=e.dims))))
    t2, _ = to_tensor(e)
    np.testing.assert_allclose(t1.array, t2.array, atol=1e-15)
    assert abs(frobenius_norm(t1) - 1) < 1e-12


def test_single_mode_large_index():
    e = parse("|11,> + |0,>")
    assert e.dims == (12,)


@pytest.mark.parametrize("name", [n for n in catalog.names() if n != "qubit6_ac13"])
def test_catalog_roundtrip(name):
    t = catalog.get(name).tensor
    back, _ = to_tensor(parse(render(from_tensor(t))))
    assert np.max(np.abs(back.array - t.array)) <= 1e-12
