import math

import numpy as np
import pytest

from multigme import catalog
from multigme.bounds import upper_bound
from multigme.tensor_core import contract_full, frobenius_norm

WITH_TENSOR = [e for e in catalog.entries() if e.tensor is not None]


def test_listing_size():
    assert len(catalog.names()) >= 13


@pytest.mark.parametrize("entry", WITH_TENSOR, ids=lambda e: e.name)
def test_entries_normalized_and_below_bound(entry):
    assert entry.tensor.dims == entry.dims
    assert abs(frobenius_norm(entry.tensor) - 1) <= 1e-12
    assert entry.expected_gme <= entry.expected_bound + 5e-4


@pytest.mark.parametrize("entry", catalog.entries(), ids=lambda e: e.name)
def test_reported_bound_matches_formula(entry):
    assert upper_bound(entry.dims) == pytest.approx(entry.expected_bound, abs=5e-5)


@pytest.mark.parametrize(
    "name, n_terms",
    [
        ("w3", 3), ("cluster4", 6), ("ame5", 8), ("qutrit_ghz", 3), ("dicke_qutrit", 6),
        ("qutrit4", 9), ("ququart4", 16), ("het223", 6), ("het233", 6), ("het224", 4),
        ("uniform2_3x5_2", 18),
    ],
)
def test_term_counts(name, n_terms):
    t = catalog.get(name).tensor
    nz = np.abs(t.amplitudes) > 0
    assert nz.sum() == n_terms
    # every printed state here has equal-magnitude amplitudes
    mags = np.abs(t.amplitudes[nz])
    np.testing.assert_allclose(mags, 1 / math.sqrt(n_terms), atol=1e-15)


def test_ghz():
    e = catalog.ghz(3)
    assert e.expected_gme == pytest.approx(math.sqrt(2 - 2 / math.sqrt(2)), abs=5e-5)
    assert catalog.ghz(2).expected_gme == pytest.approx(upper_bound((2, 2)), abs=5e-5)
    assert contract_full(catalog.ghz(4).tensor, [[1, 0]] * 4) == pytest.approx(1 / math.sqrt(2))
    assert catalog.get("ghz:7").dims == (2,) * 7
    with pytest.raises(ValueError):
        catalog.ghz(1)


def test_qutrit_ghz_overlap():
    t = catalog.qutrit_ghz().tensor
    assert contract_full(t, [[1, 0, 0]] * 3) == pytest.approx(1 / math.sqrt(3))


def test_external_entry_has_no_tensor():
    e = catalog.get("qubit6_ac13")
    assert e.external and e.tensor is None
    assert e.expected_gme == 1.1927
    with pytest.raises(ValueError):
        e.ket_text()


def test_unknown_names():
    with pytest.raises(KeyError):
        catalog.get("nope")
    with pytest.raises(KeyError):
        catalog.get("ghz:x")
    with pytest.raises(KeyError):
        catalog.paper_closest_product("ghz:3")


def test_closest_examples():
    w = catalog.paper_closest_product("w3")
    phi = np.array([-0.7885 + 0.2119j, 0.4996 + 0.2894j])
    np.testing.assert_allclose(w[0], phi / np.linalg.norm(phi))
    assert all(np.array_equal(w[0], f) for f in w.factors)
    assert len(catalog.paper_closest_product("ame5")) == 5
    q = catalog.paper_closest_product("qutrit4")
    np.testing.assert_allclose(q[0], np.ones(3) / math.sqrt(3))


@pytest.mark.parametrize("name", sorted(catalog.PAPER_CLOSEST))
def test_closest_overlap_matches_reported_gme(name):
    e = catalog.get(name)
    ov = abs(contract_full(e.tensor, catalog.paper_closest_product(name)))
    assert ov == pytest.approx((2 - e.expected_gme**2) / 2, abs=2e-3)
