import pytest
from hypothesis import given
from hypothesis import strategies as st

from equibrane.dims import brane_target_dim, dim_flat, dim_flat_punctured, formula_applies


@pytest.mark.parametrize("g", range(2, 11))
def test_dim_flat(g):
    assert dim_flat(g) == 6 * g - 6
    assert brane_target_dim(g) == 3 * g - 3


def test_dim_flat_rejects_low_genus():
    with pytest.raises(ValueError):
        dim_flat(1)


def test_worked_values():
    assert dim_flat_punctured(0, 6).value == 6
    assert dim_flat_punctured(0, 8).value == 10
    assert dim_flat_punctured(1, 0).exceptional


def test_exceptional_set():
    flagged = {(gm, n) for gm in range(6) for n in range(12) if dim_flat_punctured(gm, n).exceptional}
    assert flagged == {(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)}
    rep = dim_flat_punctured(0, 2).to_json()
    assert rep == {"exceptional": True, "possible_values": [0, 2]}


@given(st.integers(0, 40), st.integers(0, 60))
def test_in_range_formula(gamma, n):
    d = dim_flat_punctured(gamma, n)
    assert d.exceptional == (not formula_applies(gamma, n))
    if not d.exceptional:
        assert d.value == 6 * gamma - 6 + 2 * n
        assert d.value >= 0


@given(st.integers(0, 10), st.integers(0, 10))
def test_unpunctured_agrees_with_closed(gamma, _):
    if gamma >= 2:
        assert dim_flat_punctured(gamma, 0).value == dim_flat(gamma)


def test_negative_inputs():
    with pytest.raises(ValueError):
        dim_flat_punctured(-1, 3)
