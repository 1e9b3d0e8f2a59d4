import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fingerprint_lab import DimensionError, gap_report, welch_lower_bound
from fingerprint_lab import assemble_scheme, weyl_heisenberg_family

from _schemes import assembled_scheme, embedded_scheme


@pytest.mark.parametrize(
    "m,ns,expected",
    [(5, 2, 1 / 16), (4, 2, 0.0), (2, 1, 1.0), (10, 3, 1 / 81), (9, 3, 0.0), (16, 4, 0.0)],
)
def test_formula(m, ns, expected):
    rep = welch_lower_bound(m, ns)
    assert rep.raw_bound == pytest.approx(expected, rel=1e-15, abs=0)
    assert rep.effective_bound == max(expected, 0.0)


def test_negative_region_clamped():
    rep = welch_lower_bound(3, 2)
    assert rep.raw_bound == pytest.approx(-1 / 8)
    assert rep.effective_bound == 0.0


def test_domain():
    with pytest.raises(DimensionError):
        welch_lower_bound(1, 2)
    with pytest.raises(DimensionError):
        welch_lower_bound(4, 0)


@given(ns=st.integers(2, 6), extra=st.integers(1, 500))
def test_increasing_in_m(ns, extra):
    m = ns * ns + extra
    assert welch_lower_bound(m + 1, ns).raw_bound > welch_lower_bound(m, ns).raw_bound


@given(m=st.integers(2, 10**6))
def test_no_entanglement_is_flat(m):
    # (m - 1) / (m - 1): certain worst-case error for every m
    assert welch_lower_bound(m, 1).raw_bound == 1.0


@given(ns=st.integers(1, 6), extra=st.integers(1, 500))
def test_decreasing_in_ns(ns, extra):
    m = (ns + 1) ** 2 + extra
    assert welch_lower_bound(m, ns + 1).raw_bound < welch_lower_bound(m, ns).raw_bound


@pytest.mark.parametrize("ns", range(1, 6))
def test_large_m_limit(ns):
    assert abs(welch_lower_bound(10**6, ns).raw_bound - 1 / ns**2) <= 1e-5


def test_gap_pauli():
    rep = gap_report(assemble_scheme(weyl_heisenberg_family(2, 4)))
    assert rep.achieved <= 1e-12
    assert rep.effective_bound == 0
    assert rep.gap == pytest.approx(0, abs=1e-12)


def test_gap_identical():
    v = np.eye(2, dtype=complex)
    rep = gap_report(assemble_scheme(np.array([v, v])))
    assert rep.achieved == pytest.approx(1)
    assert rep.effective_bound == 0
    assert rep.gap == pytest.approx(1)


@pytest.mark.parametrize("seed", range(30))
def test_floor_on_random_valid(seed):
    rep = gap_report(assembled_scheme(seed, 2, 3 + seed % 8))
    assert rep.achieved >= rep.raw_bound - 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_floor_below_ambient_dimension(seed):
    s = embedded_scheme(seed, 1 + seed % 2, 3, 6)
    rep = gap_report(s)
    assert rep.schmidt_number == s.schmidt_number
    assert rep.achieved >= rep.raw_bound - 1e-9
