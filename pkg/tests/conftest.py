"""Shared fixtures: the stock systems every suite exercises."""

from pathlib import Path

import pytest

from lqsys import (
    StateSpace,
    build_state_space,
    degenerate_parametric_amplifier,
    gain_system,
    passive_cavity,
)

SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture
def cavity():
    """Passive single-mode cavity, detuning 1, decay 2: A = diag(-1-i, -1+i)."""
    return build_state_space(passive_cavity(1, 2))


@pytest.fixture
def gain():
    """Pure creation-operator coupling: G(s) = (s + 1/2)/(s - 1/2) I, exact."""
    return build_state_space(gain_system())


@pytest.fixture
def dpa():
    """Degenerate parametric amplifier, kappa=2, epsilon=1 (floating)."""
    return build_state_space(degenerate_parametric_amplifier(2, 1))


@pytest.fixture
def classical_pole_only():
    """Classical system with A = B = C = I, D = 0: pole at 1, no
    transmission zeros, no (finite) invariant zeros.  Exact entries."""
    eye = [[1, 0], [0, 1]]
    zero = [[0, 0], [0, 0]]
    return StateSpace.from_matrices(eye, eye, eye, zero)


@pytest.fixture
def classical_hidden_mode():
    """Classical system with a decoupled second mode: eigenvalues {1, 2},
    poles {1}, transmission zeros {0}, invariant zeros {0, 2}.  Exact."""
    return StateSpace.from_matrices(
        [[1, 0], [0, 2]], [[1, 0], [0, 0]], [[1, 0], [0, 0]], [[1, 0], [0, 1]]
    )


@pytest.fixture
def quad_hidden_pair():
    """Physically realizable quadrature system whose hidden modes are the
    real pair {-1, +1}: the canonical counterexample for the Kalman zero
    formula and the invertibility criterion.  Exact entries."""
    return StateSpace.from_matrices(
        [[-1, 0], [0, 1]],
        [[0, 1], [0, 0]],
        [[0, 1], [0, 0]],
        [[1, 0], [0, 1]],
        representation="quadrature",
    )


def assert_spectrum(report, expected, tol=1e-8):
    """Multiset equality of a SpectrumReport against plain complex values."""
    got = sorted(report.expand(), key=lambda z: (z.real, z.imag))
    want = sorted((complex(z) for z in expected), key=lambda z: (z.real, z.imag))
    assert len(got) == len(want), f"sizes differ: {got} vs {want}"
    for g, w in zip(got, want):
        assert abs(g - w) <= tol * max(1.0, abs(w)), f"{got} vs {want}"


@pytest.fixture
def spectrum_equal():
    return assert_spectrum
