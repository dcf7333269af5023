"""Invariant zeros, transmission zeros and poles, by independent methods.

Invariant zeros of a realization (A, B, C, D) are the points where the
Rosenbrock matrix

    P(s) = [[A - sI, B], [C, D]]

loses rank.  For systems with invertible feedthrough they are the
eigenvalues of A - B D^-1 C (the Schur complement of the pencil); for a
physically realizable system they are also the eigenvalues of -A^b (or
-A^# in quadrature), giving a second, independent computation that the
test suite plays against the first.  Transmission zeros and poles are
properties of the transfer matrix and are computed from the minimal
realization numerically, or from the Smith-McMillan form exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import exactlinalg as xl
from .errors import NumericalError, ParameterError, RealizabilityError
from .kalman import minimal_realization
from .linalg import flat_adjoint, rank_at_tolerance, sharp_adjoint
from .model import StateSpace, check_physical_realizability, frequency_response
from .rational import GR_ONE
from .smith import RationalMatrix, smith_mcmillan, zeros_poles_from_smf
from .spectra import SpectrumReport, format_complex, multiset_match

__all__ = [
    "RosenbrockPencil",
    "ZeroDirections",
    "invariant_zeros_pencil",
    "invariant_zeros_flat",
    "poles",
    "transmission_zeros",
    "det_zero_test",
    "zero_directions",
    "MirrorReport",
    "verify_pole_zero_mirror",
    "DetIdentityReport",
    "verify_det_identity",
    "normalrank",
]


@dataclass(frozen=True)
class RosenbrockPencil:
    """P(s) = P0 - s E with P0 = [[A, B], [C, D]] and E = [[I, 0], [0, 0]]."""

    p0: np.ndarray
    e: np.ndarray

    @classmethod
    def from_state_space(cls, ss: StateSpace):
        ns, nf = ss.state_dim, ss.field_dim
        p0 = np.block(
            [
                [ss.A.astype(complex), ss.B.astype(complex)],
                [ss.C.astype(complex), ss.D.astype(complex)],
            ]
        )
        e = np.zeros((ns + nf, ns + nf), dtype=complex)
        e[:ns, :ns] = np.eye(ns)
        return cls(p0=p0, e=e)

    def evaluate(self, s):
        return self.p0 - complex(s) * self.e

    @property
    def size(self):
        return self.p0.shape[0]


def normalrank(ss: StateSpace, tol=1e-9, probes=(0.731 + 0.829j, 1.372 - 0.544j)):
    """Normal rank of P(s): the maximum rank over probe points (for open
    quantum systems this is always the full size, D being unitary)."""
    pencil = RosenbrockPencil.from_state_space(ss)
    return max(rank_at_tolerance(pencil.evaluate(s), tol) for s in probes)


def invariant_zeros_pencil(ss: StateSpace, tol=1e-9) -> SpectrumReport:
    """Invariant zeros as the finite eigenvalues of the Rosenbrock pencil.

    With invertible D the pencil reduces to the ordinary eigenproblem of
    the Schur complement A - B D^-1 C, which is exactly the feedthrough
    absorbing all infinite eigenvalues: the result is always a multiset of
    size equal to the state dimension.  A singular D (not a quantum
    system) degrades to a QZ solve of (P0, E) whose finite eigenvalues are
    confirmed by a rank sweep; the report is flagged accordingly.
    """
    d = ss.D.astype(complex)
    sv = np.linalg.svd(d, compute_uv=False) if d.size else np.array([])
    invertible = d.size > 0 and sv[-1] > 1e-10 * max(1.0, sv[0])
    if invertible:
        schur = ss.A.astype(complex) - ss.B.astype(complex) @ np.linalg.solve(
            d, ss.C.astype(complex)
        )
        vals = np.linalg.eigvals(schur) if schur.size else []
        return SpectrumReport.from_values(vals, tol=tol, method="pencil")

    pencil = RosenbrockPencil.from_state_space(ss)
    if pencil.size == 0:
        return SpectrumReport.from_values(
            [], tol=tol, method="pencil", notes=("singular-feedthrough",)
        )
    raw = scipy.linalg.eig(pencil.p0, pencil.e, right=False)
    finite = [complex(z) for z in raw if np.isfinite(z)]
    nrank = normalrank(ss, tol)
    confirmed = [
        z for z in finite if rank_at_tolerance(pencil.evaluate(z), tol) < nrank
    ]
    return SpectrumReport.from_values(
        confirmed,
        tol=tol,
        method="pencil",
        notes=("singular-feedthrough", "rank-sweep-confirmed"),
    )


def invariant_zeros_flat(
    ss: StateSpace, tol=1e-9, realizability_tol=1e-8
) -> SpectrumReport:
    """Invariant zeros as the eigenvalues of -A^b (annihilation) or -A^#
    (quadrature).

    The identity behind this shortcut needs the physical-realizability
    constraints, so the computation refuses systems whose realizability
    residual exceeds ``realizability_tol``.
    """
    rb = check_physical_realizability(ss, realizability_tol)
    if not rb.passed:
        raise RealizabilityError(
            "flat-adjoint zero computation needs a physically realizable "
            f"system; residuals {rb.residuals} exceed {realizability_tol}"
        )
    if ss.representation == "annihilation":
        neg_adj = -flat_adjoint(ss.A)
    else:
        neg_adj = -sharp_adjoint(ss.A.real)
    vals = np.linalg.eigvals(neg_adj) if neg_adj.size else []
    return SpectrumReport.from_values(vals, tol=tol, method="flat_adjoint")


def _as_rational_matrix(obj):
    if isinstance(obj, RationalMatrix):
        return obj
    return None


def poles(system, tol=1e-9) -> SpectrumReport:
    """Poles of the transfer matrix.

    For a StateSpace this is the eigenvalue multiset of the minimal
    realization's A (the pole polynomial of a minimal realization is its
    characteristic polynomial); for a RationalMatrix it is read off the
    Smith-McMillan denominators.
    """
    g = _as_rational_matrix(system)
    if g is not None:
        _, pole_rep = zeros_poles_from_smf(smith_mcmillan(g), tol)
        return pole_rep
    mini = minimal_realization(system, tol)
    vals = np.linalg.eigvals(mini.A) if mini.A.size else []
    return SpectrumReport.from_values(vals, tol=tol, method="minimal")


def transmission_zeros(system, tol=1e-9) -> SpectrumReport:
    """Transmission zeros: Smith-McMillan numerator roots (exact path), or
    the invariant zeros of the minimal realization (numeric path), which
    coincide for minimal realizations."""
    g = _as_rational_matrix(system)
    if g is not None:
        zero_rep, _ = zeros_poles_from_smf(smith_mcmillan(g), tol)
        return zero_rep
    mini = minimal_realization(system, tol)
    rep = invariant_zeros_pencil(mini, tol)
    return SpectrumReport(
        values=rep.values, tol=rep.tol, method="minimal", notes=rep.notes
    )


def det_zero_test(ss: StateSpace, s0, tol=1e-9) -> bool:
    """Determinant criterion: at a non-pole s0, s0 is a transmission zero
    iff det G(s0) = 0 (tested as a relative rank drop of G(s0)).

    Raises ParameterError when s0 is (within tolerance of) a pole, since
    the criterion's hypothesis excludes poles.
    """
    s0 = complex(s0)
    pole_rep = poles(ss, tol)
    for p, _ in pole_rep.values:
        if abs(s0 - p) <= max(tol, 1e-7) * max(1.0, abs(p)):
            raise ParameterError(
                f"det criterion needs a non-pole point, but {s0} is within "
                f"tolerance of the pole {p}"
            )
    mini = minimal_realization(ss, tol)
    g = frequency_response(mini, s0)
    sv = np.linalg.svd(g, compute_uv=False)
    return bool(sv[-1] <= tol * max(1.0, sv[0]))


@dataclass(frozen=True)
class ZeroDirections:
    """Right and left null directions of P(s0) at an invariant zero.

    A vanishing input component u flags s0 as an unobservable mode; a
    vanishing left input component v flags it as an uncontrollable mode.
    """

    s0: complex
    x: np.ndarray
    u: np.ndarray
    y: np.ndarray
    v: np.ndarray
    smallest_singular_value: float
    unobservable_mode: bool
    uncontrollable_mode: bool

    def to_dict(self):
        return {
            "s0": format_complex(self.s0, 17),
            "unobservable_mode": self.unobservable_mode,
            "uncontrollable_mode": self.uncontrollable_mode,
            "smallest_singular_value": self.smallest_singular_value,
        }


def zero_directions(ss: StateSpace, s0, tol=1e-8) -> ZeroDirections:
    """Unit-norm right/left null vectors of P(s0), split into state and
    field components, with hidden-mode flags."""
    s0 = complex(s0)
    pencil = RosenbrockPencil.from_state_space(ss)
    mat = pencil.evaluate(s0)
    uu, sv, vh = np.linalg.svd(mat)
    smallest = float(sv[-1]) if sv.size else 0.0
    scale = float(sv[0]) if sv.size else 0.0
    if sv.size and smallest > tol * max(1.0, scale):
        raise NumericalError(
            f"{s0} is not an invariant zero at tol {tol}: smallest singular "
            f"value of P(s0) is {smallest:.3e}"
        )
    right = vh[-1].conj()
    left = uu[:, -1].conj()
    ns = ss.state_dim
    x, u = right[:ns], right[ns:]
    y, v = left[:ns], left[ns:]
    return ZeroDirections(
        s0=s0,
        x=x,
        u=u,
        y=y,
        v=v,
        smallest_singular_value=smallest,
        unobservable_mode=bool(np.linalg.norm(u) <= tol),
        uncontrollable_mode=bool(np.linalg.norm(v) <= tol),
    )


@dataclass(frozen=True)
class MirrorReport:
    """Outcome of checking that the transmission zeros are exactly the
    negated conjugates of the poles (with multiplicity)."""

    passed: bool
    poles: SpectrumReport
    zeros: SpectrumReport
    expected_zeros: SpectrumReport
    pairs: tuple | None

    def to_dict(self):
        return {
            "passed": self.passed,
            "poles": self.poles.to_dict(),
            "zeros": self.zeros.to_dict(),
            "expected_zeros": self.expected_zeros.to_dict(),
        }


def verify_pole_zero_mirror(system, tol=1e-7) -> MirrorReport:
    """Check zeros(G) = {-conj(p) : p pole of G} as multisets.

    Holds unconditionally for physically realizable quantum systems;
    classical systems generally fail it (e.g. an integrator-like plant
    with a pole and no transmission zero).
    """
    pole_rep = poles(system, min(tol, 1e-9))
    zero_rep = transmission_zeros(system, min(tol, 1e-9))
    expected = pole_rep.mirrored()
    pairs = multiset_match(zero_rep.expand(), expected.expand(), tol)
    return MirrorReport(
        passed=pairs is not None,
        poles=pole_rep,
        zeros=zero_rep,
        expected_zeros=expected,
        pairs=tuple(pairs) if pairs is not None else None,
    )


@dataclass(frozen=True)
class DetIdentityReport:
    """Result of comparing det P(s) with det(sI + A^b) as polynomials."""

    ok: bool
    mode: str  # "exact" | "numeric"
    unit: complex
    det_pencil: tuple
    det_adjoint: tuple

    def to_dict(self):
        return {
            "ok": self.ok,
            "mode": self.mode,
            "unit": format_complex(self.unit, 17),
        }


def verify_det_identity(ss: StateSpace, tol=1e-9) -> DetIdentityReport:
    """Verify det P(s) = det(sI + A^b) (or the sharp analog) up to the
    constant det D, coefficientwise.

    Exact systems are checked exactly: the pencil determinant is obtained
    by evaluation/interpolation and the right side is the characteristic
    polynomial of -A^b; both are normalized monic and the dropped unit
    factor is reported.  Floating systems fall back to sampled determinant
    evaluations fitted to polynomials, compared at ``tol``.
    """
    if ss.is_exact:
        a, b, c, d = (ss.exact[k] for k in ("A", "B", "C", "D"))
        ns = xl.shape(a)[0]
        nf = xl.shape(d)[0]
        p0 = xl.mat_block([[a, b], [c, d]])
        e = xl.mat_zeros(ns + nf, ns + nf)
        for i in range(ns):
            e[i][i] = GR_ONE
        left = xl.pencil_det(p0, e)
        if ss.representation == "annihilation":
            adj = xl.flat_adjoint_exact(a)
        else:
            adj = xl.sharp_adjoint_exact(a)
        right, _ = xl.charpoly(xl.mat_neg(adj))
        unit = complex(left.leading()) if not left.is_zero() else 0.0
        ok = left.monic() == right and not left.is_zero()
        return DetIdentityReport(
            ok=ok,
            mode="exact",
            unit=unit,
            det_pencil=tuple(complex(cc) for cc in left.coeffs),
            det_adjoint=tuple(complex(cc) for cc in right.coeffs),
        )

    pencil = RosenbrockPencil.from_state_space(ss)
    ns = ss.state_dim
    if ss.representation == "annihilation":
        neg_adj = -flat_adjoint(ss.A)
    else:
        neg_adj = -sharp_adjoint(ss.A.real)
    pts = np.arange(ns + 1, dtype=float)
    vand = np.vander(pts, ns + 1, increasing=True)
    left_vals = [np.linalg.det(pencil.evaluate(s)) for s in pts]
    right_vals = [
        np.linalg.det(complex(s) * np.eye(ns) - neg_adj.astype(complex))
        for s in pts
    ]
    left_coeffs = np.linalg.solve(vand, np.array(left_vals))
    right_coeffs = np.linalg.solve(vand, np.array(right_vals))
    lu = left_coeffs[-1] if abs(left_coeffs[-1]) > tol else 1.0
    ru = right_coeffs[-1] if abs(right_coeffs[-1]) > tol else 1.0
    lmon = left_coeffs / lu
    rmon = right_coeffs / ru
    scale = max(1.0, float(np.max(np.abs(rmon))))
    ok = bool(np.max(np.abs(lmon - rmon)) <= tol * scale)
    return DetIdentityReport(
        ok=ok,
        mode="numeric",
        unit=complex(lu),
        det_pencil=tuple(complex(z) for z in left_coeffs),
        det_adjoint=tuple(complex(z) for z in right_coeffs),
    )
