"""Exact transfer matrices, Smith forms and the Smith-McMillan form.

A rational matrix G(s) is reduced by elementary row/column operations to

    M(s) = diag(alpha_1/beta_1, ..., alpha_r/beta_r, 0, ...)

with monic coprime pairs satisfying alpha_i | alpha_{i+1} and
beta_{i+1} | beta_i.  Transmission zeros are the roots of the alpha_i and
poles the roots of the beta_i, counted with multiplicity.  All of this is
done over Q(i): canonical forms need exact gcds, so there is deliberately
no floating-point variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactlinalg as xl
from .errors import DimensionError, ExactnessError
from .rational import (
    GR_ONE,
    GaussianRational,
    Poly,
    POLY_ONE,
    POLY_ZERO,
    RationalFn,
)
from .spectra import SpectrumReport

__all__ = [
    "RationalMatrix",
    "SmithMcMillanForm",
    "transfer_matrix_exact",
    "smith_mcmillan",
    "zeros_poles_from_smf",
    "polynomial_roots_exact_first",
]


class RationalMatrix:
    """Dense matrix of RationalFn entries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = [[RationalFn.of(e) for e in row] for row in entries]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged rows in rational matrix")
        object.__setattr__(self, "entries", tuple(tuple(r) for r in rows))

    def __setattr__(self, *_):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, k):
        return cls(
            [[RationalFn.of(1 if i == j else 0) for j in range(k)] for i in range(k)]
        )

    @classmethod
    def diagonal(cls, diag, shape=None):
        diag = [RationalFn.of(d) for d in diag]
        p = q = len(diag)
        if shape is not None:
            p, q = shape
        return cls(
            [
                [diag[i] if i == j and i < len(diag) else RationalFn.of(0)
                 for j in range(q)]
                for i in range(p)
            ]
        )

    @property
    def shape(self):
        r = len(self.entries)
        return (r, len(self.entries[0]) if r else 0)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other):
        p, q = self.shape
        q2, r = other.shape
        if q != q2:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(p):
            row = []
            for j in range(r):
                acc = RationalFn.of(0)
                for k in range(q):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return RationalMatrix(out)

    def evaluate(self, s):
        """Numeric (or exact, for GaussianRational s) value of G(s)."""
        if isinstance(s, GaussianRational):
            return [[e(s) for e in row] for row in self.entries]
        p, q = self.shape
        out = np.zeros((p, q), dtype=complex)
        for i in range(p):
            for j in range(q):
                out[i, j] = complex(self.entries[i][j](s))
        return out

    def determinant(self):
        """Exact determinant over the rational-function field."""
        p, q = self.shape
        if p != q:
            raise DimensionError("determinant needs a square matrix")
        m = [list(row) for row in self.entries]
        det = RationalFn.of(1)
        for col in range(p):
            piv = next((i for i in range(col, p) if not m[i][col].is_zero()), None)
            if piv is None:
                return RationalFn.of(0)
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            pv = m[col][col]
            det = det * pv
            for i in range(col + 1, p):
                if m[i][col].is_zero():
                    continue
                f = m[i][col] / pv
                for j in range(col, p):
                    m[i][j] = m[i][j] - f * m[col][j]
        return det

    def __str__(self):
        return "\n".join(
            "[" + ", ".join(str(e) for e in row) + "]" for row in self.entries
        )


def transfer_matrix_exact(ss) -> RationalMatrix:
    """Exact transfer matrix D + C (sI - A)^-1 B of an exact system.

    Uses the Faddeev-LeVerrier expansion of the resolvent: with
    p(s) = det(sI - A) and adj(sI - A) = sum_k M_k s^(n-1-k), each entry is
    (D_ij p(s) + [C adj B]_ij) / p(s), reduced.
    """
    if not ss.is_exact:
        raise ExactnessError(
            "transfer_matrix_exact needs exact entries; "
            "use frequency_response for floating systems"
        )
    a = ss.exact["A"]
    b = ss.exact["B"]
    c = ss.exact["C"]
    d = ss.exact["D"]
    n2 = xl.shape(a)[0]
    p, m_terms = xl.charpoly(a)
    cmb = [xl.mat_mul(xl.mat_mul(c, mk), b) for mk in m_terms]
    rows, cols = xl.shape(d)
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            # coefficient of s^(n2-1-k) is cmb[k][i][j]
            coeffs = [cmb[n2 - 1 - deg][i][j] for deg in range(n2)]
            num = Poly(coeffs) + Poly.constant(d[i][j]) * p
            row.append(RationalFn(num, p))
        out.append(row)
    return RationalMatrix(out)


# ---------------------------------------------------------------------------
# Smith / Smith-McMillan reduction


def _content(polys):
    """Positive rational c with entries/c integral and coprime, or None for
    an all-zero collection.  Dividing a row or column by its content keeps
    coefficient sizes bounded during the reduction (fraction containment)."""
    num_gcd = 0
    den_lcm = 1
    for p in polys:
        for coeff in p.coeffs:
            for f in (coeff.re, coeff.im):
                if f:
                    num_gcd = math.gcd(num_gcd, abs(f.numerator))
                    den_lcm = den_lcm // math.gcd(den_lcm, f.denominator) * f.denominator
    if num_gcd == 0:
        return None
    return Fraction(num_gcd, den_lcm)


class _PolyMat:
    """Mutable polynomial matrix used only inside the reduction."""

    def __init__(self, rows):
        self.m = [list(r) for r in rows]

    @classmethod
    def eye(cls, k):
        return cls(
            [[POLY_ONE if i == j else POLY_ZERO for j in range(k)] for i in range(k)]
        )

    def swap_rows(self, i, j):
        self.m[i], self.m[j] = self.m[j], self.m[i]

    def swap_cols(self, i, j):
        for row in self.m:
            row[i], row[j] = row[j], row[i]

    def addmul_row(self, dst, src, poly):
        self.m[dst] = [x + poly * y for x, y in zip(self.m[dst], self.m[src])]

    def addmul_col(self, dst, src, poly):
        for row in self.m:
            row[dst] = row[dst] + poly * row[src]

    def scale_row(self, i, c):
        self.m[i] = [Poly([cc * c for cc in x.coeffs]) for x in self.m[i]]

    def scale_col(self, j, c):
        for row in self.m:
            row[j] = Poly([cc * c for cc in row[j].coeffs])

    def mix_rows(self, i, j, a, b, c, d):
        """(row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)."""
        ri, rj = self.m[i], self.m[j]
        self.m[i] = [a * x + b * y for x, y in zip(ri, rj)]
        self.m[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def mix_cols(self, i, j, a, b, c, d):
        for row in self.m:
            x, y = row[i], row[j]
            row[i] = a * x + b * y
            row[j] = c * x + d * y


@dataclass(frozen=True)
class SmithMcMillanForm:
    """Diagonal canonical form of a rational matrix under unimodular
    row/column operations, together with the operations themselves.

    ``left_ops`` / ``right_ops`` are the recorded elementary row/column
    operations; ``apply_operations(G, left_ops, right_ops)`` reproduces
    ``diagonal()`` exactly.  The unimodular factors can be materialized
    with ``left_matrix()`` / ``right_matrix()`` when needed.
    """

    alphas: tuple  # of Poly, monic
    betas: tuple  # of Poly, monic
    rank: int
    shape: tuple
    left_ops: tuple
    right_ops: tuple

    def diagonal(self) -> RationalMatrix:
        return RationalMatrix.diagonal(
            [RationalFn(a, b) for a, b in zip(self.alphas, self.betas)],
            shape=self.shape,
        )

    def left_matrix(self) -> RationalMatrix:
        return apply_operations(
            RationalMatrix.identity(self.shape[0]), self.left_ops, ()
        )

    def right_matrix(self) -> RationalMatrix:
        return apply_operations(
            RationalMatrix.identity(self.shape[1]), (), self.right_ops
        )

    def to_dict(self):
        return {
            "rank": self.rank,
            "diagonal": [
                str(RationalFn(a, b)) for a, b in zip(self.alphas, self.betas)
            ],
            "alphas": [str(a) for a in self.alphas],
            "betas": [str(b) for b in self.betas],
        }


def apply_operations(g: RationalMatrix, left_ops, right_ops) -> RationalMatrix:
    """Apply recorded elementary operations: left ops act on rows, right
    ops on columns, each in recorded order."""
    m = [list(row) for row in g.entries]

    for op in left_ops:
        kind = op[0]
        if kind == "swap":
            _, i, j = op
            m[i], m[j] = m[j], m[i]
        elif kind == "addmul":
            _, dst, src, poly = op
            f = RationalFn(poly)
            m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        elif kind == "mix":
            _, i, j, a, b, c, d = op
            fa, fb, fc, fd = (RationalFn(x) for x in (a, b, c, d))
            ri, rj = m[i], m[j]
            m[i] = [fa * x + fb * y for x, y in zip(ri, rj)]
            m[j] = [fc * x + fd * y for x, y in zip(ri, rj)]
        else:
            _, i, c = op
            f = RationalFn(Poly.constant(c))
            m[i] = [f * x for x in m[i]]
    for op in right_ops:
        kind = op[0]
        if kind == "swap":
            _, i, j = op
            for row in m:
                row[i], row[j] = row[j], row[i]
        elif kind == "addmul":
            _, dst, src, poly = op
            f = RationalFn(poly)
            for row in m:
                row[dst] = row[dst] + f * row[src]
        elif kind == "mix":
            _, i, j, a, b, c, d = op
            fa, fb, fc, fd = (RationalFn(x) for x in (a, b, c, d))
            for row in m:
                x, y = row[i], row[j]
                row[i] = fa * x + fb * y
                row[j] = fc * x + fd * y
        else:
            _, j, c = op
            f = RationalFn(Poly.constant(c))
            for row in m:
                row[j] = f * row[j]
    return RationalMatrix(m)


def _lowest_degree_pivot(m, t, p, q):
    best = None
    for i in range(t, p):
        for j in range(t, q):
            e = m.m[i][j]
            if e.is_zero():
                continue
            key = (e.degree, i, j)
            if best is None or key < best[0]:
                best = (key, i, j)
    if best is None:
        return None
    return best[1], best[2]


def smith_mcmillan(g: RationalMatrix) -> SmithMcMillanForm:
    """Smith-McMillan form via Smith reduction of the numerator matrix.

    Writes G = N(s)/d(s) with d the monic lcm of entry denominators and
    reduces N by recorded unimodular operations, then cancels d into each
    diagonal entry.  Non-divisible entries are absorbed into the pivot by
    a Bezout 2x2 mix (one operation turns the pivot into the gcd and
    zeroes the entry), and every touched row/column is stripped to its
    rational content; together these keep coefficient growth tame, where
    plain remainder chasing blows up.  Pivots are chosen as the
    lowest-degree nonzero entry, ties broken by smallest (row, col), so
    the recorded operation sequence is deterministic.
    """
    p, q = g.shape
    d = POLY_ONE
    for row in g.entries:
        for e in row:
            d = d.lcm(e.den)
    n = _PolyMat(
        [[(e.num * (d // e.den)) for e in row] for row in g.entries]
    )
    left_ops, right_ops = [], []

    def row_swap(i, j):
        if i != j:
            n.swap_rows(i, j)
            left_ops.append(("swap", i, j))

    def col_swap(i, j):
        if i != j:
            n.swap_cols(i, j)
            right_ops.append(("swap", i, j))

    def row_addmul(dst, src, poly):
        if not poly.is_zero():
            n.addmul_row(dst, src, poly)
            left_ops.append(("addmul", dst, src, poly))

    def col_addmul(dst, src, poly):
        if not poly.is_zero():
            n.addmul_col(dst, src, poly)
            right_ops.append(("addmul", dst, src, poly))

    def row_scale(i, c):
        n.scale_row(i, c)
        left_ops.append(("scale", i, c))

    def col_scale(j, c):
        n.scale_col(j, c)
        right_ops.append(("scale", j, c))

    def row_normalize(i):
        c = _content(n.m[i])
        if c is not None and c != 1:
            row_scale(i, GaussianRational(1 / c))

    def col_normalize(j):
        c = _content(row[j] for row in n.m)
        if c is not None and c != 1:
            col_scale(j, GaussianRational(1 / c))

    def row_mix(i, t):
        """Replace the pivot by gcd(pivot, n[i][t]) and zero n[i][t] with a
        single unimodular 2x2 row operation (Bezout combination)."""
        pivot, e = n.m[t][t], n.m[i][t]
        g, uu, vv = pivot.ext_gcd(e)
        a, b = uu, vv
        c, d_ = -(e // g), pivot // g
        n.mix_rows(t, i, a, b, c, d_)
        left_ops.append(("mix", t, i, a, b, c, d_))
        row_normalize(t)
        row_normalize(i)

    def col_mix(j, t):
        pivot, e = n.m[t][t], n.m[t][j]
        g, uu, vv = pivot.ext_gcd(e)
        a, b = uu, vv
        c, d_ = -(e // g), pivot // g
        n.mix_cols(t, j, a, b, c, d_)
        right_ops.append(("mix", t, j, a, b, c, d_))
        col_normalize(t)
        col_normalize(j)

    for i in range(p):
        row_normalize(i)

    t = 0
    while t < min(p, q):
        pos = _lowest_degree_pivot(n, t, p, q)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        while True:
            # column sweep: divisible entries are cleared by a plain row
            # operation, the rest by a Bezout mix that shrinks the pivot
            for i in range(t + 1, p):
                e = n.m[i][t]
                if e.is_zero():
                    continue
                if n.m[t][t].divides(e):
                    row_addmul(i, t, -(e // n.m[t][t]))
                    row_normalize(i)
                else:
                    row_mix(i, t)
            # row sweep: may re-dirty the column (a column mix feeds column
            # j entries back into column t), hence the outer loop
            for j in range(t + 1, q):
                e = n.m[t][j]
                if e.is_zero():
                    continue
                if n.m[t][t].divides(e):
                    col_addmul(j, t, -(e // n.m[t][t]))
                    col_normalize(j)
                else:
                    col_mix(j, t)
            if any(not n.m[i][t].is_zero() for i in range(t + 1, p)):
                continue
            # pivot must divide the whole remaining submatrix; if not, pull
            # the offending row up and keep reducing (the next sweep then
            # gcd-mixes the offending entry into the pivot)
            offender = None
            for i in range(t + 1, p):
                for j in range(t + 1, q):
                    if not n.m[t][t].divides(n.m[i][j]):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_addmul(t, offender, POLY_ONE)
        t += 1

    alphas, betas = [], []
    for i in range(t):
        fn = RationalFn(n.m[i][i], d)
        lc = fn.num.leading()
        if lc != GR_ONE:
            row_scale(i, GR_ONE / lc)
        alphas.append(fn.num.monic())
        betas.append(fn.den)
    return SmithMcMillanForm(
        alphas=tuple(alphas),
        betas=tuple(betas),
        rank=t,
        shape=(p, q),
        left_ops=tuple(left_ops),
        right_ops=tuple(right_ops),
    )


# ---------------------------------------------------------------------------
# root extraction


def _rationalize(z, max_den=10**6):
    cand = GaussianRational(
        Fraction(z.real).limit_denominator(max_den),
        Fraction(z.imag).limit_denominator(max_den),
    )
    return cand


def polynomial_roots_exact_first(poly: Poly, numeric_tol=1e-10):
    """Roots of an exact polynomial: exact linear factors are split off by
    rationalizing numeric root estimates and verifying p(root) = 0 exactly;
    whatever remains is handed to a companion-matrix solve and flagged.

    Returns (exact_roots, numeric_roots) where exact_roots is a list of
    GaussianRational (with repetition) and numeric_roots a list of complex.
    """
    if poly.is_zero():
        raise ZeroDivisionError("zero polynomial has no well-defined roots")
    work = poly.monic()
    exact_roots = []
    while work.degree >= 1:
        coeffs = [complex(c) for c in reversed(work.coeffs)]
        estimates = np.roots(coeffs)
        found = False
        for z in estimates:
            cand = _rationalize(complex(z))
            if work(cand).is_zero():
                factor = Poly([-cand, 1])
                while factor.divides(work):
                    work = (work // factor).monic()
                    exact_roots.append(cand)
                found = True
                break
        if not found:
            break
    numeric_roots = []
    if work.degree >= 1:
        coeffs = [complex(c) for c in reversed(work.coeffs)]
        numeric_roots = [complex(z) for z in np.roots(coeffs)]
    return exact_roots, numeric_roots


def zeros_poles_from_smf(smf: SmithMcMillanForm, tol=1e-10):
    """(transmission zeros, poles) of the Smith-McMillan form, with
    multiplicity, as SpectrumReports tagged 'smf'."""
    zero_vals, zero_numeric = _roots_of_all(smf.alphas)
    pole_vals, pole_numeric = _roots_of_all(smf.betas)
    znotes = ("numeric-residual-roots",) if zero_numeric else ()
    pnotes = ("numeric-residual-roots",) if pole_numeric else ()
    zeros = SpectrumReport.from_values(zero_vals, tol=tol, method="smf", notes=znotes)
    poles = SpectrumReport.from_values(pole_vals, tol=tol, method="smf", notes=pnotes)
    return zeros, poles


def _roots_of_all(polys):
    vals = []
    any_numeric = False
    for p in polys:
        if p.is_constant():
            continue
        exact, numeric = polynomial_roots_exact_first(p)
        vals.extend(complex(r) for r in exact)
        vals.extend(numeric)
        any_numeric = any_numeric or bool(numeric)
    return vals, any_numeric
