"""Potential functions of torus fibers and their Laurent calculus.

A potential is a Laurent polynomial in ``y_1..y_n`` with Novikov-series
coefficients.  This module assembles the leading-order potential from a
polytope and an interior point, applies divisor-weight deformations in
the closed product form available for Fano examples, adds gapped
higher-order tails, and provides logarithmic derivatives, evaluation at
unit points, gradients, Hessians, residue pairing, and the Euler
vector-field identity check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (BadGappedTerm, NonUnitEvaluation, NotInterior,
                     OutOfScope)
from .novikov import DEFAULT_TOL, EXACT, FLOAT, INF, NovikovSeries, as_exponent
from .polytope import MomentPolytope


class PotentialFunction:
    """Laurent polynomial in y-variables over the Novikov ring."""

    def __init__(self, n: int, terms: Sequence):
        self.n = n
        merged: dict = {}
        mode = None
        tol = DEFAULT_TOL
        for coeff, expvec in terms:
            expvec = tuple(int(x) for x in expvec)
            if len(expvec) != n:
                raise ValueError("exponent vector has wrong dimension")
            if expvec in merged:
                merged[expvec] = merged[expvec] + coeff
            else:
                merged[expvec] = coeff
            mode = coeff.mode
            tol = max(tol, coeff.tol)
        self.terms = tuple(sorted(
            ((c, e) for e, c in merged.items() if not c.is_zero),
            key=lambda t: t[1]))
        self.mode = mode if mode is not None else EXACT
        self.tol = tol

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, PotentialFunction)
                and self.n == other.n and self.terms == other.terms)

    def __add__(self, other):
        if isinstance(other, PotentialFunction):
            return PotentialFunction(self.n, self.terms + other.terms)
        raise TypeError("can only add potentials")

    def coefficient(self, expvec) -> NovikovSeries:
        expvec = tuple(int(x) for x in expvec)
        for c, e in self.terms:
            if e == expvec:
                return c
        return NovikovSeries.zero(mode=self.mode, tol=self.tol)

    def log_derivative(self, k: int) -> "PotentialFunction":
        """Apply ``y_k d/dy_k``: each term scaled by its k-th exponent."""
        if not 1 <= k <= self.n:
            raise ValueError("variable index out of range")
        return PotentialFunction(
            self.n, [(c.scale(e[k - 1]), e) for c, e in self.terms
                     if e[k - 1] != 0])

    def evaluate(self, y) -> NovikovSeries:
        """Evaluate at a point with unit Novikov-series coordinates."""
        y = [self._as_unit(c) for c in y]
        if len(y) != self.n:
            raise ValueError("point has wrong dimension")
        total = NovikovSeries.zero(mode=self.mode, tol=self.tol)
        for coeff, expvec in self.terms:
            value = coeff
            for yi, fi in zip(y, expvec):
                if fi:
                    value = value * (yi ** fi)
            total = total + value
        return total

    def _as_unit(self, c):
        if not isinstance(c, NovikovSeries):
            c = NovikovSeries.const(c, mode=self.mode, tol=self.tol)
        if not c.is_unit():
            raise NonUnitEvaluation(
                f"coordinate {c!r} is not a unit of the valuation ring")
        return c

    def gradient_residual(self, y):
        """All logarithmic derivatives at ``y`` and their least valuation."""
        residuals = [self.log_derivative(k + 1).evaluate(y)
                     for k in range(self.n)]
        min_val = min((r.valuation() for r in residuals), default=INF)
        return residuals, min_val

    def hessian(self, y) -> "HessianData":
        """Second logarithmic derivatives, determinant, residue pairing."""
        matrix = []
        for i in range(self.n):
            row_src = self.log_derivative(i + 1)
            matrix.append([row_src.log_derivative(j + 1).evaluate(y)
                           for j in range(self.n)])
        d = _series_det(matrix, self.mode, self.tol)
        degenerate = d.is_zero
        pairing = None if degenerate else d.inverse()
        return HessianData(matrix, d, pairing, degenerate)

    def truncate_coefficients(self, order) -> "PotentialFunction":
        order = as_exponent(order)
        return PotentialFunction(
            self.n, [(c.truncate(order), e) for c, e in self.terms])

    def to_float(self) -> "PotentialFunction":
        return PotentialFunction(
            self.n, [(c.to_float(), e) for c, e in self.terms])

    def __repr__(self):
        names = [f"y{i+1}" for i in range(self.n)]

        def monome(e):
            parts = [f"{nm}^{p}" if p != 1 else nm
                     for nm, p in zip(names, e) if p]
            return "*".join(parts) or "1"

        body = " + ".join(f"({c!r})*{monome(e)}" for c, e in self.terms)
        return f"PotentialFunction[{body or '0'}]"


@dataclass
class HessianData:
    matrix: list
    det: NovikovSeries
    residue_self_pairing: Optional[NovikovSeries]
    degenerate: bool


def _series_det(matrix, mode, tol):
    """Determinant of a small matrix of Novikov series (cofactor expansion)."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = NovikovSeries.zero(mode=mode, tol=tol)
    for j in range(n):
        if matrix[0][j].is_zero:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in matrix[1:]]
        cof = matrix[0][j] * _series_det(minor, mode, tol)
        total = total + (cof if j % 2 == 0 else -cof)
    return total


# -- divisor-weight deformations ------------------------------------------

@dataclass(frozen=True)
class BulkEntry:
    """One facet's deformation, split into a unit times a small part.

    ``unit`` is the exponential of the order-zero coefficient, supplied
    directly as a scalar; ``plus`` is the positive-valuation remainder.
    """
    plus: NovikovSeries
    unit: object = 1

    def exp_factor(self) -> NovikovSeries:
        factor = self.plus.exp()
        if self.unit != 1:
            factor = factor.scale(self.unit)
        return factor


class BulkDeformation:
    """Per-facet divisor weights for the degree-two deformation."""

    def __init__(self, entries: Optional[dict] = None, mode: str = EXACT,
                 tol: float = DEFAULT_TOL):
        self.entries: dict = {}
        self.mode = mode
        self.tol = tol
        for i, entry in (entries or {}).items():
            if isinstance(entry, BulkEntry):
                self.entries[int(i)] = entry
            else:
                self.entries[int(i)] = BulkEntry(plus=entry)
        for entry in self.entries.values():
            if not entry.plus.in_lambda_plus() and not entry.plus.is_zero:
                raise ValueError(
                    "small part of a facet weight must have positive valuation")

    @classmethod
    def zero(cls, mode=EXACT, tol=DEFAULT_TOL):
        return cls({}, mode=mode, tol=tol)

    def entry(self, i: int) -> BulkEntry:
        return self.entries.get(
            i, BulkEntry(NovikovSeries.zero(mode=self.mode, tol=self.tol)))

    def exp_factor(self, i: int, trunc=INF) -> NovikovSeries:
        entry = self.entry(i)
        plus = entry.plus
        if trunc is not INF and plus.trunc is INF and not plus.is_zero:
            plus = plus.truncate(trunc)
        factor = plus.exp()
        if entry.unit != 1:
            factor = factor.scale(entry.unit)
        return factor

    def updated(self, i: int, delta: NovikovSeries) -> "BulkDeformation":
        """New deformation with ``delta`` added to facet ``i``'s small part."""
        entry = self.entry(i)
        new_entries = dict(self.entries)
        new_entries[i] = BulkEntry(entry.plus + delta, entry.unit)
        return BulkDeformation(new_entries, mode=self.mode, tol=self.tol)

    def items(self):
        return self.entries.items()


def leading_potential(P: MomentPolytope, u, mode=EXACT, trunc=INF,
                      tol=DEFAULT_TOL) -> PotentialFunction:
    """Lowest-order potential: one term ``T^{ell_i(u)} y^{v_i}`` per facet."""
    u = [Fraction(x) for x in u]
    ell = P.ell_values(u)
    if any(v <= 0 for v in ell):
        raise NotInterior(f"{u} is not an interior point")
    terms = [(NovikovSeries.monomial(1, e, mode=mode, trunc=trunc, tol=tol),
              f.v) for e, f in zip(ell, P.facets)]
    return PotentialFunction(P.n, terms)


def fano_bulk_potential(P: MomentPolytope, u, bulk: BulkDeformation,
                        trunc=INF, tol=DEFAULT_TOL) -> PotentialFunction:
    """Deformed potential in the closed product form.

    Valid for the Fano examples: each facet term of the leading potential
    is multiplied by the exponential of that facet's divisor weight.
    """
    if P.fano is False:
        raise OutOfScope(
            f"{P.name or 'polytope'} is not marked Fano; the closed product "
            "form does not apply — use with_gapped_tail instead")
    u = [Fraction(x) for x in u]
    ell = P.ell_values(u)
    if any(v <= 0 for v in ell):
        raise NotInterior(f"{u} is not an interior point")
    terms = []
    for i, (e, f) in enumerate(zip(ell, P.facets)):
        coeff = NovikovSeries.monomial(1, e, mode=bulk.mode, trunc=trunc,
                                       tol=tol)
        terms.append((coeff * bulk.exp_factor(i, trunc=trunc), f.v))
    return PotentialFunction(P.n, terms)


def with_gapped_tail(base: PotentialFunction, P: MomentPolytope, u,
                     tail) -> PotentialFunction:
    """Add higher-order tail terms indexed by facet-exponent multisets.

    Each tail entry ``(c, e, rho)`` contributes
    ``c T^{sum_i e_i ell_i(u) + rho} y^{sum_i e_i v_i}`` with all ``e_i``
    nonnegative integers, not all zero, and ``rho > 0``.
    """
    u = [Fraction(x) for x in u]
    ell = P.ell_values(u)
    terms = list(base.terms)
    for c, e, rho in tail:
        e = [int(x) for x in e]
        rho = Fraction(rho)
        if len(e) != P.m:
            raise BadGappedTerm("facet exponent vector has wrong length")
        if any(x < 0 for x in e):
            raise BadGappedTerm("facet exponents must be nonnegative")
        if sum(e) == 0:
            raise BadGappedTerm("at least one facet exponent must be positive")
        if rho <= 0:
            raise BadGappedTerm("energy gap must be positive")
        expvec = tuple(sum(ei * f.v[k] for ei, f in zip(e, P.facets))
                       for k in range(P.n))
        order = sum(ei * li for ei, li in zip(e, ell)) + rho
        terms.append((NovikovSeries.monomial(1, order, mode=base.mode,
                                             tol=base.tol).scale(c), expvec))
    return PotentialFunction(base.n, terms)


def euler_check(P: MomentPolytope, bulk: BulkDeformation, u, N,
                trunc=None, rtol: float = 1e-8):
    """Check the Euler vector-field identity for degree-two weights.

    The weight variable of facet ``i`` is its exponential factor; the
    Euler field applies each weight times the derivative in that weight,
    which regenerates exactly the facet terms.  Returns (equal, residual).
    """
    N = as_exponent(N)
    work_trunc = (N if trunc is None else as_exponent(trunc))
    if work_trunc is not INF:
        work_trunc = work_trunc + 1  # headroom for the mod-T^N comparison
    F = fano_bulk_potential(P, u, bulk, trunc=work_trunc, tol=bulk.tol)
    euler_terms = []
    for i, f in enumerate(P.facets):
        w_i = bulk.exp_factor(i, trunc=work_trunc)
        # derivative in the weight variable: divide the facet term by the
        # weight, inverting through the exponential of the negated entry
        # (the geometric-series inverse amplifies roundoff badly)
        entry = bulk.entry(i)
        unit = entry.unit
        inv_unit = unit if unit == 1 else 1 / unit
        inv_bulk = BulkDeformation({0: BulkEntry(-entry.plus, unit=inv_unit)},
                                   mode=bulk.mode, tol=bulk.tol)
        dF_dw = F.coefficient(f.v) * inv_bulk.exp_factor(0, trunc=work_trunc)
        euler_terms.append((dF_dw * w_i, f.v))
    euler = PotentialFunction(P.n, euler_terms)
    residual = INF
    for c, _ in (euler + _negate(F)).terms:
        c = c.truncate(N)
        for e, a in c.terms:
            # tolerate pruning noise of the float-mode series arithmetic
            if bulk.mode == FLOAT and abs(a) <= rtol:
                continue
            residual = min(residual, e)
    return residual is INF, residual


def _negate(F: PotentialFunction) -> PotentialFunction:
    return PotentialFunction(F.n, [(-c, e) for c, e in F.terms])
