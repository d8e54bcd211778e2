"""Bulk-balancedness decisions, energy bounds, and polytope scans.

A fiber is reported bulk-balanced when its full leading system is
solvable over nonzero complex numbers; otherwise the largest solvable
prefix of levels determines a threshold order, which bounds the
displacement energy from below after the 2*pi unit conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import NoFullFlag
from .leading import leading_equations, level_structure
from .lifting import lift_bulk
from .novikov import INF
from .polytope import MomentPolytope
from .solver import solve, solve_partial

BULK_BALANCED = "BulkBalanced"
PARTIAL_UP_TO = "PartialUpTo"
NO_SOLUTION_FOUND = "NoSolutionFound"
NO_FULL_FLAG = "NoFullFlag"


@dataclass
class FiberReport:
    u: tuple
    status: str
    partial_level: Optional[int] = None     # l0 for PartialUpTo
    certified: Optional[bool] = None        # for NoSolutionFound
    threshold_bound: object = INF           # rational, in area/2pi units
    intersection_bound: int = 0             # 2^n
    witnesses: list = field(default_factory=list)
    lift: Optional[dict] = None             # bulk/point data when verified

    @property
    def balanced(self) -> bool:
        return self.status == BULK_BALANCED

    def to_dict(self) -> dict:
        out = {
            "u": [str(x) for x in self.u],
            "status": self.status,
            "threshold_bound": (
                "inf" if self.threshold_bound is INF
                else str(self.threshold_bound)),
            "intersection_bound": self.intersection_bound,
        }
        if self.partial_level is not None:
            out["partial_level"] = self.partial_level
        if self.certified is not None:
            out["certified"] = self.certified
        if self.witnesses:
            out["witnesses"] = [w.to_dict() for w in self.witnesses]
        if self.lift is not None:
            out["lift"] = self.lift
        return out


def classify_fiber(P: MomentPolytope, u, coefficients=None,
                   lift_order=None, tol: float = 1e-9) -> FiberReport:
    """Decide bulk-balancedness of the fiber over ``u``.

    When the full leading system has a solution the fiber is
    ``BulkBalanced`` and, with ``lift_order`` given, the solution is
    lifted to divisor weights certifying criticality to that order.
    Otherwise the largest solvable level prefix ``l0`` is located and
    the first obstructed level's order becomes the threshold bound.
    """
    u = tuple(Fraction(x) for x in u)
    ls = level_structure(P, u)
    bound = 2 ** P.n
    if ls.K is None:
        report = FiberReport(u, NO_FULL_FLAG, intersection_bound=bound)
        _fill_partial(report, P, u, len(ls.levels), ls, coefficients, tol)
        report.status = NO_FULL_FLAG
        return report

    system = leading_equations(P, u, coefficients=coefficients)
    result = solve(system, tol=tol)
    if result.solutions:
        report = FiberReport(u, BULK_BALANCED, threshold_bound=INF,
                             intersection_bound=bound,
                             witnesses=result.solutions,
                             certified=result.certified)
        if lift_order is not None and coefficients is None:
            witness = result.solutions[0]
            bulk, y, cert = lift_bulk(P, u, witness, lift_order, tol=tol)
            report.lift = {
                "order": str(cert.order),
                "residual_valuation": (
                    "inf" if cert.residual_valuation is INF
                    else str(cert.residual_valuation)),
                "bulk": {
                    str(i): entry.plus.to_records()
                    for i, entry in bulk.items()},
                "y": [[c.real, c.imag] for c in y],
            }
        return report

    report = FiberReport(u, NO_SOLUTION_FOUND, certified=result.certified,
                         intersection_bound=bound)
    _fill_partial(report, P, u, ls.K, ls, coefficients, tol)
    return report


def _fill_partial(report: FiberReport, P, u, top_level, ls, coefficients,
                  tol):
    """Largest solvable prefix of levels and the resulting threshold."""
    l0 = 0
    witnesses = []
    for l in range(top_level - 1, 0, -1):
        partial = solve_partial(P, u, l, coefficients=coefficients, tol=tol)
        if partial.solutions:
            l0 = l
            witnesses = partial.solutions
            break
    report.partial_level = l0
    if witnesses:
        report.status = PARTIAL_UP_TO
        report.witnesses = witnesses
    if l0 + 1 <= len(ls.levels):
        report.threshold_bound = ls.level(l0 + 1).S
    else:
        report.threshold_bound = INF


def scan(P: MomentPolytope, step, row: Optional[dict] = None,
         coefficients=None, tol: float = 1e-9) -> list:
    """Classify every interior grid point with the given rational step.

    ``row`` pins coordinates to fixed values, e.g. ``{2: Fraction(3,10)}``
    scans only the points whose second coordinate is 3/10.
    """
    step = Fraction(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    fixed = {int(k) - 1: Fraction(v) for k, v in (row or {}).items()}
    for axis in fixed:
        if not 0 <= axis < P.n:
            raise ValueError("row constraint names a missing coordinate")
    verts = P.vertices()
    los = [min(v.point[i] for v in verts) for i in range(P.n)]
    his = [max(v.point[i] for v in verts) for i in range(P.n)]

    def axis_values(i):
        if i in fixed:
            return [fixed[i]]
        k0 = int(math.floor(los[i] / step)) + 1
        out = []
        k = k0
        while k * step < his[i]:
            out.append(k * step)
            k += 1
        return out

    reports = []
    grid = [()]
    for i in range(P.n):
        vals = axis_values(i)
        grid = [g + (v,) for g in grid for v in vals]
    for point in grid:
        if P.is_interior(point):
            reports.append(classify_fiber(P, point, coefficients=coefficients,
                                          tol=tol))
    return reports


def balanced_locus(reports) -> list:
    """The fibers a scan found to be bulk-balanced, in scan order."""
    return [r.u for r in reports if r.balanced]


def report_bounds(fr: FiberReport) -> dict:
    """Quantitative consequences of a classification, in both unit styles.

    Orders of the Novikov parameter measure symplectic area divided by
    2*pi; the physical displacement-energy bound carries the 2*pi back.
    """
    threshold = fr.threshold_bound
    if threshold is INF:
        area = "inf"
        physical = "inf"
        physical_value = math.inf
    else:
        area = str(threshold)
        physical = f"2*pi*{threshold}"
        physical_value = 2 * math.pi * float(threshold)
    out = {
        "status": fr.status,
        "intersection_bound": fr.intersection_bound,
        "threshold": {"area_over_2pi": area, "physical": physical,
                      "physical_value": physical_value},
        "displacement_energy_lower_bound": {
            "area_over_2pi": area, "physical": physical,
            "physical_value": physical_value},
    }
    return out
