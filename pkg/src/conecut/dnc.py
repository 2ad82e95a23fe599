"""Deformation to the normal cone in chart coordinates.

Chart points are triples (y, xi, t) with (y, t*xi) in the underlying
chart domain.  The correspondence psi identifies t = 0 points with
normal vectors and t != 0 points with ambient points; an adapted map h
induces the map

    h~(y, xi, t) = (h1(y, t xi), t^{-1} h2(y, t xi), t)      for t != 0,
    h~(y, xi, 0) = (h1(y, 0),    dN h(y) xi,         0)      at t = 0,

the multiplicative group acts by lambda . (y, xi, t) = (y, xi/lambda,
lambda t), and t itself is a submersion whose fibers are the slices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatch, DomainViolation, NotVanishing
from .pairs import MapOfPairs, PairDims, normal_derivative, require_adapted
from .expr import SmoothMapExpr, Var


@dataclass(frozen=True)
class DncPoint:
    """A chart point (y, xi, t); the ambient shadow is (y, t*xi)."""

    y: np.ndarray
    xi: np.ndarray
    t: float

    @staticmethod
    def of(y, xi, t) -> "DncPoint":
        return DncPoint(
            np.atleast_1d(np.asarray(y, dtype=float)),
            np.atleast_1d(np.asarray(xi, dtype=float)),
            float(t),
        )

    @property
    def dims(self) -> PairDims:
        return PairDims(len(self.y) + len(self.xi), len(self.y))

    def ambient(self) -> np.ndarray:
        """The underlying chart point (y, t*xi)."""
        return np.concatenate([self.y, self.t * self.xi])

    def close_to(self, other: "DncPoint", tol: float) -> bool:
        return (
            np.max(np.abs(self.y - other.y), initial=0.0) <= tol
            and np.max(np.abs(self.xi - other.xi), initial=0.0) <= tol
            and abs(self.t - other.t) <= tol
        )


@dataclass(frozen=True)
class NormalSlice:
    """A point (y, xi) of the t = 0 slice (a normal vector)."""

    y: np.ndarray
    xi: np.ndarray


@dataclass(frozen=True)
class Body:
    """An ambient point x at parameter t != 0."""

    x: np.ndarray
    t: float

    def __post_init__(self):
        if self.t == 0.0:
            raise ArityMismatch("Body points require t != 0")


def check_domain(z: DncPoint, chart_domain=None):
    """Membership in the chart domain: (y, t*xi) must lie in it."""
    if chart_domain is not None and not chart_domain(z.ambient()):
        raise DomainViolation(
            f"(y, t*xi) = {z.ambient().tolist()} outside the chart domain"
        )


def psi(z: DncPoint, chart_domain=None):
    """Identify a chart point with a normal vector (t = 0) or a body point."""
    check_domain(z, chart_domain)
    if z.t == 0.0:
        return NormalSlice(z.y.copy(), z.xi.copy())
    return Body(z.ambient(), z.t)


def psi_inv(point, dims: PairDims | None = None) -> DncPoint:
    """Inverse of psi; Body points decompose in adapted coordinates."""
    if isinstance(point, NormalSlice):
        return DncPoint(point.y.copy(), point.xi.copy(), 0.0)
    if isinstance(point, Body):
        if dims is None:
            raise ArityMismatch("psi_inv on a Body point needs the pair dimensions")
        y, x = dims.split(point.x)
        return DncPoint(y, x / point.t, point.t)
    raise TypeError(f"not an abstract DNC point: {point!r}")


def rx_action(lam: float, z: DncPoint) -> DncPoint:
    """The scaling action lambda . (y, xi, t) = (y, xi/lambda, lambda*t)."""
    if lam == 0.0:
        raise DomainViolation("the scaling action needs lambda != 0")
    return DncPoint(z.y.copy(), z.xi / lam, lam * z.t)


def hat_t(z: DncPoint) -> float:
    """The canonical submersion; its fibers are the fixed-t slices."""
    return z.t


class DncMap:
    """The induced map h~ of an adapted map of pairs h."""

    def __init__(self, h: MapOfPairs, check: bool = True, seed: int = 0):
        if check:
            require_adapted(h, seed=seed)
        self.h = h

    def __call__(self, z: DncPoint) -> DncPoint:
        h = self.h
        if z.t == 0.0:
            point = h.source.join(z.y, np.zeros(h.source.q))
            value = h.f(point)
            dn = normal_derivative(h, z.y)
            return DncPoint(value[: h.target.p], dn @ z.xi, 0.0)
        value = h.f(z.ambient())
        y2, x2 = h.target.split(value)
        return DncPoint(y2, x2 / z.t, z.t)


def dnc_map(h: MapOfPairs, check: bool = True, seed: int = 0) -> DncMap:
    return DncMap(h, check=check, seed=seed)


_KINDS = ("hat_f0", "dnc_f1", "hat_t")


def check_vanishes_on_slice(
    f: SmoothMapExpr, dims: PairDims, samples: int = 128, seed: int = 0, tol: float = 1e-12
):
    """Sampled check that a scalar function vanishes on the slice {x = 0}."""
    from .pairs import sample_slice_points

    worst = 0.0
    for point in sample_slice_points(dims, samples, seed):
        if not f.in_domain(point):
            continue
        worst = max(worst, abs(float(f(point)[0])))
    if worst > tol:
        raise NotVanishing(
            f"function does not vanish on the slice (worst violation {worst:.3e})"
        )


def eval_function_class(
    kind: str, f: SmoothMapExpr, dims: PairDims, z: DncPoint, check: bool = True
) -> float:
    """The three canonical smooth functions on DNC built from chart data.

    hat_f0: pullback of f along the shadow, (y, xi, t) -> f(y, t*xi).
    dnc_f1: for f vanishing on the slice, the smooth quotient
            (y, xi, t) -> f(y, t*xi)/t, extended by dN f(y) xi at t = 0.
    hat_t:  the submersion (y, xi, t) -> t.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown function class {kind!r}; expected one of {_KINDS}")
    if kind == "hat_t":
        return z.t
    if f.output_dim != 1 or f.input_dim != dims.n:
        raise ArityMismatch("function classes need a scalar function on the ambient chart")
    if kind == "hat_f0":
        return float(f(z.ambient())[0])
    # dnc_f1
    if check:
        check_vanishes_on_slice(f, dims)
    pair = MapOfPairs(
        SmoothMapExpr(
            dims.n,
            dims.p + 1,
            tuple(Var(i) for i in range(dims.p)) + (f.body[0],),
            f.guards,
        ),
        dims,
        PairDims(dims.p + 1, dims.p),
    )
    if z.t == 0.0:
        dn = normal_derivative(pair, z.y)
        return float(dn[0] @ z.xi)
    return float(f(z.ambient())[0]) / z.t
