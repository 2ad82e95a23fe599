"""Euler-like vector fields, the deformation-space flow, and tubular maps.

A vector field sigma on the local pair (R^n, R^p) is Euler-like when it
vanishes on the slice and its normal-block linearization there is the
identity.  The associated field on the deformation space is
W = (1/t) sigma + d/dt; it is integrated directly from this ODE by RK4
(the time component is exact since tdot = 1).  The time-1 slice map
chi built from the flow, extrapolated from small starting parameters,
is the tubular-neighborhood embedding: chi restricted to the slice is
the identity, its normal derivative is the identity, and it carries the
fiberwise scaling generator to sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainViolation, NonConvergence, SliceCrossing
from .expr import SmoothMapExpr, Var, eval_map, from_components, jet_eval
from .pairs import PairDims


@dataclass(frozen=True)
class VectorField:
    """Components of a vector field on the ambient chart (n -> n)."""

    components: SmoothMapExpr
    dims: PairDims

    def __post_init__(self):
        if (
            self.components.input_dim != self.dims.n
            or self.components.output_dim != self.dims.n
        ):
            raise DomainViolation("vector field must map the chart to itself")

    def __call__(self, x) -> np.ndarray:
        return eval_map(self.components, x)


def euler_field(dims: PairDims) -> VectorField:
    """The fiberwise scaling generator: zero on the y-block, x on the x-block."""
    body = tuple(Var(i) * 0.0 for i in range(dims.p)) + tuple(
        Var(dims.p + i) for i in range(dims.q)
    )
    return VectorField(from_components(dims.n, body), dims)


@dataclass(frozen=True)
class EulerLikeReport:
    vanishes_on_Y: bool
    normal_block_is_identity: bool
    max_violation: float

    @property
    def ok(self) -> bool:
        return self.vanishes_on_Y and self.normal_block_is_identity


def is_euler_like(
    sigma: VectorField, slice_samples: int = 64, seed: int = 0, tol: float = 1e-10
) -> EulerLikeReport:
    """Local criterion: sigma(y, 0) = 0 and the x-block of d(sigma_x) at
    (y, 0) equals the identity."""
    from .pairs import sample_slice_points

    dims = sigma.dims
    worst_vanish = 0.0
    worst_lin = 0.0
    for point in sample_slice_points(dims, slice_samples, seed):
        if not sigma.components.in_domain(point):
            continue
        jet = jet_eval(sigma.components, point)
        worst_vanish = max(worst_vanish, float(np.max(np.abs(jet.value), initial=0.0)))
        block = jet.jacobian[dims.p :, dims.p :]
        worst_lin = max(
            worst_lin, float(np.max(np.abs(block - np.eye(dims.q)), initial=0.0))
        )
    return EulerLikeReport(
        worst_vanish <= tol, worst_lin <= tol, max(worst_vanish, worst_lin)
    )


def w_sigma_flow(
    sigma: VectorField, x, s: float, tau: float, step: float | None = None
):
    """Flow of W = (1/t) sigma + d/dt from (x, s) for time tau by RK4.

    Integrates xdot = sigma(x)/t with t(tau') = s + tau' exact; the sign
    of t may not change along the way."""
    x = np.asarray(x, dtype=float).copy()
    s = float(s)
    tau = float(tau)
    if s == 0.0:
        raise SliceCrossing("the flow must start off the t = 0 slice")
    s_end = s + tau
    if s_end == 0.0 or (s > 0) != (s_end > 0):
        raise SliceCrossing("the requested time crosses the t = 0 slice")
    if tau == 0.0:
        return x, s
    max_step = min(abs(s), abs(s_end)) / 20.0
    if step is None:
        step = max_step
    step = min(abs(step), max_step)
    nsteps = max(1, math.ceil(abs(tau) / step))
    h = tau / nsteps

    def rhs(xv, t):
        if not sigma.components.in_domain(xv):
            raise DomainViolation("flow trajectory left the chart domain")
        return sigma(xv) / t

    t = s
    for _ in range(nsteps):
        k1 = rhs(x, t)
        k2 = rhs(x + 0.5 * h * k1, t + 0.5 * h)
        k3 = rhs(x + 0.5 * h * k2, t + 0.5 * h)
        k4 = rhs(x + h * k3, t + h)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return x, s_end


def _flow_geometric(sigma: VectorField, x, t_start: float, t_end: float, steps_per_decade: int = 120):
    """RK4 over a geometric time grid from t_start up to t_end (same sign).

    Near t = 0 the ODE is stiff in wall-clock time but perfectly tame on
    a grid whose spacing shrinks with t, so the step is kept proportional
    to the current t."""
    x = np.asarray(x, dtype=float).copy()
    t = float(t_start)
    ratio = 10.0 ** (1.0 / steps_per_decade)
    while t < t_end:
        t_next = min(t * ratio, t_end)
        h = t_next - t

        def rhs(xv, tv):
            if not sigma.components.in_domain(xv):
                raise DomainViolation("flow trajectory left the chart domain")
            return sigma(xv) / tv

        k1 = rhs(x, t)
        k2 = rhs(x + 0.5 * h * k1, t + 0.5 * h)
        k3 = rhs(x + 0.5 * h * k2, t + 0.5 * h)
        k4 = rhs(x + h * k3, t + h)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t_next
    return x


DEFAULT_EPS_SCHEDULE = (1e-2, 1e-3, 1e-4)


def tubular_from_euler(
    sigma: VectorField,
    y,
    xi,
    eps_schedule=DEFAULT_EPS_SCHEDULE,
    tol: float = 1e-4,
) -> np.ndarray:
    """The tubular embedding chi(y, xi): flow W from ((y, eps*xi), eps)
    to t = 1 and extrapolate eps -> 0 with a first-order model."""
    dims = sigma.dims
    y = np.atleast_1d(np.asarray(y, dtype=float))
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if float(np.linalg.norm(xi)) == 0.0:
        return dims.join(y, np.zeros(dims.q))
    values = []
    for eps in eps_schedule:
        start = dims.join(y, eps * xi)
        values.append(_flow_geometric(sigma, start, eps, 1.0))
    extrapolants = []
    for (e1, v1), (e2, v2) in zip(
        zip(eps_schedule, values), list(zip(eps_schedule, values))[1:]
    ):
        extrapolants.append((e1 * v2 - e2 * v1) / (e1 - e2))
    if len(extrapolants) >= 2:
        drift = float(np.max(np.abs(extrapolants[-1] - extrapolants[-2])))
        if drift > tol:
            raise NonConvergence(
                f"extrapolants differ by {drift:.3e} > {tol:.1e}"
            )
    return extrapolants[-1]


def normal_derivative_of_chi(sigma: VectorField, y, h: float = 1e-3) -> np.ndarray:
    """Central finite difference of chi in the xi directions at xi = 0."""
    dims = sigma.dims
    out = np.empty((dims.q, dims.q))
    for j in range(dims.q):
        e = np.zeros(dims.q)
        e[j] = h
        hi = tubular_from_euler(sigma, y, e)
        lo = tubular_from_euler(sigma, y, -e)
        out[:, j] = (hi - lo)[dims.p :] / (2.0 * h)
    return out


def chi_relatedness_residual(sigma: VectorField, y, xi, h: float = 1e-4) -> float:
    """Residual of sigma(chi(y, xi)) = d(chi)(y, xi) . E(y, xi) where E is
    the fiberwise scaling generator (0, xi); d(chi) by central FD."""
    dims = sigma.dims
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    chi = tubular_from_euler(sigma, y, xi)
    lhs = sigma(chi)
    # directional derivative of chi along (0, xi) at (y, xi)
    hi = tubular_from_euler(sigma, y, xi * (1.0 + h))
    lo = tubular_from_euler(sigma, y, xi * (1.0 - h))
    rhs = (hi - lo) / (2.0 * h)
    return float(np.max(np.abs(lhs - rhs)))
