"""Chart-level blow-up of a pair of vector bundles.

The total space is a trivialized bundle over a local pair (R^n, R^p):
fiber coordinates upsilon in R^{k+l} together with a frame map
(u, upsilon) -> (f, e) that is linear in upsilon and invertible on each
fiber.  The sub-bundle sits over the slice and is cut out by
(x, e) = 0.  Exceptional fiber elements are stored directly by their
adapted-chart coordinates (phi, eps) = (f-value, e-derivative value);
this chart-block splitting is the convention for the implicit
complement choice.  The r-th induced chart divides the e-block by the
r-th normal coordinate (body) or its derivative along the direction
(exceptional), and is fiberwise linear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatch, NotAdapted, OutsideChart
from .expr import SmoothMapExpr, Var, compose, eval_map, from_components, jet_eval
from .pairs import MapOfPairs, PairDims, numeric_rank
from .blowup import Body, Exceptional, chart_phi


@dataclass(frozen=True)
class VbPairModel:
    """A trivialized vector-bundle pair over a local base pair.

    frame: (u, upsilon) in R^{n + k + l} -> (f, e) in R^{k + l}, linear
    in upsilon.  The sub-bundle is {x(u) = 0, e(u, upsilon) = 0}.
    """

    base: PairDims
    rank_f: int  # k: rank of the sub-bundle's fiber
    rank_e: int  # l: rank of the complement block

    frame: SmoothMapExpr

    def __post_init__(self):
        total = self.rank_f + self.rank_e
        if self.frame.input_dim != self.base.n + total or self.frame.output_dim != total:
            raise ArityMismatch("frame arity does not match base and fiber ranks")

    @property
    def fiber_rank(self) -> int:
        return self.rank_f + self.rank_e

    def frame_value(self, u, upsilon) -> np.ndarray:
        """(f, e) at the bundle point (u, upsilon)."""
        return eval_map(self.frame, np.concatenate([np.asarray(u, float), np.asarray(upsilon, float)]))

    def f_of(self, u, upsilon) -> np.ndarray:
        return self.frame_value(u, upsilon)[: self.rank_f]

    def e_of(self, u, upsilon) -> np.ndarray:
        return self.frame_value(u, upsilon)[self.rank_f :]


def trivial_model(base: PairDims, rank_f: int, rank_e: int) -> VbPairModel:
    """Constant frame: (f, e) = upsilon split into its two blocks."""
    total = rank_f + rank_e
    body = tuple(Var(base.n + i) for i in range(total))
    return VbPairModel(base, rank_f, rank_e, SmoothMapExpr(base.n + total, total, body))


@dataclass(frozen=True)
class VbBody:
    """A bundle element over an off-center base point."""

    u: np.ndarray
    upsilon: np.ndarray


@dataclass(frozen=True)
class VbExceptional:
    """An exceptional fiber element over [y, xi].

    phi is the f-block value of the underlying sub-bundle point, eps is
    the e-derivative value along the (lift of the) direction xi; the
    pair (phi, eps) are exactly the fiber coordinates of the normal
    bundle of the bundle pair in the adapted chart.
    """

    y: np.ndarray
    xi: np.ndarray
    phi: np.ndarray
    eps: np.ndarray


def vb_chart(model: VbPairModel, r: int, z) -> np.ndarray:
    """The r-th induced vector-bundle chart (y, x~_r, f, e~_r)."""
    dims = model.base
    if not 1 <= r <= dims.q:
        raise OutsideChart(f"chart index {r} out of range 1..{dims.q}")
    k = r - 1
    if isinstance(z, VbBody):
        y, xb = dims.split(z.u)
        if xb[k] == 0.0:
            raise OutsideChart(f"base point has x-component {r} = 0")
        base_coords = chart_phi(r, Body(np.asarray(z.u, float), dims))
        fe = model.frame_value(z.u, z.upsilon)
        f_part = fe[: model.rank_f]
        e_part = fe[model.rank_f :] / xb[k]
        return np.concatenate([base_coords, f_part, e_part])
    if isinstance(z, VbExceptional):
        if abs(z.xi[k]) <= 1e-12:
            raise OutsideChart(f"exceptional direction has component {r} ~ 0")
        base_coords = chart_phi(r, Exceptional(z.y, z.xi, dims))
        return np.concatenate([base_coords, z.phi, z.eps / z.xi[k]])
    raise TypeError(f"not a vector-bundle blow-up point: {z!r}")


@dataclass(frozen=True)
class LinearityReport:
    max_violation: float
    ok: bool


def fiber_linearity_check(
    model: VbPairModel,
    r: int,
    base_point,
    samples: int = 32,
    seed: int = 0,
    tol: float = 1e-11,
) -> LinearityReport:
    """Additivity and homogeneity of the fiber part of the r-th chart.

    ``base_point`` is either a Body/Exceptional of the base blow-up; the
    fiber is sampled accordingly."""
    rng = np.random.default_rng(seed)
    total = model.fiber_rank
    worst = 0.0

    def fiber_part(z):
        return vb_chart(model, r, z)[model.base.n :]

    for _ in range(samples):
        if isinstance(base_point, Body):
            u = base_point.x
            a = rng.uniform(-1.0, 1.0, size=total)
            b = rng.uniform(-1.0, 1.0, size=total)
            lam = float(rng.uniform(-2.0, 2.0))
            fa = fiber_part(VbBody(u, a))
            fb = fiber_part(VbBody(u, b))
            fsum = fiber_part(VbBody(u, a + b))
            fscale = fiber_part(VbBody(u, lam * a))
            worst = max(worst, float(np.max(np.abs(fsum - fa - fb))))
            worst = max(worst, float(np.max(np.abs(fscale - lam * fa))))
        elif isinstance(base_point, Exceptional):
            y, xi = base_point.y, base_point.xi_dir
            pa, pb = rng.uniform(-1.0, 1.0, size=(2, model.rank_f))
            ea, eb = rng.uniform(-1.0, 1.0, size=(2, model.rank_e))
            lam = float(rng.uniform(-2.0, 2.0))
            fa = fiber_part(VbExceptional(y, xi, pa, ea))
            fb = fiber_part(VbExceptional(y, xi, pb, eb))
            fsum = fiber_part(VbExceptional(y, xi, pa + pb, ea + eb))
            fscale = fiber_part(VbExceptional(y, xi, lam * pa, lam * ea))
            worst = max(worst, float(np.max(np.abs(fsum - fa - fb))))
            worst = max(worst, float(np.max(np.abs(fscale - lam * fa))))
        else:
            raise TypeError(f"not a blow-up base point: {base_point!r}")
    return LinearityReport(worst, worst <= tol)


def section_blowup(model: VbPairModel, alpha: SmoothMapExpr, z, check: bool = True):
    """Blow up a section with values in the sub-bundle along the slice.

    alpha: u in R^n -> upsilon in R^{k+l} in trivialization coordinates.
    Body points carry the section value; at an exceptional point [y, xi]
    the f-coordinate is the f-value at (y, 0) and the e-coordinate is
    the normal derivative of u -> e(u, alpha(u)) contracted with xi.
    """
    dims = model.base
    if alpha.input_dim != dims.n or alpha.output_dim != model.fiber_rank:
        raise ArityMismatch("section arity does not match the model")
    id_and_alpha = from_components(
        dims.n, tuple(Var(i) for i in range(dims.n)) + alpha.body, alpha.guards
    )
    e_along = compose(
        from_components(
            model.frame.input_dim,
            model.frame.body[model.rank_f :],
            model.frame.guards,
        ),
        id_and_alpha,
    )
    if check:
        # adapted: e(v, alpha(v)) = 0 on the slice.
        e_pair = MapOfPairs(
            from_components(
                dims.n,
                tuple(Var(i) for i in range(dims.p)) + e_along.body,
                e_along.guards,
            ),
            dims,
            PairDims(dims.p + model.rank_e, dims.p),
        )
        from .pairs import check_adapted

        report = check_adapted(e_pair, samples=64)
        if not report.ok:
            raise NotAdapted(
                f"section does not take sub-bundle values on the slice "
                f"(worst violation {report.worst_violation:.3e})"
            )
    if isinstance(z, Body):
        return VbBody(z.x.copy(), eval_map(alpha, z.x))
    if isinstance(z, Exceptional):
        slice_point = dims.join(z.y, np.zeros(dims.q))
        phi = model.f_of(slice_point, eval_map(alpha, slice_point))
        jac = jet_eval(e_along, slice_point).jacobian
        eps = jac[:, dims.p :] @ z.xi_dir
        return VbExceptional(z.y.copy(), z.xi_dir.copy(), phi, eps)
    raise TypeError(f"not a blow-up point: {z!r}")


def tangent_anchor(z: Exceptional, eta, chart_i: int) -> np.ndarray:
    """Push a normal-bundle tangent vector down to the blow-up chart.

    For the pair (R^n, {0}) an exceptional point [xi] has tangent
    representatives eta in R^n; the image in the i-th projective chart
    is the derivative of the quotient projection,
    d(xi_j/xi_i) = eta_j/xi_i - xi_j eta_i/xi_i^2, with slot i zero.
    The kernel is exactly the radial line through xi."""
    dims = z.dims
    if dims.p != 0:
        raise ArityMismatch("the anchor example uses a point center")
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (dims.q,):
        raise ArityMismatch("tangent representative has the wrong dimension")
    if not 1 <= chart_i <= dims.q:
        raise OutsideChart(f"chart index {chart_i} out of range 1..{dims.q}")
    k = chart_i - 1
    xi = z.xi_dir
    if abs(xi[k]) <= 1e-12:
        raise OutsideChart(f"exceptional direction has component {chart_i} ~ 0")
    out = eta / xi[k] - xi * (eta[k] / (xi[k] * xi[k]))
    out[k] = 0.0
    return out


def tangent_anchor_rank(z: Exceptional, chart_i: int) -> int:
    """Numeric rank of the anchor at a fixed exceptional point."""
    q = z.dims.q
    cols = [tangent_anchor(z, np.eye(q)[j], chart_i) for j in range(q)]
    return numeric_rank(np.column_stack(cols))
