"""The blow-up of a pair in three interchangeable models.

Quotient model: canonical representatives of scaling orbits — an
Exceptional point [y, xi] carries a unit direction with its first
nonzero component positive, a Body point carries the ambient point x
(the t = 1 representative).  Algebraic model: the incidence submanifold
{x_i y_j = y_i x_j} of R^n x RP^{n-1}.  Polar model: the double cover
R^p x S^{q-1} x R modulo (x, theta, t) ~ (x, -theta, -t).

Also here: the q projective charts with their transitions, the
blow-down, induced maps of blow-ups, strict transforms of plane curves,
product splitting, the open inclusion of the deformation space into a
one-higher blow-up, and the identification of the blown-up two-sphere
with the projective plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ArityMismatch,
    CenterPoint,
    DegenerateCurve,
    NotImmersive,
    OutsideBlupF,
    OutsideChart,
)
from .pairs import MapOfPairs, PairDims, normal_derivative, require_adapted
from .dnc import DncPoint
from .ring import MultiPoly, vanishing_order

# Representatives are rounded at this many decimals so that orbit
# equality becomes bitwise equality.
ROUND_DECIMALS = 14
CHART_TOL = 1e-12
BLUP_F_RTOL = 1e-10


def _round(a: np.ndarray) -> np.ndarray:
    out = np.round(np.asarray(a, dtype=float), ROUND_DECIMALS)
    out[out == 0.0] = 0.0  # normalize -0.0
    return out


def canonical_direction(xi) -> np.ndarray:
    """Unit vector with first nonzero component positive, rounded."""
    xi = np.asarray(xi, dtype=float)
    norm = float(np.linalg.norm(xi))
    if norm == 0.0:
        raise CenterPoint("zero vector has no direction")
    u = xi / norm
    for v in u:
        if abs(v) > 10.0**-ROUND_DECIMALS:
            if v < 0:
                u = -u
            break
    return _round(u)


@dataclass(frozen=True)
class Exceptional:
    """A point [y, xi] of the exceptional divisor, canonical direction."""

    y: np.ndarray
    xi_dir: np.ndarray
    dims: PairDims

    @property
    def is_exceptional(self) -> bool:
        return True


@dataclass(frozen=True)
class Body:
    """An off-center ambient point, the t = 1 orbit representative."""

    x: np.ndarray
    dims: PairDims

    @property
    def is_exceptional(self) -> bool:
        return False


@dataclass(frozen=True)
class PolarPoint:
    """Canonical representative (x, theta, t) of the polar double quotient."""

    x: np.ndarray
    theta: np.ndarray
    t: float


@dataclass(frozen=True)
class AlgebraicPoint:
    """A point (x, [line]) of the incidence submanifold, center a point."""

    x: np.ndarray
    line: np.ndarray


def canonicalize(y, xi, t, dims: PairDims):
    """Canonical representative of the scaling orbit of (y, xi, t)."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    t = float(t)
    if y.shape != (dims.p,) or xi.shape != (dims.q,):
        raise ArityMismatch("block shapes do not match the pair dimensions")
    if t == 0.0:
        return Exceptional(_round(y), canonical_direction(xi), dims)
    x_block = t * xi
    if float(np.linalg.norm(x_block)) == 0.0:
        raise CenterPoint("orbit meets the center: t != 0 with t*xi = 0")
    return Body(_round(np.concatenate([y, x_block])), dims)


def canonicalize_point(point: DncPoint, dims: PairDims):
    return canonicalize(point.y, point.xi, point.t, dims)


def from_ambient(x, dims: PairDims) -> Body:
    """The body point over an off-center ambient point."""
    x = np.asarray(x, dtype=float)
    y, xb = dims.split(x)
    if float(np.linalg.norm(xb)) == 0.0:
        raise CenterPoint("ambient point lies on the center")
    return Body(_round(x), dims)


def blowdown(z) -> np.ndarray:
    """Body points map to themselves, exceptional points down to the center."""
    if isinstance(z, Body):
        return z.x.copy()
    if isinstance(z, Exceptional):
        return z.dims.join(z.y, np.zeros(z.dims.q))
    raise TypeError(f"not a blow-up point: {z!r}")


def chart_phi(i: int, z) -> np.ndarray:
    """The i-th projective chart (1-based i in 1..q)."""
    dims = z.dims
    if not 1 <= i <= dims.q:
        raise OutsideChart(f"chart index {i} out of range 1..{dims.q}")
    k = i - 1
    if isinstance(z, Exceptional):
        xi = z.xi_dir
        if abs(xi[k]) <= CHART_TOL:
            raise OutsideChart(f"exceptional direction has component {i} ~ 0")
        w = xi / xi[k]
        w[k] = 0.0
        return np.concatenate([z.y, w])
    if isinstance(z, Body):
        y, xb = dims.split(z.x)
        if xb[k] == 0.0:
            raise OutsideChart(f"body point has x-component {i} = 0")
        w = xb / xb[k]
        w[k] = xb[k]
        return np.concatenate([y, w])
    raise TypeError(f"not a blow-up point: {z!r}")


def chart_phi_inv(i: int, w, dims: PairDims):
    """Inverse of the i-th chart on its image."""
    if not 1 <= i <= dims.q:
        raise OutsideChart(f"chart index {i} out of range 1..{dims.q}")
    w = np.asarray(w, dtype=float)
    if w.shape != (dims.n,):
        raise ArityMismatch(f"chart point of shape {w.shape} for ambient dim {dims.n}")
    k = i - 1
    y, s = dims.split(w)
    if s[k] == 0.0:
        xi = s.copy()
        xi[k] = 1.0
        return Exceptional(_round(y), canonical_direction(xi), dims)
    xb = s[k] * s
    xb[k] = s[k]
    return Body(_round(np.concatenate([y, xb])), dims)


def transition(i: int, j: int, w, dims: PairDims) -> np.ndarray:
    """Chart transition: the i-th chart of the point with j-th chart value w."""
    return chart_phi(i, chart_phi_inv(j, w, dims))


def blowup_map(f: MapOfPairs, z, check: bool = True):
    """The induced map of blow-ups, defined away from the excluded locus."""
    if check:
        require_adapted(f)
    if isinstance(z, Body):
        value = f(z.x)
        _, x2 = f.target.split(value)
        if float(np.linalg.norm(x2)) <= BLUP_F_RTOL * (1.0 + float(np.linalg.norm(value))):
            raise OutsideBlupF("body point maps into the target submanifold")
        return Body(_round(value), f.target)
    if isinstance(z, Exceptional):
        dn = normal_derivative(f, z.y)
        image = dn @ z.xi_dir
        scale = float(np.linalg.norm(dn, ord=2)) * float(np.linalg.norm(z.xi_dir))
        if float(np.linalg.norm(image)) <= BLUP_F_RTOL * max(scale, 1e-300):
            raise OutsideBlupF("normal derivative kills the exceptional direction")
        y2 = f(f.source.join(z.y, np.zeros(f.source.q)))[: f.target.p]
        return Exceptional(_round(y2), canonical_direction(image), f.target)
    raise TypeError(f"not a blow-up point: {z!r}")


# -- algebraic model (center a point) ---------------------------------


def to_algebraic(z) -> AlgebraicPoint:
    """Embedding into R^n x RP^{n-1} for the pair (R^n, {0})."""
    if z.dims.p != 0:
        raise ArityMismatch("the algebraic model is for a point center")
    if isinstance(z, Body):
        return AlgebraicPoint(z.x.copy(), canonical_direction(z.x))
    return AlgebraicPoint(np.zeros(z.dims.n), z.xi_dir.copy())


def from_algebraic(a: AlgebraicPoint, dims: PairDims):
    if dims.p != 0:
        raise ArityMismatch("the algebraic model is for a point center")
    if float(np.linalg.norm(a.x)) == 0.0:
        return Exceptional(np.zeros(0), canonical_direction(a.line), dims)
    return Body(_round(np.asarray(a.x, dtype=float)), dims)


def algebraic_relations_residual(a: AlgebraicPoint) -> float:
    """Max violation of the incidence relations x_i l_j = l_i x_j."""
    x = np.asarray(a.x, dtype=float)
    l = np.asarray(a.line, dtype=float)
    return float(np.max(np.abs(np.outer(x, l) - np.outer(l, x)), initial=0.0))


# -- polar model -------------------------------------------------------


def canonical_polar(x, theta, t) -> PolarPoint:
    """Canonical representative under (x, theta, t) ~ (x, -theta, -t)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    theta = np.asarray(theta, dtype=float)
    norm = float(np.linalg.norm(theta))
    if norm == 0.0:
        raise CenterPoint("polar direction must be nonzero")
    theta = theta / norm
    t = float(t) * norm
    for v in theta:
        if abs(v) > 10.0**-ROUND_DECIMALS:
            if v < 0:
                theta = -theta
                t = -t
            break
    return PolarPoint(_round(x), _round(theta), float(np.round(t, ROUND_DECIMALS)))


def to_polar(z) -> PolarPoint:
    """Quotient-model to polar-model conversion in the identity chart."""
    if isinstance(z, Exceptional):
        return canonical_polar(z.y, z.xi_dir, 0.0)
    if isinstance(z, Body):
        y, xb = z.dims.split(z.x)
        r = float(np.linalg.norm(xb))
        return canonical_polar(y, xb / r, r)
    raise TypeError(f"not a blow-up point: {z!r}")


def from_polar(pp: PolarPoint, dims: PairDims):
    if pp.t == 0.0:
        return Exceptional(_round(pp.x), canonical_direction(pp.theta), dims)
    return Body(_round(np.concatenate([pp.x, pp.t * pp.theta])), dims)


def polar_map(h: MapOfPairs, z: PolarPoint, check: bool = True) -> PolarPoint:
    """The induced map on the polar model (two-branch formula)."""
    if check:
        require_adapted(h)
        rng = np.random.default_rng(0)
        for _ in range(16):
            y = rng.uniform(-1.0, 1.0, size=h.source.p)
            dn = normal_derivative(h, y)
            if np.linalg.matrix_rank(dn) < h.source.q:
                raise NotImmersive("normal derivative has a kernel on the slice")
    if z.t == 0.0:
        dn = normal_derivative(h, z.x)
        image = dn @ z.theta
        norm = float(np.linalg.norm(image))
        if norm == 0.0:
            raise NotImmersive("normal derivative kills the polar direction")
        y2 = h(h.source.join(z.x, np.zeros(h.source.q)))[: h.target.p]
        return canonical_polar(y2, image / norm, 0.0)
    value = h(h.source.join(z.x, z.t * z.theta))
    y2, h2 = h.target.split(value)
    norm = float(np.linalg.norm(h2))
    if norm == 0.0:
        raise OutsideChart("image lies on the target submanifold")
    sign = 1.0 if z.t > 0 else -1.0
    return canonical_polar(y2, sign * h2 / norm, sign * norm)


# -- products and the deformation space as an open subset --------------


def product_split(z, factor_dims: PairDims, m_dim: int):
    """Split a blow-up point of (X x M, Y x M) into (point of Blup(X, Y), m).

    Adapted coordinates of the product are ((y, m), x): the M-block sits
    at the end of the y-block, the normal block is unchanged.
    """
    dims = z.dims
    if dims.p != factor_dims.p + m_dim or dims.q != factor_dims.q:
        raise ArityMismatch("product dimensions do not match")
    if isinstance(z, Exceptional):
        return (
            Exceptional(z.y[: factor_dims.p].copy(), z.xi_dir.copy(), factor_dims),
            z.y[factor_dims.p :].copy(),
        )
    if isinstance(z, Body):
        y, xb = dims.split(z.x)
        return (
            Body(np.concatenate([y[: factor_dims.p], xb]), factor_dims),
            y[factor_dims.p :].copy(),
        )
    raise TypeError(f"not a blow-up point: {z!r}")


def product_join(z, m, factor_dims: PairDims):
    """Inverse of product_split."""
    m = np.atleast_1d(np.asarray(m, dtype=float))
    dims = PairDims(factor_dims.n + len(m), factor_dims.p + len(m))
    if isinstance(z, Exceptional):
        return Exceptional(np.concatenate([z.y, _round(m)]), z.xi_dir.copy(), dims)
    if isinstance(z, Body):
        y, xb = z.dims.split(z.x)
        return Body(np.concatenate([y, _round(m), xb]), dims)
    raise TypeError(f"not a blow-up point: {z!r}")


def dnc_as_open_subset(z: DncPoint):
    """Open inclusion of the deformation space into Blup(X x R, Y x {0}).

    The target pair has ambient (y, x, t) and submanifold {(x, t) = 0};
    a t = 0 chart point (y, xi, 0) lands on the exceptional divisor with
    direction (xi, 1), a body point (y, xi, t) lands at ((y, t xi), t)."""
    dims = PairDims(z.dims.n + 1, z.dims.p)
    if z.t == 0.0:
        return Exceptional(
            _round(z.y), canonical_direction(np.append(z.xi, 1.0)), dims
        )
    return Body(_round(np.concatenate([z.y, z.t * z.xi, [z.t]])), dims)


# -- strict transform of plane curves ---------------------------------


def strict_transform_curve(g: MultiPoly, chart: int = 1):
    """Resolve a plane curve through the origin in one blow-up chart.

    ``g`` is a polynomial in (x, y) as a MultiPoly with p = 0, q = 2.
    Chart 1 has coordinates (x, s) with y = x s; chart 2 has (s, y) with
    x = s y.  The total transform is divided by the maximal power of the
    exceptional coordinate; returns the strict transform and the real
    roots (with multiplicities) of its restriction to the exceptional
    divisor.
    """
    if g.is_zero():
        raise DegenerateCurve("the zero polynomial has no strict transform")
    if (g.p, g.q) != (0, 2):
        raise ArityMismatch("plane curves use two x-block variables")
    if g.evaluate([0, 0]) != 0:
        raise DegenerateCurve("the curve must pass through the origin")
    if chart not in (1, 2):
        raise OutsideChart("plane-curve charts are 1 and 2")
    u = MultiPoly.var(0, 2, 0)
    s = MultiPoly.var(0, 2, 1)
    if chart == 1:
        # (x, y) -> (u, u*s): exceptional coordinate is u (variable 0).
        total = g.substitute([u, u * s])
        exc_index = 0
    else:
        # (x, y) -> (u*s, s)... chart 2 coords (u, s) with x = u*s? Keep
        # symmetric convention: coordinates (u, s), x = u*s, y = s.
        total = g.substitute([u * s, s])
        exc_index = 1
    m = min(e[exc_index] for e in total.terms)
    strict = MultiPoly(
        0,
        2,
        {
            tuple(e - m if i == exc_index else e for i, e in enumerate(exps)): c
            for exps, c in total.terms.items()
        },
    )
    # Restriction to the exceptional divisor {exceptional coordinate = 0},
    # a univariate polynomial in the remaining coordinate.
    other = 1 - exc_index
    restricted: dict[int, float] = {}
    for exps, c in strict.terms.items():
        if exps[exc_index] == 0:
            restricted[exps[other]] = restricted.get(exps[other], 0.0) + float(c)
    if not restricted:
        return strict, []
    degree = max(restricted)
    coeffs = [restricted.get(k, 0.0) for k in range(degree, -1, -1)]
    if degree == 0:
        return strict, []
    roots = np.roots(coeffs)
    real = sorted(
        float(np.round(r.real, 12)) for r in roots if abs(r.imag) <= 1e-9
    )
    out: list[tuple[float, int]] = []
    for r in real:
        if out and out[-1][0] == r:
            out[-1] = (r, out[-1][1] + 1)
        else:
            out.append((r, 1))
    return strict, out


# -- the blown-up two-sphere and the projective plane ------------------


def _stereo_south(x: np.ndarray) -> np.ndarray:
    return np.array([x[0], x[1]]) / (1.0 + x[2])


def _stereo_north(x: np.ndarray) -> np.ndarray:
    return np.array([x[0], x[1]]) / (1.0 - x[2])


def _stereo_south_inv(u: np.ndarray) -> np.ndarray:
    r2 = float(u @ u)
    return np.array([2 * u[0], 2 * u[1], 1.0 - r2]) / (1.0 + r2)


def _stereo_north_inv(u: np.ndarray) -> np.ndarray:
    r2 = float(u @ u)
    return np.array([2 * u[0], 2 * u[1], r2 - 1.0]) / (1.0 + r2)


@dataclass(frozen=True)
class SphereBody:
    """A sphere point away from the north pole +1 = (0, 0, 1)."""

    x: np.ndarray


@dataclass(frozen=True)
class SphereExceptional:
    """A tangent direction (xi0, xi1, 0) at the north pole."""

    xi: np.ndarray  # length 2: the (xi0, xi1) components


def sphere_rp2_map(z) -> np.ndarray:
    """The diffeomorphism onto the projective plane, as canonical
    homogeneous coordinates [a0 : a1 : a2]."""
    if isinstance(z, SphereExceptional):
        return canonical_direction(np.array([z.xi[0], z.xi[1], 0.0]))
    if isinstance(z, SphereBody):
        x = np.asarray(z.x, dtype=float)
        return canonical_direction(np.array([x[0], x[1], 1.0 - x[2]]))
    raise TypeError(f"not a blown-up sphere point: {z!r}")


def sphere_rp2_inv(a) -> "SphereBody | SphereExceptional":
    """Inverse of sphere_rp2_map on canonical homogeneous coordinates."""
    a = np.asarray(a, dtype=float)
    if a[2] == 0.0:
        return SphereExceptional(np.array([a[0], a[1]]))
    a = a / a[2]
    a0, a1 = a[0], a[1]
    d = a0 * a0 + a1 * a1 + 1.0
    return SphereBody(np.array([2 * a0 / d, 2 * a1 / d, (a0 * a0 + a1 * a1 - 1.0) / d]))


# The four chart presentations: (source chart map, local expression,
# target affine chart of the projective plane).


def _rp2_chart0(a: np.ndarray) -> np.ndarray:  # a0 != 0: (a2/a0, a1/a0)
    if a[0] == 0.0:
        raise OutsideChart("projective point has a0 = 0")
    return np.array([a[2] / a[0], a[1] / a[0]])


def _rp2_chart1(a: np.ndarray) -> np.ndarray:  # a1 != 0: (a0/a1, a2/a1)
    if a[1] == 0.0:
        raise OutsideChart("projective point has a1 = 0")
    return np.array([a[0] / a[1], a[2] / a[1]])


def _rp2_chart2(a: np.ndarray) -> np.ndarray:  # a2 != 0: (a0/a2, a1/a2)
    if a[2] == 0.0:
        raise OutsideChart("projective point has a2 = 0")
    return np.array([a[0] / a[2], a[1] / a[2]])


def sphere_chart(which: int, z) -> np.ndarray:
    """Blow-up charts of the blown-up sphere, in order of presentation.

    1: south-stereographic chart 1 — body (x0/(1+x2), x1/x0), exceptional (0, xi1/xi0)
    2: south-stereographic chart 2 — body (x0/x1, x1/(1+x2)), exceptional (xi0/xi1, 0)
    3: north-stereographic chart 1 — body (x0/(1-x2), x1/x0)
    4: north-stereographic chart 2 — body (x0/x1, x1/(1-x2))
    """
    if which in (1, 2):
        if isinstance(z, SphereExceptional):
            xi0, xi1 = z.xi
            if which == 1:
                if xi0 == 0.0:
                    raise OutsideChart("tangent direction has xi0 = 0")
                return np.array([0.0, xi1 / xi0])
            if xi1 == 0.0:
                raise OutsideChart("tangent direction has xi1 = 0")
            return np.array([xi0 / xi1, 0.0])
        x = z.x
        if x[2] == -1.0:
            raise OutsideChart("south pole outside the south-stereographic chart")
        u = _stereo_south(x)
        if which == 1:
            if u[0] == 0.0:
                raise OutsideChart("body point has first chart coordinate 0")
            return np.array([u[0], u[1] / u[0]])
        if u[1] == 0.0:
            raise OutsideChart("body point has second chart coordinate 0")
        return np.array([u[0] / u[1], u[1]])
    if which in (3, 4):
        if isinstance(z, SphereExceptional):
            raise OutsideChart("the north pole is outside the north-stereographic chart")
        x = z.x
        if x[2] == 1.0:
            raise OutsideChart("north pole outside the north-stereographic chart")
        u = _stereo_north(x)
        if which == 3:
            if u[0] == 0.0:
                raise OutsideChart("body point has first chart coordinate 0")
            return np.array([u[0], u[1] / u[0]])
        if u[1] == 0.0:
            raise OutsideChart("body point has second chart coordinate 0")
        return np.array([u[0] / u[1], u[1]])
    raise OutsideChart(f"sphere chart index {which} out of range 1..4")


def sphere_chart_inv(which: int, w) -> "SphereBody | SphereExceptional":
    w = np.asarray(w, dtype=float)
    a, b = float(w[0]), float(w[1])
    if which == 1:
        if a == 0.0:
            return SphereExceptional(np.array([1.0, b]))
        return SphereBody(_stereo_south_inv(np.array([a, a * b])))
    if which == 2:
        if b == 0.0:
            return SphereExceptional(np.array([a, 1.0]))
        return SphereBody(_stereo_south_inv(np.array([a * b, b])))
    if which == 3:
        return SphereBody(_stereo_north_inv(np.array([a, a * b])))
    if which == 4:
        return SphereBody(_stereo_north_inv(np.array([a * b, b])))
    raise OutsideChart(f"sphere chart index {which} out of range 1..4")


_RP2_CHARTS = {1: _rp2_chart0, 2: _rp2_chart1, 3: _rp2_chart2, 4: _rp2_chart2}


def sphere_local_expression(which: int, w) -> np.ndarray:
    """The stated closed forms of the map in the four chart presentations."""
    w = np.asarray(w, dtype=float)
    a, b = float(w[0]), float(w[1])
    if which == 1:
        return np.array([a * (b * b + 1.0), b])
    if which == 2:
        return np.array([a, b * (a * a + 1.0)])
    if which == 3:
        return np.array([a, a * b])
    if which == 4:
        return np.array([a * b, b])
    raise OutsideChart(f"sphere chart index {which} out of range 1..4")


def sphere_local_expression_direct(which: int, w) -> np.ndarray:
    """The same map computed by brute composition chart -> point -> image
    -> target affine chart; oracle for the closed forms."""
    z = sphere_chart_inv(which, w)
    return _RP2_CHARTS[which](sphere_rp2_map(z))
