"""Exact Laurent model of the deformation ring for polynomial functions.

Coefficients are multivariate polynomials over exact rationals in a
y-block (p variables) and an x-block (q variables).  A Laurent element
sum_k f_k t^{-k} must satisfy the filtration constraint: for k >= 1
every monomial of f_k has x-block total degree >= k.  Two character
families evaluate elements at body points (x, s) with s != 0 and at
normal vectors (y, xi); both are exact ring homomorphisms.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import ArityMismatch, InvariantBreach
from .expr import Add, Const, Div, Expr, Mul, Pow, SmoothMapExpr, Sub, Var


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot coerce {value!r} to an exact rational")


class MultiPoly:
    """A multivariate polynomial with Fraction coefficients.

    Variables are split into a y-block of size p followed by an x-block
    of size q; monomial keys are exponent tuples of length p + q.
    """

    __slots__ = ("p", "q", "terms")

    def __init__(self, p: int, q: int, terms=None):
        self.p = p
        self.q = q
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = _frac(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != p + q or any(e < 0 for e in exps):
                raise ArityMismatch(f"bad monomial {exps} for {p}+{q} variables")
            clean[exps] = clean.get(exps, Fraction(0)) + coeff
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(p: int, q: int, value) -> "MultiPoly":
        return MultiPoly(p, q, {(0,) * (p + q): _frac(value)})

    @staticmethod
    def var(p: int, q: int, index: int) -> "MultiPoly":
        exps = [0] * (p + q)
        exps[index] = 1
        return MultiPoly(p, q, {tuple(exps): Fraction(1)})

    # -- ring structure ----------------------------------------------
    def _check_like(self, other: "MultiPoly"):
        if (self.p, self.q) != (other.p, other.q):
            raise ArityMismatch("polynomials over different variable splits")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.p, self.q, other)
        self._check_like(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPoly(self.p, self.q, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.p, self.q, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.p, self.q, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(
                self.p, self.q, {e: c * _frac(other) for e, c in self.terms.items()}
            )
        self._check_like(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return MultiPoly(self.p, self.q, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ArityMismatch("negative polynomial powers are not defined")
        out = MultiPoly.const(self.p, self.q, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.p, self.q, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.q, frozenset(self.terms.items())))

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def x_degree(self, exps) -> int:
        return sum(exps[self.p :])

    def homogeneous_x_part(self, k: int) -> "MultiPoly":
        """Terms whose x-block total degree is exactly k."""
        return MultiPoly(
            self.p,
            self.q,
            {e: c for e, c in self.terms.items() if self.x_degree(e) == k},
        )

    def evaluate(self, point) -> Fraction:
        point = [_frac(v) for v in point]
        if len(point) != self.p + self.q:
            raise ArityMismatch("evaluation point has the wrong length")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            value = coeff
            for v, e in zip(point, exps):
                if e == 1:
                    value *= v
                elif e:
                    value *= v**e
            total += value
        return total

    def substitute(self, replacements) -> "MultiPoly":
        """Substitute one polynomial per variable; result in their variables."""
        replacements = list(replacements)
        if len(replacements) != self.p + self.q:
            raise ArityMismatch("need one replacement per variable")
        if not replacements:
            raise ArityMismatch("substitution needs at least one variable")
        model = replacements[0]
        out = MultiPoly(model.p, model.q, {})
        for exps, coeff in self.terms.items():
            term = MultiPoly.const(model.p, model.q, coeff)
            for repl, e in zip(replacements, exps):
                term = term * repl**e
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"y{i + 1}" for i in range(self.p)] + [
            f"x{i + 1}" for i in range(self.q)
        ]
        parts = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e)):
            coeff = self.terms[exps]
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(exps)
                if e
            ]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(coeff) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def vanishing_order(f: MultiPoly):
    """Minimum x-block total degree over monomials; inf for the zero polynomial."""
    if f.is_zero():
        return float("inf")
    return min(f.x_degree(e) for e in f.terms)


class LaurentElement:
    """An element sum_k f_k t^{-k} with f_k vanishing to order k for k >= 1."""

    __slots__ = ("p", "q", "coeffs")

    def __init__(self, p: int, q: int, coeffs=None):
        self.p = p
        self.q = q
        clean = {}
        for k, poly in (coeffs or {}).items():
            if poly.is_zero():
                continue
            if (poly.p, poly.q) != (p, q):
                raise ArityMismatch("coefficient over the wrong variable split")
            clean[int(k)] = poly
        for k, poly in clean.items():
            if k >= 1 and vanishing_order(poly) < k:
                raise InvariantBreach(
                    f"coefficient of t^-{k} vanishes only to order {vanishing_order(poly)}"
                )
        self.coeffs = clean

    @staticmethod
    def from_poly(f: MultiPoly, k: int = 0) -> "LaurentElement":
        return LaurentElement(f.p, f.q, {k: f})

    @staticmethod
    def t_element(p: int, q: int) -> "LaurentElement":
        """The element t (i.e. t^{+1})."""
        return LaurentElement(p, q, {-1: MultiPoly.const(p, q, 1)})

    def _check_like(self, other: "LaurentElement"):
        if (self.p, self.q) != (other.p, other.q):
            raise ArityMismatch("Laurent elements over different variable splits")

    def __add__(self, other):
        self._check_like(other)
        coeffs = dict(self.coeffs)
        for k, poly in other.coeffs.items():
            coeffs[k] = coeffs[k] + poly if k in coeffs else poly
        return LaurentElement(self.p, self.q, coeffs)

    def __mul__(self, other):
        self._check_like(other)
        coeffs: dict = {}
        for k1, f1 in self.coeffs.items():
            for k2, f2 in other.coeffs.items():
                k = k1 + k2
                prod = f1 * f2
                coeffs[k] = coeffs[k] + prod if k in coeffs else prod
        return LaurentElement(self.p, self.q, coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and self.coeffs == other.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            poly = self.coeffs[k]
            if k == 0:
                parts.append(f"({poly})")
            else:
                parts.append(f"({poly})*t^{-k}")
        return " + ".join(parts)

    __repr__ = __str__


def laurent_mul(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    """Exact product; the constructor re-asserts the filtration invariant."""
    return a * b


def char_xs(a: LaurentElement, x, s) -> Fraction:
    """Evaluation at a body point: sum_k f_k(x) s^{-k}; needs s != 0."""
    s = _frac(s)
    if s == 0:
        raise ArityMismatch("body characters need s != 0")
    total = Fraction(0)
    for k, poly in a.coeffs.items():
        total += poly.evaluate(x) * s**(-k)
    return total


def char_yxi(a: LaurentElement, y, xi) -> Fraction:
    """Evaluation at a normal vector: the degree-k x-homogeneous part of
    f_k at (y, xi), summed over k >= 0; positive powers of t evaluate to 0."""
    point = list(y) + list(xi)
    total = Fraction(0)
    for k, poly in a.coeffs.items():
        if k < 0:
            continue
        total += poly.homogeneous_x_part(k).evaluate(point)
    return total


def poly_to_expr(f: MultiPoly) -> SmoothMapExpr:
    """Float expression tree for the geometric boundary."""
    e: Expr = Const(0.0)
    for exps, coeff in sorted(f.terms.items()):
        term: Expr = Const(float(coeff))
        for i, k in enumerate(exps):
            if k:
                term = Mul(term, Pow(Var(i), k))
        e = Add(e, term)
    return SmoothMapExpr(f.p + f.q, 1, (e,))


def expr_to_poly(e: Expr, p: int, q: int) -> MultiPoly:
    """Convert a polynomial expression tree to exact form.

    Division is only allowed by constants; other primitives raise."""
    if isinstance(e, Const):
        return MultiPoly.const(p, q, Fraction(e.value))
    if isinstance(e, Var):
        return MultiPoly.var(p, q, e.index)
    if isinstance(e, Add):
        return expr_to_poly(e.left, p, q) + expr_to_poly(e.right, p, q)
    if isinstance(e, Sub):
        return expr_to_poly(e.left, p, q) - expr_to_poly(e.right, p, q)
    if isinstance(e, Mul):
        return expr_to_poly(e.left, p, q) * expr_to_poly(e.right, p, q)
    if isinstance(e, Div):
        den = expr_to_poly(e.right, p, q)
        num = expr_to_poly(e.left, p, q)
        const_key = (0,) * (p + q)
        if set(den.terms) - {const_key}:
            raise ArityMismatch("polynomial conversion allows division by constants only")
        if den.is_zero():
            raise ArityMismatch("division by zero constant")
        return num * (1 / den.terms[const_key])
    if isinstance(e, Pow):
        if e.exponent < 0:
            raise ArityMismatch("negative powers are not polynomial")
        return expr_to_poly(e.base, p, q) ** e.exponent
    raise ArityMismatch(f"non-polynomial node {type(e).__name__} in conversion")


def geometric_consistency(f: MultiPoly, points, tol: float = 1e-12) -> dict:
    """Cross-check t^{-1} f against the geometric quotient function.

    ``points`` is an iterable of (y, x, s) triples with s != 0 given as
    floats; for each, char_xs of f t^{-1} must match the geometric
    evaluation f(y, s * (x/s)) / s, and for order-exactly-1 f the normal
    character must match the chart normal derivative contracted with xi.
    """
    from .dnc import DncPoint, eval_function_class
    from .pairs import PairDims

    order = vanishing_order(f)
    if not (isinstance(order, int) and order >= 1):
        raise ArityMismatch("geometric consistency needs vanishing order >= 1")
    elem = LaurentElement.from_poly(f, 1)
    fexpr = poly_to_expr(f)
    dims = PairDims(f.p + f.q, f.p)
    worst = 0.0
    for y, x, s in points:
        y = list(y)
        x = list(x)
        exact = char_xs(elem, [Fraction(v) for v in y] + [Fraction(v) for v in x], Fraction(s))
        z = DncPoint.of(y, [v / s for v in x], s)
        geo = eval_function_class("dnc_f1", fexpr, dims, z, check=False)
        worst = max(worst, abs(float(exact) - geo))
        if order == 1:
            z0 = DncPoint.of(y, [v / s for v in x], 0.0)
            geo0 = eval_function_class("dnc_f1", fexpr, dims, z0, check=False)
            exact0 = char_yxi(
                elem, [Fraction(v) for v in y], [Fraction(v / s) for v in x]
            )
            worst = max(worst, abs(float(exact0) - geo0))
    return {"max_residual": worst, "ok": worst <= tol}
