"""Holomorphic quadratic differentials on hyperelliptic curves ``y^2 = f(z)``.

A differential is stored as ``(a(z) + b(z) y) / y^2 (dz)^2``. Curves here
never branch over infinity, so ``deg f = 2g + 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact import (
    INF,
    Poly,
    ProjPoint,
    as_rational,
    format_point,
    format_rational,
    is_squarefree,
    poly_gcd,
    rational_nullspace,
    rational_roots,
    squarefree_decomposition,
)
from .surfaces import HyperellipticModel


@dataclass(frozen=True)
class CurveEquation:
    """``y^2 = f(z)`` with ``f`` squarefree of even degree at least 4."""

    f: Poly

    def __post_init__(self):
        if self.f.degree < 4 or self.f.degree % 2:
            raise ValueError("curve polynomial must have even degree >= 4 (infinity not a branch point)")
        if not is_squarefree(self.f):
            raise ValueError("curve polynomial must be squarefree")

    @classmethod
    def from_model(cls, model: HyperellipticModel) -> "CurveEquation":
        if model.has_infinity:
            raise ValueError("normalize the model first: infinity is a branch point")
        return cls(Poly.from_roots(model.branch_points))

    @property
    def genus(self) -> int:
        return self.f.degree // 2 - 1

    @property
    def symmetric(self) -> bool:
        return self.f.substitute_neg() == self.f

    def to_json(self, var: str = "z") -> dict:
        return {"f": self.f.to_string(var), "genus": self.genus}


CurveLike = Union[CurveEquation, HyperellipticModel]


def as_curve(c: CurveLike) -> CurveEquation:
    return c if isinstance(c, CurveEquation) else CurveEquation.from_model(c)


@dataclass(frozen=True)
class QuadDifferential:
    curve: CurveEquation
    a: Poly
    b: Poly = Poly()

    def __post_init__(self):
        g = self.curve.genus
        if self.a.degree > 2 * g - 2:
            raise ValueError(f"deg a = {self.a.degree} exceeds 2g-2 = {2 * g - 2}")
        if self.b.degree > g - 3:
            raise ValueError(f"deg b = {self.b.degree} exceeds g-3 = {g - 3}")

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def coordinates(self) -> list[Fraction]:
        """Coefficients in the :func:`quad_basis` order."""
        g = self.curve.genus
        return [self.a.coeff(k) for k in range(2 * g - 1)] + [self.b.coeff(k) for k in range(max(g - 2, 0))]

    @classmethod
    def from_coordinates(cls, curve: CurveEquation, coords: Sequence) -> "QuadDifferential":
        g = curve.genus
        na = 2 * g - 1
        return cls(curve, Poly(coords[:na]), Poly(coords[na:]))

    def scale(self, c) -> "QuadDifferential":
        return QuadDifferential(self.curve, self.a.scale(c), self.b.scale(c))

    def label(self, var: str = "z", yvar: str = "y") -> str:
        parts = []
        if self.a:
            parts.append(f"({self.a.to_string(var)})/{yvar}^2")
        if self.b:
            parts.append(f"({self.b.to_string(var)})/{yvar}")
        return (" + ".join(parts) or "0") + f" d{var}^2"

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json(), "display": self.label()}


def quad_basis(model: CurveLike) -> list[QuadDifferential]:
    """``z^k / y^2`` for ``k = 0..2g-2`` then ``z^k / y`` for ``k = 0..g-3``."""
    curve = as_curve(model)
    g = curve.genus
    if g < 2:
        raise ValueError("quadratic differential basis needs genus >= 2")
    out = [QuadDifferential(curve, Poly.monomial(k)) for k in range(2 * g - 1)]
    out += [QuadDifferential(curve, Poly(), Poly.monomial(k)) for k in range(g - 2)]
    return out


# ---------------------------------------------------------------------------
# involutions


@dataclass(frozen=True)
class InvolutionSpec:
    """``(y, z) -> (y_sign * y, -z if negate_z else z)``."""

    negate_z: bool
    y_sign: int
    name: str = ""

    def __post_init__(self):
        if self.y_sign not in (1, -1):
            raise ValueError("y_sign must be +1 or -1")


IDENTITY = InvolutionSpec(False, 1, "id")
PSI = InvolutionSpec(False, -1, "psi")
RHO = InvolutionSpec(True, 1, "rho")
TAU = InvolutionSpec(True, -1, "tau")


def act(inv: InvolutionSpec, q: QuadDifferential) -> QuadDifferential:
    if inv.negate_z:
        if not q.curve.symmetric:
            raise ValueError("z -> -z is not an automorphism: branch set not symmetric under negation")
        a, b = q.a.substitute_neg(), q.b.substitute_neg()
    else:
        a, b = q.a, q.b
    # (dz)^2 is invariant under z -> -z; y^2 is invariant under y -> -y
    return QuadDifferential(q.curve, a, b.scale(inv.y_sign))


def action_matrix(inv: InvolutionSpec, curve: CurveLike) -> list[list[Fraction]]:
    """Matrix (rows = output coordinates) of ``act`` in the basis of :func:`quad_basis`."""
    basis = quad_basis(curve)
    cols = [act(inv, q).coordinates() for q in basis]
    n = len(basis)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def invariant_subspace(invs: Sequence[InvolutionSpec], model: CurveLike) -> list[QuadDifferential]:
    """Basis (reduced, in basis coordinates) of the differentials fixed by every involution."""
    curve = as_curve(model)
    n = 3 * curve.genus - 3
    rows: list[list[Fraction]] = []
    for inv in invs:
        m = action_matrix(inv, curve)
        rows += [[m[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    vecs = rational_nullspace(rows, n) if rows else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return [QuadDifferential.from_coordinates(curve, v) for v in vecs]


# ---------------------------------------------------------------------------
# zero divisors


@dataclass(frozen=True)
class DivisorTerm:
    """``points`` points of the curve, each a zero of the given multiplicity.

    ``kind`` is ``"finite"`` (over a root of ``a`` outside the branch set),
    ``"branch"`` (a Weierstrass point) or ``"infinity"``.  Rational locations
    are given by ``z`` and ``sheet``; otherwise ``factor`` is the monic
    polynomial whose roots carry the points.
    """

    kind: str
    multiplicity: int
    points: int = 1
    z: ProjPoint | None = None
    sheet: str | None = None
    factor: Poly | None = None

    def describe(self) -> str:
        if self.kind == "infinity":
            return f"inf{self.sheet}"
        if self.z is not None:
            where = format_point(self.z)
            return f"({where}){self.sheet or ''}"
        return f"roots of {self.factor.to_string()}"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "multiplicity": self.multiplicity, "points": self.points,
               "where": self.describe()}
        return out


def divisor_degree(terms: Sequence[DivisorTerm]) -> int:
    return sum(t.points * t.multiplicity for t in terms)


def zero_divisor(q: QuadDifferential) -> list[DivisorTerm]:
    """Zeros of ``a(z)/y^2 (dz)^2`` with multiplicities; total degree ``4g - 4``."""
    if not q.b.is_zero():
        raise NotImplementedError("zero divisors are only supported for b = 0")
    if q.a.is_zero():
        raise ValueError("the zero differential has no divisor")
    f = q.curve.f
    g = q.curve.genus
    out: list[DivisorTerm] = []
    for factor, k in squarefree_decomposition(q.a):
        on_branch = poly_gcd(factor, f)
        off_branch = factor.exact_div(on_branch)
        if on_branch.degree > 0:
            rr = rational_roots(on_branch)
            for r in rr:
                out.append(DivisorTerm("branch", 2 * k, 1, z=r))
            rest = on_branch.exact_div(Poly.from_roots(rr))
            if rest.degree > 0:
                out.append(DivisorTerm("branch", 2 * k, rest.degree, factor=rest.monic()))
        if off_branch.degree > 0:
            rr = rational_roots(off_branch)
            for r in rr:
                out.append(DivisorTerm("finite", k, 1, z=r, sheet="+"))
                out.append(DivisorTerm("finite", k, 1, z=r, sheet="-"))
            rest = off_branch.exact_div(Poly.from_roots(rr))
            if rest.degree > 0:
                out.append(DivisorTerm("finite", k, 2 * rest.degree, factor=rest.monic()))
    m_inf = 2 * g - 2 - q.a.degree
    if m_inf > 0:
        out.append(DivisorTerm("infinity", m_inf, 1, z=INF, sheet="+"))
        out.append(DivisorTerm("infinity", m_inf, 1, z=INF, sheet="-"))
    return out


def has_simple_zeros(q: QuadDifferential) -> bool:
    """For ``b = 0``: ``a`` squarefree of degree ``2g - 2`` with no root in the branch set."""
    return all(t.multiplicity == 1 for t in zero_divisor(q))


def zero_images(q: QuadDifferential) -> list[ProjPoint]:
    """Distinct images on the projective line of the zeros of ``q``
    (rational locations only; irrational ones raise)."""
    pts = []
    for t in zero_divisor(q):
        if t.z is None:
            raise ValueError("zero set has irrational images; supply rational data")
        if t.z not in pts:
            pts.append(t.z)
    return pts


# ---------------------------------------------------------------------------
# covering maps


@dataclass(frozen=True)
class CoveringMapFormula:
    """Map from the source curve ``u^2 = R(w)`` to the target ``y^2 = f(z)``
    given by ``z = z_num(w) / z_den(w)`` and ``y = u * y_num(w) / y_den(w)``."""

    source: CurveEquation
    target: CurveEquation
    z_num: Poly
    z_den: Poly
    y_num: Poly
    y_den: Poly

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json("w"),
            "target": self.target.to_json("z"),
            "z": f"({self.z_num.to_string('w')})/({self.z_den.to_string('w')})",
            "y": f"u*({self.y_num.to_string('w')})/({self.y_den.to_string('w')})",
        }


@dataclass(frozen=True)
class CoveringCheck:
    ok: bool
    residue: Poly

    def __bool__(self) -> bool:
        return self.ok


def verify_covering_map(m: CoveringMapFormula) -> CoveringCheck:
    """Check ``y(u,w)^2 = f(z(w))`` modulo ``u^2 = R(w)``; the residue is the
    numerator of the difference over the common denominator."""
    d = m.target.f.degree
    lhs = m.source.f * m.y_num * m.y_num * (m.z_den ** d)
    rhs = m.target.f.homogenized(m.z_num, m.z_den, d) * m.y_den * m.y_den
    residue = lhs - rhs
    return CoveringCheck(residue.is_zero(), residue)


def genus3_covering_map(zs: Sequence, w_power: int = 1, den_power: int = 3) -> CoveringMapFormula:
    """The degree-2 unbranched map from the genus-3 curve onto
    ``y^2 = prod_{i=1..6} (z - z_i)`` whose class is the pair ``{z_1, z_2}``:
    ``z = (z_2 w^2 - z_1)/(w^2 - 1)``, ``y = u w / (w^2 - 1)^3``.

    ``w_power`` and ``den_power`` exist for negative controls.
    """
    zs = [as_rational(z) for z in zs]
    if len(zs) != 6:
        raise ValueError("need six branch points z1..z6")
    if len(set(zs)) != 6:
        raise ValueError("branch points collide: z1..z6 must be distinct")
    z1, z2 = zs[0], zs[1]
    lead = (z1 - z2) ** 2
    rhs = Poly([lead])
    for zi in zs[2:]:
        lead_i = z2 - zi
        rhs = rhs * Poly([-(z1 - zi) / lead_i, 0, 1]) * lead_i
    w2m1 = Poly([-1, 0, 1])
    target = CurveEquation(Poly.from_roots(zs))
    return CoveringMapFormula(
        source=CurveEquation(rhs),
        target=target,
        z_num=Poly([-z1, 0, z2]),
        z_den=w2m1,
        y_num=Poly.monomial(w_power),
        y_den=w2m1 ** den_power,
    )


def pullback_qd(m: CoveringMapFormula, q: QuadDifferential) -> QuadDifferential:
    """Substitute the covering map into ``a(z)/y^2 (dz)^2`` and reduce
    modulo the source curve to ``a'(w)/u^2 (dw)^2``."""
    if not verify_covering_map(m):
        raise ValueError("covering map formula does not satisfy the curve equations")
    if not q.b.is_zero():
        raise NotImplementedError("pullback is implemented for b = 0 differentials")
    if q.curve != m.target:
        raise ValueError("differential does not live on the target curve")
    if q.a.is_zero():
        return QuadDifferential(m.source, Poly())
    n, d = m.z_num, m.z_den
    k = q.a.degree
    dz_num = n.derivative() * d - n * d.derivative()  # dz/dw = dz_num / d^2
    # a(z) = a_h / d^k ; (dz)^2 = dz_num^2 / d^4 (dw)^2 ; 1/y^2 = y_den^2 / (y_num^2 u^2)
    num = q.a.homogenized(n, d, k) * dz_num * dz_num * m.y_den * m.y_den
    den = (d ** (k + 4)) * m.y_num * m.y_num
    g = poly_gcd(num, den)
    num, den = num.exact_div(g), den.exact_div(g)
    if den.degree != 0:
        raise ValueError("pullback is not of the form a(w)/u^2 (dw)^2")
    return QuadDifferential(m.source, num.scale(1 / den.leading))


def expected_genus3_pullback(zs: Sequence) -> Poly:
    """``4 (z1 - z2)^2 (w^2 - 1)(z2 w^2 - z1)``."""
    z1, z2 = as_rational(zs[0]), as_rational(zs[1])
    return Poly([-1, 0, 1]) * Poly([-z1, 0, z2]) * (4 * (z1 - z2) ** 2)


def format_differential_rationals(values: Sequence[Fraction]) -> list[str]:
    return [format_rational(v) for v in values]
