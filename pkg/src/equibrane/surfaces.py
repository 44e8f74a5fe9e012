"""Surfaces, branch data and Riemann-Hurwitz bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

from .exact import INF, format_point, parse_point, point_key


class InconsistentBranchData(ValueError):
    pass


class NoSuchAction(ValueError):
    pass


@dataclass(frozen=True)
class Surface:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus


@dataclass(frozen=True)
class HyperellipticModel:
    """Curve ``y^2 = prod (z - b)`` given by its branch set on the projective line.

    ``branch_points`` is stored sorted (finite points ascending, then infinity).
    """

    branch_points: tuple

    def __init__(self, branch_points: Sequence):
        pts = tuple(sorted((parse_point(p) for p in branch_points), key=point_key))
        if len(pts) < 4 or len(pts) % 2:
            raise ValueError("a hyperelliptic model needs an even number (>= 4) of branch points")
        if len(set(pts)) != len(pts):
            raise ValueError("branch points must be distinct")
        object.__setattr__(self, "branch_points", pts)

    @property
    def genus(self) -> int:
        return len(self.branch_points) // 2 - 1

    @property
    def has_infinity(self) -> bool:
        return INF in self.branch_points

    @property
    def finite_points(self) -> tuple[Fraction, ...]:
        return tuple(p for p in self.branch_points if p is not INF)

    def to_json(self) -> dict:
        return {"branch_points": [format_point(p) for p in self.branch_points],
                "genus": self.genus}


def _check_partition(parts: Sequence[int], degree: int) -> tuple[int, ...]:
    parts = tuple(sorted((int(e) for e in parts), reverse=True))
    if any(e < 1 for e in parts) or sum(parts) != degree:
        raise InconsistentBranchData(
            f"inconsistent branch data: partition {list(parts)} does not sum to degree {degree}")
    return parts


@dataclass(frozen=True)
class RamifiedCoverSpec:
    """Degree-``d`` cover of a surface with a partition of ``d`` over each branch point.

    The genus of the total space is computed (and validated) on construction.
    """

    degree: int
    base: Surface
    branch_profile: tuple = ()
    genus: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.degree < 1:
            raise InconsistentBranchData("inconsistent branch data: degree must be positive")
        seen: set[Hashable] = set()
        profile = []
        for point, parts in self.branch_profile:
            if isinstance(point, str) and point.lower() in ("inf", "infinity"):
                point = INF
            if point in seen:
                raise InconsistentBranchData(
                    f"inconsistent branch data: branch point {point} listed twice")
            seen.add(point)
            profile.append((point, _check_partition(parts, self.degree)))
        object.__setattr__(self, "branch_profile", tuple(profile))
        object.__setattr__(self, "genus", _genus_from_profile(self))

    @property
    def ramification_total(self) -> int:
        return sum(e - 1 for _, parts in self.branch_profile for e in parts)

    @property
    def branch_count(self) -> int:
        return sum(1 for _, parts in self.branch_profile if any(e > 1 for e in parts))


def _genus_from_profile(spec: RamifiedCoverSpec) -> int:
    chi = spec.degree * spec.base.euler_characteristic - spec.ramification_total
    if chi % 2 or chi > 2:
        raise InconsistentBranchData(
            f"inconsistent branch data: Euler characteristic {chi} gives genus {Fraction(2 - chi, 2)}")
    return (2 - chi) // 2


def rh_genus(spec: RamifiedCoverSpec) -> int:
    """Genus of the total space by Riemann-Hurwitz."""
    return spec.genus


def simple_double_cover(base_genus: int, branch_points: Sequence) -> RamifiedCoverSpec:
    return RamifiedCoverSpec(2, Surface(base_genus), tuple((p, (2,)) for p in branch_points))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def cyclic_branch_count(p: int, g: int, gamma: int) -> int:
    """Number ``n`` of branch values of a ``Z_p`` action on genus ``g`` with
    quotient genus ``gamma``: ``n (p - 1) = 2 (g - 1 + p (1 - gamma))``.

    The result may be negative; callers reject it.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    num = 2 * (g - 1 + p * (1 - gamma))
    if num % (p - 1):
        raise NoSuchAction(f"no such action: n = {Fraction(num, p - 1)} is not an integer")
    return num // (p - 1)


def cyclic_cover_genus(p: int, gamma: int, n: int) -> Fraction:
    """Inverse of :func:`cyclic_branch_count`; may be non-integral."""
    return 1 + p * (gamma - 1) + Fraction(n * (p - 1), 2)


def involution_fixed_points(g: int, g_quot: int) -> int:
    """Fixed points of an involution on genus ``g`` with quotient genus ``g_quot``."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    n = 2 * g + 2 - 4 * g_quot
    if n < 0:
        raise NoSuchAction(f"no such involution: genus {g} over genus {g_quot} needs {n} fixed points")
    return n


def klein_quotient_genus(g: int, n_psi: int, n_rho: int) -> int:
    """Genus of ``Sigma / (Z2 x Z2)`` from the fixed-point counts of two of
    its involutions, the third being fixed-point free."""
    if min(g, n_psi, n_rho) < 0:
        raise ValueError("inputs must be non-negative")
    value = Fraction(6 + 2 * g - n_rho - n_psi, 8)
    if value.denominator != 1 or value < 0:
        raise InconsistentBranchData(f"inconsistent Klein action: quotient genus {value}")
    return int(value)
