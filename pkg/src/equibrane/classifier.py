"""Exhaustive search for finite group actions whose equivariant flat
connections have half the dimension of the full moduli space.

Every candidate yields a :class:`Certificate` carrying the relation that
decides it, with both sides evaluated.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dims import dim_flat, dim_flat_punctured
from .surfaces import (
    InconsistentBranchData,
    _is_prime,
    cyclic_cover_genus,
    involution_fixed_points,
    klein_quotient_genus,
)

ADMITTED = "admitted"
REJECTED = "rejected"

MONODROMY_NOTE = (
    "local monodromy conjugate to diag(1,-1) around each of the 6 branch values; "
    "the quotient connections are PSL(2,C)-connections")

DIVISIBILITY_NOTE = (
    "rule applied: 4 | 2(3g-3) (hyper-Kaehler real dimension of the half-dimensional brane); "
    "a literal 'divisible by 8' reading does not separate g=2 from g=3")

_KIND_ORDER = {"cyclic": 0, "z4": 1, "klein": 2}


@dataclass(frozen=True)
class ActionCandidate:
    kind: str  # "cyclic", "z4" or "klein"
    g: int
    gamma: int
    n: int
    p: Optional[int] = None
    n1: Optional[int] = None
    n2: Optional[int] = None
    n_psi: Optional[int] = None
    n_rho: Optional[int] = None

    def sort_key(self):
        return (self.g, _KIND_ORDER[self.kind], self.gamma, self.n,
                self.p or 0, self.n1 or 0, self.n2 or 0, self.n_psi or 0, self.n_rho or 0)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "g": self.g, "gamma": self.gamma, "n": self.n}
        for key in ("p", "n1", "n2", "n_psi", "n_rho"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


@dataclass(frozen=True)
class Certificate:
    candidate: ActionCandidate
    verdict: str
    relation: str
    lhs: int
    rhs: int
    reason: str
    case: Optional[str] = None
    monodromy_note: Optional[str] = None
    evidence: tuple = field(default=(), compare=False)

    @property
    def admitted(self) -> bool:
        return self.verdict == ADMITTED

    def to_json(self) -> dict:
        out = {
            "candidate": self.candidate.to_json(),
            "verdict": self.verdict,
            "case": self.case,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "reason": self.reason,
        }
        if self.monodromy_note:
            out["monodromy_note"] = self.monodromy_note
        if self.evidence:
            out["evidence"] = [c.to_json() for c in self.evidence]
        return out


def _doubled_quotient_dim(gamma: int, n: int) -> tuple[int, str]:
    """Twice the dimension of the quotient moduli space; in the exceptional
    range the largest possible value (2 * 2) is used."""
    d = dim_flat_punctured(gamma, n)
    if d.exceptional:
        return 2 * max(d.exceptional_range), "exceptional quotient (dimension 0 or 2)"
    return 2 * d.value, ""


# ---------------------------------------------------------------------------
# cyclic groups of prime order


def cyclic_certificate(p: int, gamma: int, n: int) -> Optional[Certificate]:
    """Certificate for ``Z_p`` acting with quotient genus ``gamma`` and ``n``
    branch values, or None when Riemann-Hurwitz gives no surface of genus >= 2."""
    g = cyclic_cover_genus(p, gamma, n)
    if g.denominator != 1 or g < 2:
        return None
    g = int(g)
    cand = ActionCandidate("cyclic", g, gamma, n, p=p)
    lhs = 3 * n * (p - 1) + 6 * p * (gamma - 1)
    assert lhs == dim_flat(g)
    rhs, note = _doubled_quotient_dim(gamma, n)
    relation = "3n(p-1) + 6p(gamma-1) <= 12(gamma-1) + 4n"
    if lhs > rhs:
        reason = f"inequality violated: {lhs} > {rhs}"
        if note:
            reason += f" ({note})"
        return Certificate(cand, REJECTED, relation, lhs, rhs, reason)
    if lhs < rhs:
        return Certificate(cand, REJECTED, relation, lhs, rhs,
                           f"halving equality fails: {lhs} < {rhs}, the equivariant component "
                           f"is larger than half")
    if p == 2 and n == 0:
        return Certificate(cand, ADMITTED, relation, lhs, rhs,
                           "halving equality holds: fixed-point free involution", case="I")
    return Certificate(cand, ADMITTED, relation, lhs, rhs, "halving equality holds")


def prime_obstruction_survey(p: int, gamma_max: int, n_max: int) -> list[ActionCandidate]:
    """All ``(gamma, n)`` in range with ``g >= 2`` satisfying the inequality
    for an odd prime ``p``; expected to be empty."""
    if p == 2 or not _is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if gamma_max < 0 or n_max < 0:
        raise ValueError("bounds must be non-negative")
    out = []
    for gamma in range(gamma_max + 1):
        for n in range(n_max + 1):
            cert = cyclic_certificate(p, gamma, n)
            if cert is not None and cert.lhs <= cert.rhs:
                out.append(cert.candidate)
    return sorted(out, key=ActionCandidate.sort_key)


# ---------------------------------------------------------------------------
# Z4


def z4_genus(gamma: int, n1: int, n2: int) -> Fraction:
    """Riemann-Hurwitz for ``Z4`` with ``n1`` totally ramified branch values
    and ``n2`` values with two preimages."""
    return Fraction(8 * (gamma - 1) + 3 * n1 + 2 * n2 + 2, 2)


def z4_exclusion(gamma_max: int, n1_max: int, n2_max: Optional[int] = None) -> list[Certificate]:
    """Survivors of the ``Z4`` inequality, each with its rejection.

    Candidates need ``n1`` even and positive (otherwise there is no element of
    order 4 in the monodromy) and a Riemann-Hurwitz genus of at least 1.
    """
    if n2_max is None:
        n2_max = n1_max
    if min(gamma_max, n1_max, n2_max) < 0:
        raise ValueError("bounds must be non-negative")
    relation = "9n1 + 6n2 + 24(gamma-1) <= 12(gamma-1) + 4(n1+n2)"
    out = []
    for gamma in range(gamma_max + 1):
        for n1 in range(2, n1_max + 1, 2):
            for n2 in range(n2_max + 1):
                g = z4_genus(gamma, n1, n2)
                if g.denominator != 1 or g < 1:
                    continue
                g = int(g)
                lhs = 9 * n1 + 6 * n2 + 24 * (gamma - 1)
                rhs = 12 * (gamma - 1) + 4 * (n1 + n2)
                if lhs > rhs:
                    continue
                cand = ActionCandidate("z4", g, gamma, n1 + n2, n1=n1, n2=n2)
                if g < 2:
                    out.append(Certificate(cand, REJECTED, relation, lhs, rhs,
                                           f"g={g}: the surface must have genus at least 2"))
                else:
                    out.append(Certificate(cand, "unresolved", relation, lhs, rhs,
                                           "survives the Z4 inequality"))
    return sorted(out, key=lambda c: c.candidate.sort_key())


# ---------------------------------------------------------------------------
# Klein four-group


def _klein_genus_certificate(g: int) -> Optional[Certificate]:
    """Per-genus rejection before any fixed-point data is considered."""
    cand = ActionCandidate("klein", g, -1, -1)
    lo, hi = 6 * g - 6, 6 + 2 * g
    if hi < lo:
        return Certificate(cand, REJECTED, "6 + 2g >= n_rho + n_psi >= 6g - 6", hi, lo,
                           f"window empty: 6+2g = {hi} < 6g-6 = {lo}")
    real_dim = 2 * (3 * g - 3)
    if real_dim % 4:
        return Certificate(cand, REJECTED, "4 | 2(3g-3)", real_dim, 4,
                           f"brane real dimension {real_dim} not divisible by 4; {DIVISIBILITY_NOTE}")
    return None


def _klein_pair_certificate(g: int, n_psi: int, n_rho: int) -> Certificate:
    relation = "6 + 2g >= n_rho + n_psi >= 6g - 6"
    total = n_psi + n_rho
    try:
        gamma = klein_quotient_genus(g, n_psi, n_rho)
    except InconsistentBranchData as exc:
        cand = ActionCandidate("klein", g, -1, total // 2, n_psi=n_psi, n_rho=n_rho)
        return Certificate(cand, REJECTED, "g_quot = (6 + 2g - n_rho - n_psi)/8", 6 + 2 * g - total, 8,
                           str(exc))
    n = total // 2
    cand = ActionCandidate("klein", g, gamma, n, n_psi=n_psi, n_rho=n_rho)
    if not (6 * g - 6 <= total <= 6 + 2 * g):
        return Certificate(cand, REJECTED, relation, total, 6 * g - 6,
                           f"n_rho + n_psi = {total} outside [{6 * g - 6}, {6 + 2 * g}]")
    lhs = dim_flat(g)
    rhs, note = _doubled_quotient_dim(gamma, n)
    if lhs != rhs or note:
        return Certificate(cand, REJECTED, "6g - 6 = 2 dim M(gamma, n)", lhs, rhs,
                           f"halving equality fails: {lhs} != {rhs}")
    return Certificate(cand, ADMITTED, "6g - 6 = 2 dim M(gamma, n)", lhs, rhs,
                       "halving equality holds; psi hyperelliptic, rho with 4 fixed points, "
                       "tau = rho psi fixed-point free", case="II", monodromy_note=MONODROMY_NOTE)


def _klein_genus(g: int) -> list[Certificate]:
    early = _klein_genus_certificate(g)
    if early is not None:
        return [early]
    counts = sorted({2 * g + 2 - 4 * q for q in range((g + 1) // 2 + 1) if 2 * g + 2 - 4 * q >= 0})
    assert all(c == involution_fixed_points(g, (2 * g + 2 - c) // 4) for c in counts)
    return [_klein_pair_certificate(g, n_psi, n_rho)
            for n_psi in counts for n_rho in counts if n_rho <= n_psi]


def klein_candidates(g_max: int = 12) -> list[Certificate]:
    """Certificates for every genus and every pair of involution fixed-point
    counts (``n_psi >= n_rho``; the roles are symmetric)."""
    out = [c for g in range(2, g_max + 1) for c in _klein_genus(g)]
    return sorted(out, key=lambda c: c.candidate.sort_key())


def klein_classification(g_max: int = 12) -> Certificate:
    """The unique admitted Klein case, with all rejections as evidence."""
    certs = klein_candidates(g_max)
    admitted = [c for c in certs if c.admitted]
    if len(admitted) != 1:
        raise AssertionError(f"expected exactly one admitted Klein case, found {len(admitted)}")
    best = admitted[0]
    rejected = tuple(c for c in certs if not c.admitted)
    return Certificate(best.candidate, best.verdict, best.relation, best.lhs, best.rhs,
                       best.reason, case=best.case, monodromy_note=best.monodromy_note,
                       evidence=rejected)


# ---------------------------------------------------------------------------
# full classification


def _genus_certificates(g: int) -> list[Certificate]:
    certs = []
    for gamma in range((g + 1) // 2 + 1):
        n = 2 * g + 2 - 4 * gamma
        if n < 0:
            continue
        cert = cyclic_certificate(2, gamma, n)
        if cert is not None:
            certs.append(cert)
    certs.extend(_klein_genus(g))
    return certs


def classify_all(g_max: int, jobs: int = 1) -> list[Certificate]:
    """Every certificate for ``2 <= g <= g_max``, in canonical order."""
    if g_max < 2:
        raise ValueError("g_max must be at least 2")
    genera = list(range(2, g_max + 1))
    if jobs > 1 and len(genera) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_genus_certificates, genera))
    else:
        chunks = [_genus_certificates(g) for g in genera]
    certs = [c for chunk in chunks for c in chunk]
    return sorted(certs, key=lambda c: c.candidate.sort_key())


def classify(g_max: int, jobs: int = 1) -> list[Certificate]:
    """Admitted actions for ``2 <= g <= g_max``: case I (free involution,
    odd genus) and case II (Klein group on genus 3)."""
    return [c for c in classify_all(g_max, jobs) if c.admitted]
