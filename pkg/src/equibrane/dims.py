"""Dimensions of moduli of flat SL(2,C) / PSL(2,C) connections."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

EXCEPTIONAL_RANGE = (0, 2)


@dataclass(frozen=True)
class ModuliDim:
    """Either a definite ``value`` or, outside the formula's range, the
    exceptional flag with the possible values ``{0, 2}``."""

    value: Optional[int]
    exceptional: bool = False
    exceptional_range: Optional[tuple[int, int]] = None

    def to_json(self) -> dict:
        if self.exceptional:
            return {"exceptional": True, "possible_values": list(self.exceptional_range)}
        return {"exceptional": False, "value": self.value}


def dim_flat(g: int) -> int:
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    return 6 * g - 6


def formula_applies(gamma: int, n: int) -> bool:
    return gamma >= 2 or (gamma >= 1 and n >= 1) or (gamma == 0 and n >= 4)


def dim_flat_punctured(gamma: int, n: int) -> ModuliDim:
    """Dimension with fixed (simple-eigenvalue) local monodromies at ``n`` punctures."""
    if gamma < 0 or n < 0:
        raise ValueError("genus and puncture count must be non-negative")
    if formula_applies(gamma, n):
        return ModuliDim(6 * gamma - 6 + 2 * n)
    return ModuliDim(None, True, EXCEPTIONAL_RANGE)


def brane_target_dim(g: int) -> int:
    """Half of :func:`dim_flat`."""
    return dim_flat(g) // 2
