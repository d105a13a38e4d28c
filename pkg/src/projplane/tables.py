"""Homotopy-theoretic input data.

These groups are classical results that the classification consumes as
facts; nothing in the package tries to derive them.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from .abgroup import FgAbGroup


@dataclass(frozen=True)
class TableEntry:
    label: str
    group: FgAbGroup
    source: str


def _entry(label: str, group: str, source: str) -> TableEntry:
    return TableEntry(label, FgAbGroup.parse(group), source)


HOMOTOPY_GROUPS = MappingProxyType(
    {
        "pi3(S2)": _entry("pi_3(S^2)", "Z", "Hopf fibration"),
        "pi7(S4)": _entry("pi_7(S^4)", "Z + Z/12", "Toda, Composition Methods, Ch. XIV"),
        "pi15(S8)": _entry("pi_15(S^8)", "Z + Z/120", "Toda, Composition Methods, Ch. XIV"),
        "pi2(BG)": _entry("pi_2(BG) = pi_1^s", "Z/2", "stable stems, Toda Ch. XIV"),
        "pi4(BG)": _entry("pi_4(BG) = pi_3^s", "Z/24", "stable stems, Toda Ch. XIV"),
        "pi8(BG)": _entry("pi_8(BG) = pi_7^s", "Z/240", "stable stems, Toda Ch. XIV"),
        "pi1(TOP/O)": _entry("pi_1(TOP/O)", "0", "Kirby-Siebenmann: TOP/O is 2-connected"),
        "pi3(TOP/O)": _entry("pi_3(TOP/O)", "Z/2", "Kirby-Siebenmann, Essay V"),
        "pi7(TOP/O)": _entry("pi_7(TOP/O) = Theta_7", "Z/28", "Kervaire-Milnor"),
        "Theta8": _entry("Theta_8", "Z/2", "Kervaire-Milnor"),
        "Theta16": _entry("Theta_16", "Z/2", "Kervaire-Milnor"),
    }
)

# image of the generator of pi_m(S^m) in pi_{2m-1}(S^m) = Z + Z/k under the
# tangent-sphere-bundle map, for m = 4, 8
IOTA_IMAGE = (2, -1)

DIMENSIONS = (2, 4, 8)


def group(key: str) -> FgAbGroup:
    return HOMOTOPY_GROUPS[key].group


def unstable_group(m: int) -> FgAbGroup:
    """``pi_{2m-1}(S^m)``: the attaching maps of ``S^m u e^{2m}``."""
    return group({2: "pi3(S2)", 4: "pi7(S4)", 8: "pi15(S8)"}[m])


def stable_j_group(m: int) -> FgAbGroup:
    """``pi_m(BG)``, cyclic."""
    return group(f"pi{m}(BG)")


def top_o_group(m: int) -> FgAbGroup:
    """``pi_{m-1}(TOP/O)``."""
    return group(f"pi{m - 1}(TOP/O)")


def exotic_sphere_group(m: int) -> FgAbGroup:
    """``Theta_{2m}``."""
    return group(f"Theta{2 * m}")
