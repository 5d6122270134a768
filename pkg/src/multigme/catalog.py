"""Named states with published GME values, bounds and closest product states.

Tensors are built by looping over the printed ket lists below, so each list
can be checked against its source line by line.  Reported numbers are the
4-decimal values from the source; ``expected_bound`` is the reported bound
where one is printed, otherwise the closed-form value.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import upper_bound
from .ket_parser import from_tensor, render
from .tensor_core import ProductState, StateTensor

OMEGA = cmath.exp(2j * math.pi / 3)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dims: tuple
    tensor: Optional[StateTensor]
    expected_gme: Optional[float]
    expected_bound: float
    citation: str
    description: str = ""
    external: bool = False
    tags: tuple = field(default=())

    def __post_init__(self):
        if self.tensor is not None:
            if tuple(self.tensor.dims) != tuple(self.dims):
                raise ValueError(f"{self.name}: tensor dims {self.tensor.dims} != {self.dims}")
            if not self.tensor.normalized:
                raise ValueError(f"{self.name}: tensor is not normalized")
        if self.expected_gme is not None and self.expected_gme > self.expected_bound + 5e-4:
            raise ValueError(f"{self.name}: expected GME exceeds the bound")

    @property
    def formula_bound(self) -> float:
        return upper_bound(self.dims)

    def ket_text(self) -> str:
        if self.tensor is None:
            raise ValueError(f"{self.name} has no amplitudes (external source)")
        return render(from_tensor(self.tensor))


def _from_kets(dims, kets, prefactor=1.0) -> StateTensor:
    """Amplitudes ``prefactor * coeff`` at each printed ket.

    ``kets`` holds ``"0011"`` strings or ``(coeff, "0011")`` pairs.
    """
    amps = np.zeros(dims, dtype=complex)
    for item in kets:
        coeff, ket = (1.0, item) if isinstance(item, str) else item
        idx = tuple(int(c) for c in ket)
        if len(idx) != len(dims):
            raise ValueError(f"ket {ket} does not match dims {dims}")
        amps[idx] += prefactor * coeff
    # 4-decimal prefactors are exact here, renormalize only to remove rounding
    amps /= np.linalg.norm(amps)
    return StateTensor.from_amplitudes(amps)


# printed ket lists ---------------------------------------------------------

W3_KETS = ["100", "010", "001"]

CLUSTER4_KETS = [
    (1.0, "0011"), (1.0, "1100"),
    (OMEGA, "0101"), (OMEGA, "1010"),
    (OMEGA**2, "0110"), (OMEGA**2, "1001"),
]

AME5_KETS = [
    "00000", "00011", "01100", (-1.0, "01111"),
    "11010", "11001", "10110", (-1.0, "10101"),
]

QUTRIT_GHZ_KETS = ["000", "111", "222"]

DICKE_QUTRIT_KETS = ["012", "021", "102", "120", "201", "210"]

QUTRIT4_KETS = ["0000", "0112", "0221", "1011", "1120", "1202", "2022", "2101", "2210"]

QUQUART4_KETS = [
    "0000", "0123", "0231", "0312",
    "1111", "1032", "1320", "1203",
    "2222", "2301", "2013", "2130",
    "3333", "3210", "3102", "3021",
]

HET223_KETS = ["000", "110", "011", "101", "002", (-1.0, "112")]

HET233_KETS = ["000", "101", "012", "110", "021", "122"]

HET224_KETS = ["000", "011", "102", "113"]

UNIFORM2_KETS = [
    "000000", "001121", "010220",
    "012011", "021210", "022101",
    "111110", "112201", "121000",
    "120121", "102020", "100211",
    "222220", "220011", "202110",
    "201201", "210100", "211021",
]

# printed closest product states (one list of coefficient vectors per state)

_W3_PHI = [-0.7885 + 0.2119j, 0.4996 + 0.2894j]
_THIRD = [1.0, 1.0, 1.0]

PAPER_CLOSEST = {
    "w3": [_W3_PHI] * 3,
    "cluster4": [
        [-0.3674 + 0.3830j, -(0.6813 - 0.5042j)],
        [-0.9955 - 0.0569j, -(0.0418 + 0.0629j)],
        [0.5210 + 0.2240j, -(0.7665 - 0.3013j)],
        [0.6323 - 0.0502j, -(0.3042 + 0.7107j)],
    ],
    "ame5": [
        [-0.7060 + 0.5388j, 0.4556 + 0.0612j],
        [0.3766 + 0.8043j, 0.4322 + 0.1566j],
        [0.7843 + 0.4166j, 0.1346 + 0.4395j],
        [0.5652 + 0.6850j, -(0.4576 + 0.0439j)],
        [0.2449 + 0.8536j, 0.2228 - 0.4021j],
    ],
    "qutrit_ghz": [[1.0, 0.0, 0.0]] * 3,
    "dicke_qutrit": [_THIRD] * 3,
    "qutrit4": [_THIRD] * 4,
    "ququart4": [[-0.5j, -0.5j, -0.5, 0.5]] * 4,
    # third factor is printed with the label of the first
    "het223": [
        [0.2887 + 0.1283j, -0.1999 - 0.9275j],
        [-0.0366 - 0.3138j, -0.6964 + 0.6443j],
        [0.5420 - 0.2983j, -0.4013 - 0.1367j, -0.5 + 0.4331j],
    ],
    "het233": [
        [0.5021 - 0.4979j, 0.1802 + 0.6838j],
        [0.5208 - 0.2491j, -0.4762 - 0.3265j, -0.04464 + 0.5756j],
        [0.1944 + 0.5437j, 0.3736 - 0.4401j, -0.5680 - 0.1035j],
    ],
    "het224": [
        [0.0969 - 0.7218j, 0.4724 - 0.4964j],
        [0.4498 + 0.0562j, 0.8197 + 0.3501j],
        [0.0842 + 0.3192j, 0.3321 + 0.5578j, 0.2404 + 0.1967j, 0.5610 + 0.2416j],
    ],
    "uniform2_3x5_2": [
        [0, -0.99876 - 0.0497913j, 0],
        [-0.956069 - 0.293143j, 0, 0],
        [0.413005 - 0.910729j, 0, 0],
        [0, 0, -0.739477 + 0.673182j],
        [0, -0.99998 + 0.00639697j, 0],
        [0, 0.028172 + 0.999603j],
    ],
}


def ghz(n: int) -> CatalogEntry:
    """``(|0...0> + |1...1>)/sqrt(2)`` on ``n`` qubits."""
    if n < 2:
        raise ValueError(f"GHZ needs n >= 2, got {n}")
    dims = (2,) * n
    t = _from_kets(dims, ["0" * n, "1" * n])
    bound = {2: 0.7654, 3: 1.0}.get(n, upper_bound(dims))
    return CatalogEntry(
        name=f"ghz:{n}", dims=dims, tensor=t,
        expected_gme=round(math.sqrt(2 - math.sqrt(2)), 4),
        expected_bound=bound,
        citation="Example 1; Table I (2-qubit row)" if n == 2 else "Example 1",
        description=f"{n}-qubit GHZ state",
        tags=("symmetric",),
    )


def qutrit_ghz() -> CatalogEntry:
    return CatalogEntry(
        "qutrit_ghz", (3, 3, 3), _from_kets((3, 3, 3), QUTRIT_GHZ_KETS),
        0.9194, 1.1547, "Example 5", "3-qutrit GHZ state", tags=("symmetric",),
    )


def w3() -> CatalogEntry:
    return CatalogEntry(
        "w3", (2, 2, 2), _from_kets((2, 2, 2), W3_KETS),
        0.8165, 1.0, "Example 1; Table I (3-qubit); Table III (2x2x2)",
        "3-qubit W state", tags=("symmetric",),
    )


def cluster4() -> CatalogEntry:
    return CatalogEntry(
        "cluster4", (2, 2, 2, 2), _from_kets((2,) * 4, CLUSTER4_KETS),
        1.0282, 1.1371, "Example 2; Table I (4-qubit); Table II (4-qubit)",
        "4-qubit state with e^{2i pi/3} phases",
    )


def ame5() -> CatalogEntry:
    return CatalogEntry(
        "ame5", (2,) * 5, _from_kets((2,) * 5, AME5_KETS),
        1.1291, 1.2247, "Example 3; Table I (5-qubit); [EWZ17] (37)",
        "5-qubit absolutely maximally entangled state",
    )


def qubit6_external() -> CatalogEntry:
    return CatalogEntry(
        "qubit6_ac13", (2,) * 6, None, 1.1927, 1.2831,
        "Example 4; Table I (6-qubit); amplitudes in [AC13] Eq. (5)",
        "6-qubit state whose amplitudes are not printed in the source",
        external=True,
    )


def dicke_qutrit() -> CatalogEntry:
    return CatalogEntry(
        "dicke_qutrit", (3, 3, 3), _from_kets((3, 3, 3), DICKE_QUTRIT_KETS),
        1.0282, 1.1547, "Example 5", "3-qutrit Dicke state", tags=("symmetric",),
    )


def qutrit4_uniform() -> CatalogEntry:
    return CatalogEntry(
        "qutrit4", (3,) * 4, _from_kets((3,) * 4, QUTRIT4_KETS),
        1.1547, 1.2709, "Example 6; Table II (4-qutrit); [GZ14] (B1)",
        "4-qutrit state",
    )


def ququart4_uniform() -> CatalogEntry:
    return CatalogEntry(
        "ququart4", (4,) * 4, _from_kets((4,) * 4, QUQUART4_KETS),
        1.2247, 1.3229, "Example 7; Table II (4-ququart); [GBZ16] (B4)",
        "4-ququart 3-uniform state",
    )


def het223() -> CatalogEntry:
    return CatalogEntry(
        "het223", (2, 2, 3), _from_kets((2, 2, 3), HET223_KETS),
        0.9194, 1.0, "Example 8; Table III (2x2x3); [GBZ16] (A2)",
        "2x2x3 1-uniform state",
    )


def het233() -> CatalogEntry:
    return CatalogEntry(
        "het233", (2, 3, 3), _from_kets((2, 3, 3), HET233_KETS),
        0.9194, 1.0879, "Example 9; Table III (2x3x3)", "2x3x3 state",
    )


def het224() -> CatalogEntry:
    return CatalogEntry(
        "het224", (2, 2, 4), _from_kets((2, 2, 4), HET224_KETS),
        1.0, 1.0, "Example 10; Table III (2x2x4)", "2x2x4 state reaching the bound",
    )


def uniform2_3x5_2() -> CatalogEntry:
    dims = (3, 3, 3, 3, 3, 2)
    return CatalogEntry(
        "uniform2_3x5_2", dims, _from_kets(dims, UNIFORM2_KETS),
        1.2364, 1.3575, "Example 11; [GBZ16] (31)", "3x3x3x3x3x2 2-uniform state",
    )


_BUILDERS = {
    "ghz:2": lambda: ghz(2),
    "ghz:3": lambda: ghz(3),
    "w3": w3,
    "cluster4": cluster4,
    "ame5": ame5,
    "qubit6_ac13": qubit6_external,
    "qutrit_ghz": qutrit_ghz,
    "dicke_qutrit": dicke_qutrit,
    "qutrit4": qutrit4_uniform,
    "ququart4": ququart4_uniform,
    "het223": het223,
    "het233": het233,
    "het224": het224,
    "uniform2_3x5_2": uniform2_3x5_2,
}


def names() -> list[str]:
    return list(_BUILDERS)


def get(name: str) -> CatalogEntry:
    """Look up an entry; ``ghz:<n>`` works for any ``n >= 2``."""
    if name in _BUILDERS:
        return _BUILDERS[name]()
    if name.startswith("ghz:"):
        try:
            n = int(name[4:])
        except ValueError:
            raise KeyError(name) from None
        return ghz(n)
    raise KeyError(name)


def entries() -> list[CatalogEntry]:
    return [get(n) for n in names()]


def paper_closest_product(name: str) -> ProductState:
    """Published closest product state, each factor renormalized."""
    if name not in PAPER_CLOSEST:
        raise KeyError(name)
    return ProductState.from_vectors(PAPER_CLOSEST[name])
