"""Published bases of several horizontal and symmetry subspaces, as Pauli sums.

Each entry is a list of Hermitian Pauli-sum strings; the algebra element is
``i`` times the sum.
"""

import numpy as np

A = 1 / np.sqrt(5)
B = (5 + np.sqrt(15)) / 10
C = (5 - np.sqrt(15)) / 10
D = 2 / np.sqrt(5)

SPIN_THREE_HALVES_M = [
    f"{A} IX - {B} XX + {C} YY",
    f"{A} IY + {B} XY + {C} YX",
    f"-{A} IY + {C} XY + {B} YX",
    f"-{A} IX - {C} XX + {B} YY",
    f"-{D} IZ + {A} ZI",
    "XI", "XZ", "YI", "YZ", "ZX", "ZY", "ZZ",
]

SP2_K = ["IY", "XI", "XX", "XZ", "YI", "YX", "YZ", "ZI", "ZX", "ZZ"]
SP2_M = ["IX", "IZ", "XY", "YY", "ZY"]
SP2_H = ["IX"]

SO4_U2_K = ["IY", "YI", "YX", "YZ"]
SO4_U2_M = ["XY", "ZY"]
SO4_U2_CENTER = ["YI"]

CHARGE_M = ["YI", "YZ", "ZY", "sqrt(2)*IY + XY + YX", "-sqrt(2)*IY + XY + YX"]
CHARGE_H = ["XY", "YX"]
CHARGE_COMMUTANT = ["XY - YX", "XY + YX"]
CHARGE_CENTER = ["XY - YX"]

GRASSMANNIAN_K = [
    "IIX", "ZIX", "IIZ", "ZIZ",
    "-IXX + ZXX", "-IXZ + ZXZ", "-IYX + ZYX", "-IYZ + ZYZ",
    "IZX", "ZZX", "IZZ", "ZZZ",
    "-XIX + XZX", "-XIZ + XZZ", "-XXX - YYX", "-XXZ - YYZ",
    "-XYX + YXX", "-XYZ + YXZ", "-XIY + XZY", "-XXI - YYI",
    "-YIX + YZX", "-YIZ + YZZ",
    "-XYY + YXY", "XII - XZI", "XXY + YYY", "XYI - YXI", "-YIY + YZY", "-YII + YZI", "IIY", "ZIY",
    "-IXI + ZXI", "-IXY + ZXY", "-IYI + ZYI", "-IYY + ZYY",
    "IZI", "ZZI", "IZY", "ZZY", "ZII",
]

GRASSMANNIAN_M = [
    "-IXI - ZXI", "-IXY - ZXY", "-IYI - ZYI", "-IYY - ZYY", "-XII - XZI", "-XIY - XZY",
    "-XXI + YYI", "-XXY + YYY", "-XYI - YXI", "-XYY - YXY", "XIX + XZX", "XIZ + XZZ",
    "-YII - YZI", "-YIY - YZY", "XYX + YXX", "XYZ + YXZ", "-XXX + YYX", "-XXZ + YYZ",
    "YIX + YZX", "YIZ + YZZ", "IXX + ZXX", "IXZ + ZXZ", "IYX + ZYX", "IYZ + ZYZ",
]

# rows of the published dimension table: (r, gk_o, z_k, k_o)
TABLE_DIMS = {
    "su2/u1": (2, 0, 1, 0),
    "su4/su2-spin-half": (11, 1, 0, 3),
    "su4/su2xsu2": (9, 0, 0, 6),
    "su4/u3": (5, 1, 0, 9),
    "so4/so3": (3, 0, 0, 3),
    "su4/su2-spin-three-halves": (12, 0, 0, 3),
    "su4/sp2": (5, 0, 0, 10),
    "so4/su2": (3, 0, 0, 3),
    "so4/1xso2x1": (4, 1, 1, 0),
    "su8/s-u2xu6": (24, 0, 0, 39),
}


def elements(exprs):
    from horizon.pauli import parse_pauli_sum

    return np.array([1j * parse_pauli_sum(e) for e in exprs])
