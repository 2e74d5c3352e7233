"""Pauli strings, Pauli sums and the normalized Pauli basis of su(2^n)."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_PHASES = (1, -1, 1j, -1j)


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis with a phase in {+-1, +-i}.

    Qubit 0 is the leftmost letter and the leftmost Kronecker factor.
    """

    letters: str
    phase: complex = 1

    def __post_init__(self):
        if not self.letters or set(self.letters) - set("IXYZ"):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")
        if not any(np.isclose(self.phase, p) for p in _PHASES):
            raise ValueError("phase must be one of +-1, +-i")

    @property
    def qubit_count(self) -> int:
        return len(self.letters)

    def matrix(self) -> np.ndarray:
        return self.phase * _string_matrix(self.letters)

    def __mul__(self, other: "PauliString") -> "PauliString":
        if not isinstance(other, PauliString):
            return NotImplemented
        if other.qubit_count != self.qubit_count:
            raise ValueError("qubit counts differ")
        phase = self.phase * other.phase
        letters = []
        for a, b in zip(self.letters, other.letters):
            c, ph = _single_product(a, b)
            letters.append(c)
            phase *= ph
        return PauliString("".join(letters), phase)

    def commutes_with(self, other: "PauliString") -> bool:
        anti = sum(a != "I" and b != "I" and a != b for a, b in zip(self.letters, other.letters))
        return anti % 2 == 0

    def __str__(self):
        sign = {1: "", -1: "-", 1j: "i", -1j: "-i"}[complex(self.phase)]
        return sign + self.letters


def _single_product(a, b):
    if a == "I":
        return b, 1
    if b == "I":
        return a, 1
    if a == b:
        return "I", 1
    cyc = "XYZ"
    c = ({"X", "Y", "Z"} - {a, b}).pop()
    return c, (1j if (cyc.index(b) - cyc.index(a)) % 3 == 1 else -1j)


@lru_cache(maxsize=4096)
def _string_matrix(letters: str) -> np.ndarray:
    m = np.ones((1, 1), dtype=complex)
    for c in letters:
        m = np.kron(m, PAULI_MATRICES[c])
    m.setflags(write=False)
    return m


def pauli_matrix(letters: str) -> np.ndarray:
    return _string_matrix(letters)


def pauli_words(n: int, include_identity: bool = False) -> list[str]:
    """All length-n words over IXYZ in lexicographic order."""
    words = ["".join(t) for t in itertools.product("IXYZ", repeat=n)]
    return words if include_identity else words[1:]


def _split_terms(expr: str):
    terms, depth, cur = [], 0, ""
    for ch in expr:
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("e", "E", "*")):
            terms.append(cur)
            cur = ""
        depth += (ch == "(") - (ch == ")")
        cur += ch
    terms.append(cur)
    return [t.replace(" ", "") for t in terms if t.strip()]


def parse_pauli_sum(expr: str, n: int | None = None) -> np.ndarray:
    """Hermitian matrix of a signed sum like ``"-IXX + ZXX"`` or ``"sqrt(2)*IY + XY"``.

    Multiply by 1j to get the corresponding algebra element, the convention
    behind "i span{...}" listings.
    """
    total = None
    for term in _split_terms(expr):
        m = re.fullmatch(r"([+-]?)(.*?)\*?([IXYZ]+)", term)
        if m is None:
            raise ValueError(f"cannot parse term {term!r} of {expr!r}")
        sign, coeff, word = m.groups()
        if coeff and not re.fullmatch(r"[0-9.eE+\-*/()sqrt]+", coeff):
            raise ValueError(f"bad coefficient {coeff!r}")
        c = float(eval(coeff, {"__builtins__": {}, "sqrt": np.sqrt})) if coeff else 1.0  # noqa: S307
        c = -c if sign == "-" else c
        if n is not None and len(word) != n:
            raise ValueError(f"word {word} has wrong length")
        term_m = c * pauli_matrix(word)
        total = term_m if total is None else total + term_m
    if total is None:
        raise ValueError("empty Pauli sum")
    return total


class PauliSum:
    """Real-weighted sum of Pauli strings acting on ``n`` qubits."""

    def __init__(self, terms, n_qubits: int):
        self.n_qubits = n_qubits
        self.terms: list[tuple[complex, str]] = []
        for coeff, word in terms:
            if len(word) != n_qubits:
                raise ValueError(f"word {word!r} does not act on {n_qubits} qubits")
            self.terms.append((coeff, word))
        self._sparse = None

    def __len__(self):
        return len(self.terms)

    def sparse(self) -> sp.csr_matrix:
        if self._sparse is None:
            dim = 2**self.n_qubits
            acc = sp.csr_matrix((dim, dim), dtype=complex)
            for coeff, word in self.terms:
                acc = acc + coeff * pauli_sparse(word)
            self._sparse = acc.tocsr()
        return self._sparse

    def dense(self) -> np.ndarray:
        return self.sparse().toarray()

    def is_hermitian(self, atol=1e-12) -> bool:
        return all(abs(np.imag(c)) <= atol for c, _ in self.terms)

    def __repr__(self):
        body = " + ".join(f"{np.real_if_close(c)}*{w}" for c, w in self.terms[:6])
        more = " + ..." if len(self.terms) > 6 else ""
        return f"PauliSum({body}{more})"


def pauli_sparse(word: str) -> sp.csr_matrix:
    """Sparse matrix of a Pauli word built from bit operations, big-endian."""
    n = len(word)
    dim = 2**n
    idx = np.arange(dim)
    flip = 0
    phase = np.ones(dim, dtype=complex)
    for q, c in enumerate(word):
        bit = (idx >> (n - 1 - q)) & 1
        if c in "XY":
            flip |= 1 << (n - 1 - q)
        if c == "Z":
            phase *= 1 - 2 * bit
        elif c == "Y":
            # Y|0> = i|1>, Y|1> = -i|0>: column x picks up i * (-1)^bit
            phase *= 1j * (1 - 2 * bit)
    rows = idx ^ flip
    return sp.csr_matrix((phase, (rows, idx)), shape=(dim, dim))


def pauli_label(M, tol: float = 1e-9, digits: int = 4) -> str:
    """Readable label of a matrix expanded in Pauli words, e.g. ``i(0.7071 XI - 0.7071 IX)``.

    Skew-Hermitian input is written with a leading ``i`` in front of a real
    Pauli sum; anything else is printed with complex coefficients.
    """
    M = np.asarray(M)
    N = M.shape[0]
    n = int(round(np.log2(N)))
    if 2**n != N:
        return "<non-qubit matrix>"
    words = pauli_words(n, include_identity=True)
    skew = np.allclose(M, -M.conj().T, atol=tol)
    target = -1j * M if skew else M
    parts = []
    for w in words:
        c = np.trace(pauli_matrix(w).conj().T @ target) / N
        if abs(c) <= tol:
            continue
        c = np.real_if_close(np.round(c, digits), tol=1e6)
        parts.append((c, w))
    if not parts:
        return "0"
    text = ""
    for c, w in parts:
        if np.iscomplexobj(c):
            text += f" + ({c}) {w}"
            continue
        c = float(c)
        sign = " - " if c < 0 else " + "
        mag = "" if np.isclose(abs(c), 1.0) else f"{abs(c):g} "
        text += f"{sign}{mag}{w}"
    text = text.strip()
    if text.startswith("+ "):
        text = text[2:]
    elif text.startswith("- "):
        text = "-" + text[2:]
    if not skew:
        return text
    return f"i{text}" if len(parts) == 1 and not text.startswith("-") else f"i({text})"
