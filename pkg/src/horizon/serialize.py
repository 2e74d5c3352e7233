"""JSON documents for algebra bases, subspaces, decompositions and generator files."""

from __future__ import annotations

import json

import numpy as np

from .algebra import AlgebraBasis, Decomposition, Subspace
from .pauli import parse_pauli_sum, pauli_matrix

SCHEMA_VERSION = 1


def matrix_to_json(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [M.real.tolist(), M.imag.tolist()]


def matrix_from_json(doc) -> np.ndarray:
    arr = np.asarray(doc, dtype=float)
    if arr.ndim != 3 or arr.shape[0] != 2 or arr.shape[1] != arr.shape[2]:
        raise ValueError("dense matrices are written as [re, im] with square parts")
    return arr[0] + 1j * arr[1]


def basis_to_json(basis: AlgebraBasis) -> dict:
    return {
        "ambient_dim": basis.ambient_dim,
        "dim": basis.dim,
        "basis": [matrix_to_json(X) for X in basis.elements],
        "labels": list(basis.labels),
    }


def basis_from_json(doc: dict) -> AlgebraBasis:
    els = np.array([matrix_from_json(m) for m in doc["basis"]])
    return AlgebraBasis(els, tuple(doc.get("labels", ())))


def subspace_to_json(sub: Subspace) -> dict:
    mats = sub.matrices()
    return {
        "ambient_dim": sub.ambient.ambient_dim,
        "dim": sub.dim,
        "basis": [matrix_to_json(X) for X in mats],
        "labels": sub.labels(),
        "coords": sub.coords.tolist(),
    }


def decomposition_to_json(dec: Decomposition, include_bases: bool = True) -> dict:
    dims = dict(zip(("r", "gk_o", "z_k", "k_o"), map(int, dec.dims)))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "ambient_dim": dec.ambient.ambient_dim,
        "dim_g": dec.ambient.dim,
        "dims": dims,
        "residuals": {k: float(v) for k, v in dec.residuals.items()},
        "labels": {name: getattr(dec, name).labels() for name in ("r", "gk_o", "z_k", "k_o")},
    }
    if include_bases:
        doc["subspaces"] = {name: subspace_to_json(getattr(dec, name)) for name in ("r", "gk_o", "z_k", "k_o")}
    return doc


def _generator_from_json(item) -> np.ndarray:
    if isinstance(item, str):
        # "XI + IX" stands for the algebra element i(XI + IX)
        return 1j * parse_pauli_sum(item)
    if isinstance(item, dict) and "terms" in item:
        item = item["terms"]
    if isinstance(item, dict) and "pauli" in item:
        item = [item]
    if isinstance(item, list) and item and isinstance(item[0], dict):
        total = None
        for term in item:
            if set(term) - {"coeff_re", "coeff_im", "pauli"} or "pauli" not in term:
                raise ValueError(f"bad Pauli term {term!r}")
            c = complex(term.get("coeff_re", 0.0), term.get("coeff_im", 0.0))
            P = c * pauli_matrix(term["pauli"])
            if total is not None and P.shape != total.shape:
                raise ValueError("Pauli words of different lengths in one generator")
            total = P if total is None else total + P
        return total
    return matrix_from_json(item)


def load_generators(source) -> list[np.ndarray]:
    """Generators from a path, a JSON string or an already parsed document.

    The document is a list (or ``{"generators": [...]}``) whose items are one
    of: a list of ``{"coeff_re", "coeff_im", "pauli"}`` terms; a dense
    ``[re, im]`` matrix; or a Pauli-sum string such as ``"XI + IX"``, read as
    ``i`` times that Hermitian sum.
    """
    if isinstance(source, (str, bytes)) and not str(source).lstrip().startswith(("[", "{")):
        with open(source) as fh:
            doc = json.load(fh)
    elif isinstance(source, (str, bytes)):
        doc = json.loads(source)
    else:
        doc = source
    if isinstance(doc, dict):
        doc = doc.get("generators")
    if not isinstance(doc, list) or not doc:
        raise ValueError("generator file must hold a non-empty list")
    mats = [_generator_from_json(item) for item in doc]
    shapes = {m.shape for m in mats}
    if len(shapes) != 1:
        raise ValueError(f"generators have different shapes: {sorted(shapes)}")
    return mats
