import numpy as np
import pytest

import fixtures as fx
from horizon.algebra import Subspace, spans_equal, subspace_from_matrices
from horizon.errors import NotSubalgebra, UnknownSpace
from horizon.spaces import TABLE_SPACES, custom_space, get_space, homogeneous_space, space_ids, spin_three_halves
from oracles import brute_commutant, pauli, same_span


def _sub(space, exprs):
    return subspace_from_matrices(space.g, fx.elements(exprs))


def test_ids_and_aliases():
    ids = space_ids()
    assert ids[: len(TABLE_SPACES)] == list(TABLE_SPACES)
    assert "bloch" in space_ids(include_aliases=True)
    assert homogeneous_space("bloch") is homogeneous_space("su2/u1")
    assert get_space("su8/grassmannian").space_id == "su8/s-u2xu6"
    with pytest.raises(UnknownSpace):
        get_space("su3/so3")


@pytest.mark.parametrize("sid", space_ids())
def test_every_space_is_reductive(sid):
    sp = homogeneous_space(sid)
    rep = sp.symmetric_report()
    assert rep.is_reductive()
    assert rep.is_symmetric() == sp.spec.symmetric
    dec = sp.decomposition
    assert sum(dec.dims) == sp.g.dim
    ref = brute_commutant(sp.g.elements, sp.k.matrices())
    assert sp.commutant.dim == len(ref)


def test_spin_three_halves_representation():
    Sx, Sy, Sz = spin_three_halves()
    assert np.allclose(Sx @ Sy - Sy @ Sx, 2j * Sz)
    cas = Sx @ Sx + Sy @ Sy + Sz @ Sz
    assert np.allclose(cas, 15 * np.eye(4))


def test_spin_three_halves_m():
    sp = homogeneous_space("su4/su2-spin-three-halves")
    assert spans_equal(sp.m, _sub(sp, fx.SPIN_THREE_HALVES_M))
    assert sp.commutant.dim == 0


def test_spin_three_halves_fixture_is_orthogonal():
    # the published vectors come without a normalization; check them rather than trust them
    M = fx.elements(fx.SPIN_THREE_HALVES_M)
    G = np.einsum("aij,bij->ab", M.conj(), M).real
    assert np.allclose(G, np.diag(np.diag(G)), atol=1e-12)
    assert np.all(np.diag(G) > 0)
    k = homogeneous_space("su4/su2-spin-three-halves").k.matrices()
    assert np.abs(np.einsum("aij,bij->ab", M.conj(), k)).max() < 1e-12


def test_sp2_split():
    sp = homogeneous_space("su4/sp2")
    assert spans_equal(sp.k, _sub(sp, fx.SP2_K))
    assert spans_equal(sp.m, _sub(sp, fx.SP2_M))
    h = sp.cartan_subalgebra(seed=1j * pauli("IX"))
    assert h.labels() == ["iIX"]


def test_so4_u2_split():
    sp = homogeneous_space("so4/u2")
    assert spans_equal(sp.k, _sub(sp, fx.SO4_U2_K))
    assert spans_equal(sp.m, _sub(sp, fx.SO4_U2_M))
    assert spans_equal(sp.commutant, _sub(sp, fx.SO4_U2_CENTER))
    assert spans_equal(sp.decomposition.z_k, _sub(sp, fx.SO4_U2_CENTER))


def test_charge_preserving_split():
    sp = homogeneous_space("so4/1xso2x1")
    assert spans_equal(sp.m, _sub(sp, fx.CHARGE_M))
    assert spans_equal(sp.commutant, _sub(sp, fx.CHARGE_COMMUTANT))
    assert spans_equal(sp.commutant, _sub(sp, fx.CHARGE_H))
    assert spans_equal(sp.decomposition.z_k, _sub(sp, fx.CHARGE_CENTER))
    # the listed maximal abelian subalgebra straddles k and m
    h = _sub(sp, fx.CHARGE_H)
    H = h.matrices()
    assert np.abs(H[0] @ H[1] - H[1] @ H[0]).max() < 1e-12
    assert len(brute_commutant(sp.g.elements, H)) == 2


def test_grassmannian_split():
    sp = homogeneous_space("su8/s-u2xu6")
    assert spans_equal(sp.k, _sub(sp, fx.GRASSMANNIAN_K))
    assert spans_equal(sp.m, _sub(sp, fx.GRASSMANNIAN_M))
    assert sp.k.dim == 39 and sp.m.dim == 24
    assert sp.cartan_subalgebra().dim == 2


def test_spin_half_commutant_is_swap_like():
    sp = homogeneous_space("su4/su2-spin-half")
    heis = subspace_from_matrices(sp.g, [1j * (pauli("XX") + pauli("YY") + pauli("ZZ"))])
    assert spans_equal(sp.commutant, heis)


def test_custom_space_and_errors():
    g = [1j * pauli(w) for w in ("XI", "ZI", "YI", "IZ")]
    sp = custom_space(g, [1j * pauli("ZI")])
    assert sp.g.dim == 4 and sp.decomposition.dims == (2, 1, 1, 0)
    with pytest.raises(NotSubalgebra):
        custom_space(g, [1j * pauli("ZI"), 1j * pauli("XI")])
    with pytest.raises(NotSubalgebra):
        custom_space([1j * pauli("XI"), 1j * pauli("ZI")], [1j * pauli("XI")])
