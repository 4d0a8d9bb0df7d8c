"""Base-family construction: cell counts, local assignments, and the
closed-form circulant block oracle."""
from __future__ import annotations

import numpy as np
import pytest

from qtanner import csscode, families, gf2
from qtanner.families import FamilySpec, build_BS, build_L, build_L_blockmatrix, build_family
from qtanner.localcodes import Poly


def test_family_spec_validation():
    g = Poly.from_exponents(10, [0, 5])
    with pytest.raises(ValueError):
        FamilySpec("M", 10, g)
    with pytest.raises(ValueError):
        FamilySpec("L", 12, g)


def test_build_family_dispatch():
    g = Poly.from_exponents(10, [0, 5])
    via_spec = build_family(FamilySpec("L", 10, g))
    direct = build_L(10, g)
    assert via_spec.complex.faces == direct.complex.faces
    f = Poly.from_exponents(3, [1, 2])
    via_spec = build_family(FamilySpec("BS", 3, f))
    direct = build_BS(3, f)
    assert via_spec.complex.faces == direct.complex.faces


def test_l_generator_must_divide():
    with pytest.raises(ValueError):
        build_L(9, Poly.from_exponents(9, [0, 2]))


def test_l_assignment_shape(l10):
    lca = l10.assignment
    assert lca.check_vertices() == [0, 1, 2, 3]
    assert all(lca.length[v] == 20 for v in range(4))
    for v in range(4):
        assert lca.rows[v].shape == (10, 20)
        assert sorted(lca.coord[v].values()) == list(range(20))
    # X rows pair the generator across the two diagonal blocks
    assert set(int(w) for w in lca.rows[0].row_weights()) == {4}


def test_l14_reduced_rows(l14):
    lca = l14.assignment
    for v in (0, 1):  # X side carries the reduced basis
        weights = sorted(int(w) for w in lca.rows[v].row_weights())
        assert weights == [8, 8, 8, 8, 8, 8, 12]


def test_l14_reduced_and_full_span_same_code():
    g = Poly.from_exponents(14, [0, 1, 2, 3, 6, 7])
    full = families.build_L(14, g)
    red = families.build_L(14, g, reduced_generators=True)
    cf = csscode.assemble(full.complex, full.assignment)
    cr = csscode.assemble(red.complex, red.assignment)
    assert (cf.n, cf.k) == (cr.n, cr.k) == (28, 2)
    for a, b in ((cf.hx, cr.hx), (cf.hz, cr.hz)):
        r = gf2.rank(a)
        assert gf2.rank(b) == r
        assert gf2.rank(gf2.stack([a, b])) == r


@pytest.mark.parametrize(
    "ell,exps",
    [(10, [0, 5]), (6, [0, 3]), (14, [0, 1, 2, 3, 6, 7]), (12, [0, 1, 2, 3])],
)
def test_l_blockmatrix_oracle(ell, exps):
    g = Poly.from_exponents(ell, exps)
    b = families.build_L(ell, g)
    code = csscode.assemble(b.complex, b.assignment)
    bx, bz = build_L_blockmatrix(ell, g)
    for assembled, block in ((code.hx, bx), (code.hz, bz)):
        r = gf2.rank(assembled)
        assert gf2.rank(block) == r
        assert gf2.rank(gf2.stack([assembled, block])) == r


def test_bs_assignment_shape(bs4):
    lca = bs4.assignment
    verts = lca.check_vertices()
    assert verts[:4] == [0, 1, 2, 3]
    assert len(verts) == bs4.complex.num_vertices  # middles carry checks too
    for v in range(4):
        assert lca.length[v] == 16
        assert lca.rows[v].shape == (4, 16)
        assert set(int(w) for w in lca.rows[v].row_weights()) == {8}
    for v in verts[4:]:
        assert lca.length[v] == 4
        assert lca.rows[v].shape == (1, 4)
        assert list(lca.rows[v].row_weights()) == [4]


def test_bs_any_f_assembles_orthogonally():
    # the dual pairing kills the overlap for every f, star-invariant or not
    for exps in ([1], [0, 1], [1, 3], [0, 1, 2, 3]):
        b = build_BS(4, Poly.from_exponents(4, exps))
        code = csscode.assemble(b.complex, b.assignment)
        assert code.n == 32
        assert gf2.mul(code.hx, gf2.transpose(code.hz)).is_zero()


def test_presentation_metadata(l10, bs3):
    for b in (l10, bs3):
        pres = b.presentation
        assert pres.basepoint == 0
        assert len(pres.edge_words) == b.complex.num_edges
        assert pres.generators == 2


def test_base_code_parameters(l10_code, l14_code, bs3_code, bs4_code):
    assert (l10_code.n, l10_code.k) == (20, 2)
    assert (l14_code.n, l14_code.k) == (28, 2)
    assert (bs3_code.n, bs3_code.k) == (24, 0)
    assert (bs4_code.n, bs4_code.k) == (32, 2)


def test_weight_profiles_match_published_w(l10_code, l14_code, bs3_code, bs4_code):
    for code, w in ((l10_code, 4), (l14_code, 12), (bs3_code, 6), (bs4_code, 8)):
        prof = csscode.weight_profile(code)
        assert prof["W"] == w


def test_bs4_row_weight_histogram(bs4_code):
    prof = csscode.weight_profile(bs4_code)
    assert prof["row_hist_x"] == {4: 8, 8: 8}
    assert prof["row_hist_z"] == {4: 8, 8: 8}
