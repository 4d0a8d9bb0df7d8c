"""Square-complex structure checks and the text serialization."""
from __future__ import annotations

import pytest

from qtanner import complexes
from qtanner.complexes import SquareComplex, canonical_face


def _single_square():
    edges = ((0, 1), (1, 2), (2, 3), (3, 0))
    face = canonical_face((0, 2, 4, 6))
    return SquareComplex(4, edges, (face,), side=(0, 1, 0, 1))


def test_single_square_valid():
    s = _single_square()
    assert complexes.validate(s)
    assert s.face_vertices(0) == (0, 1, 2, 3)


def test_canonical_face_all_variants_agree():
    path = (0, 2, 4, 6)
    rev = tuple(tok ^ 1 for tok in reversed(path))
    for base in (path, rev):
        for r in range(4):
            rotated = base[r:] + base[:r]
            assert canonical_face(rotated) == canonical_face(path)


def test_broken_chain_reports_face_index():
    s = _single_square()
    bad = SquareComplex(4, s.edges, ((0, 3, 4, 6),), side=s.side)
    msgs = complexes.violations(bad)
    assert msgs and all("face 0" in m for m in msgs)


def test_edge_endpoint_out_of_range():
    bad = SquareComplex(2, ((0, 5),), ())
    assert any("out of range" in m for m in complexes.violations(bad))


def test_self_loop_rejected():
    bad = SquareComplex(3, ((1, 1),), ())
    assert any("self-loop" in m for m in complexes.violations(bad))


def test_same_side_edge_rejected():
    bad = SquareComplex(4, ((0, 2),), (), side=(0, 1, 0, 1))
    assert any("side-0" in m for m in complexes.violations(bad))


def test_face_token_out_of_range():
    bad = SquareComplex(4, ((0, 1), (1, 2), (2, 3), (3, 0)), ((0, 2, 4, 99),))
    assert any("edge id out of range" in m for m in complexes.violations(bad))


def test_l_family_cell_counts(l10):
    s = l10.complex
    assert (s.num_vertices, s.num_edges, s.num_faces) == (4, 24, 20)
    assert complexes.validate(s)


def test_l3_cell_counts():
    from qtanner import families
    from qtanner.localcodes import Poly

    b = families.build_L(3, Poly.from_exponents(3, [0, 1, 2]))
    s = b.complex
    assert (s.num_vertices, s.num_edges, s.num_faces) == (4, 10, 6)


def test_bs_family_cell_counts(bs3, bs4):
    s3 = bs3.complex
    assert (s3.num_vertices, s3.num_edges, s3.num_faces) == (16, 40, 24)
    s4 = bs4.complex
    assert (s4.num_vertices, s4.num_edges, s4.num_faces) == (20, 52, 32)
    assert complexes.validate(s3) and complexes.validate(s4)


def test_l_face_neighborhoods_cover_all_faces(l10):
    s = l10.complex
    for v in range(4):
        nb = complexes.face_neighborhood(s, v)
        assert len(nb) == s.num_faces
        assert sorted(fid for fid, _ in nb) == list(range(s.num_faces))


def test_bs_corner_and_middle_neighborhood_sizes(bs3):
    s = bs3.complex
    for v in range(4):
        assert len(complexes.face_neighborhood(s, v)) == 12  # 4 * ell
    for v in range(4, s.num_vertices):
        assert len(complexes.face_neighborhood(s, v)) == 4


def test_faces_alternate_sides(l14, bs4):
    for s in (l14.complex, bs4.complex):
        for fid in range(s.num_faces):
            sides = [s.side[v] for v in s.face_vertices(fid)]
            assert sides[0] == sides[2] != sides[1] == sides[3]


def test_diagonal_graphs_l10(l10):
    gx, gz = complexes.diagonal_graphs(l10.complex)
    assert gx.side == 0 and gz.side == 1
    assert gx.vertices == (0, 1) and gz.vertices == (2, 3)
    assert len(gx.edges) == len(gz.edges) == 20
    assert set(gx.degrees().values()) == {20}


def test_diagonal_graphs_need_bipartition():
    s = SquareComplex(4, ((0, 1), (1, 2), (2, 3), (3, 0)), (canonical_face((0, 2, 4, 6)),))
    with pytest.raises(ValueError):
        complexes.diagonal_graphs(s)


def test_text_roundtrip(l10, bs3):
    for s in (l10.complex, bs3.complex):
        back = complexes.from_text(complexes.to_text(s))
        assert back.num_vertices == s.num_vertices
        assert back.edges == s.edges
        assert back.faces == s.faces
        assert back.side is None  # bipartition is not serialized
        relabeled = SquareComplex(back.num_vertices, back.edges, back.faces, side=s.side)
        assert complexes.validate(relabeled)


def test_from_text_line_count_mismatch():
    with pytest.raises(ValueError):
        complexes.from_text("1 1 0\n")


def test_from_text_zero_face_id():
    text = "4 4 1\n0 1\n1 2\n2 3\n3 0\n1 2 0 4\n"
    with pytest.raises(ValueError):
        complexes.from_text(text)
