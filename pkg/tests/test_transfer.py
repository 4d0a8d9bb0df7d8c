"""Sheet-sum and fiber-sum chain maps and the parameter bounds they
certify for odd-index lifts."""
from __future__ import annotations

import pytest

from qtanner import covering, csscode, distance, gf2, groups, transfer
from qtanner.gf2 import BitVector


@pytest.fixture(scope="module")
def even_cover(l10):
    covers = covering.enumerate_galois_covers(
        l10.complex, l10.presentation, groups.cyclic(2)
    )
    cm = covers[0]
    return cm, csscode.lift_code(cm, l10.assignment)


@pytest.fixture(scope="module")
def maps96(bs4_code, code96, cover96):
    return transfer.build_chain_maps(bs4_code, code96, cover96)


def test_round_trip_identity_odd(maps96, bs4_code):
    rt = maps96.round_trip_qubit()
    assert rt == gf2.identity(bs4_code.n)


def test_round_trip_zero_even(even_cover, l10_code):
    cm, lifted = even_cover
    pair = transfer.build_chain_maps(l10_code, lifted, cm)
    assert pair.round_trip_qubit().is_zero()


def test_tau_vector_support(maps96):
    v = BitVector.from_support(32, [0, 7])
    image = maps96.tau_vector(v)
    assert image.weight() == 6
    assert image.support() == [0, 1, 2, 21, 22, 23]


def test_chain_maps_reject_wrong_shapes(bs4_code, cover96):
    with pytest.raises(ValueError):
        transfer.build_chain_maps(bs4_code, bs4_code, cover96)


def test_tau_image_logical_iff_base_logical(bs4_code, code96, maps96):
    # fiber sums of base X-logicals stay X-logical, and fiber sums landing
    # in the lifted stabilizer group come from base stabilizers
    ker = gf2.kernel_basis(bs4_code.hz)
    for i in range(ker.nrows):
        x = ker.row(i)
        tx = maps96.tau_vector(x)
        assert distance.verify_witness(code96, "X", tx) == distance.verify_witness(
            bs4_code, "X", x
        )
        if gf2.in_rowspace(code96.hx, tx):
            assert gf2.in_rowspace(bs4_code.hx, x)


def test_parameter_bounds_odd_index(bs4_code, code96, cover96):
    for side in ("X", "Z"):
        base_rep = distance.exact_distance(bs4_code, side)
        rep = transfer.verify_parameter_bounds(bs4_code, code96, cover96, base_rep)
        assert rep["ok"]
        assert rep["applicable"]
        assert rep["k_equal"]
        assert rep["witness_weight"] == 12
        assert rep["lifted_distance_upper_bound"] == 12
        assert all(rep["checks"].values())


def test_parameter_bounds_index_five(bs4):
    z5 = groups.cyclic(5)
    covers = covering.enumerate_galois_covers(bs4.complex, bs4.presentation, z5)
    cm = next(c for c in covers if c.hom == (1, 3))
    lifted = csscode.lift_code(cm, bs4.assignment)
    base = csscode.assemble(bs4.complex, bs4.assignment)
    rep = transfer.verify_parameter_bounds(
        base, lifted, cm, distance.exact_distance(base, "X")
    )
    assert rep["ok"]
    assert rep["witness_weight"] == 20
    assert rep["lifted_distance_upper_bound"] == 20


def test_parameter_bounds_even_not_applicable(even_cover, l10_code):
    cm, lifted = even_cover
    rep = transfer.verify_parameter_bounds(
        l10_code, lifted, cm, distance.exact_distance(l10_code, "X")
    )
    assert not rep["applicable"]
    assert rep["ok"]
    assert "reason" in rep


def test_parameter_bounds_need_exact_report(bs4_code, code96, cover96):
    randomized = distance.randomized_distance(bs4_code, "X", 200, 1)
    with pytest.raises(ValueError, match="exact"):
        transfer.verify_parameter_bounds(bs4_code, code96, cover96, randomized)


def test_tau_witness_is_gamma_invariant(bs4_code, code96, cover96, maps96):
    base_rep = distance.exact_distance(bs4_code, "X")
    image = maps96.tau_vector(base_rep.witness)
    assert transfer.verify_gamma_invariance(code96, cover96, image, "X")


def test_gamma_invariance_rejects_non_logicals(code96, cover96):
    with pytest.raises(ValueError, match="logical"):
        transfer.verify_gamma_invariance(
            code96, cover96, BitVector.zeros(code96.n), "X"
        )
