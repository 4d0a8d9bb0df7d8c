"""Exact and randomized distance searches with verified witnesses."""
from __future__ import annotations

import math

import numpy as np
import pytest

from qtanner import distance, gf2
from qtanner.gf2 import BitVector


@pytest.mark.parametrize(
    "code_fixture,want",
    [("l10_code", 2), ("l14_code", 6), ("bs4_code", 4)],
)
def test_exact_base_distances(code_fixture, want, request):
    code = request.getfixturevalue(code_fixture)
    for side in ("X", "Z"):
        rep = distance.exact_distance(code, side)
        assert rep.value == want
        assert rep.exhaustive
        assert rep.method == "exact"
        assert rep.witness.weight() == want
        assert distance.verify_witness(code, side, rep.witness)


def test_exact_zero_k_is_infinite(bs3_code):
    rep = distance.exact_distance(bs3_code, "X")
    assert math.isinf(rep.value)
    assert rep.witness is None
    assert rep.exhaustive


def test_exact_kernel_dimension_guard(code96):
    with pytest.raises(ValueError, match="kernel dimension"):
        distance.exact_distance(code96, "X")


def test_randomized_matches_exact(bs4_code):
    rep = distance.randomized_distance(bs4_code, "X", 1000, 1)
    assert rep.value == 4
    assert not rep.exhaustive
    assert rep.witness.weight() == 4
    assert distance.verify_witness(bs4_code, "X", rep.witness)


def test_randomized_worker_split_still_finds(bs4_code):
    for workers in (1, 2, 3):
        rep = distance.randomized_distance(bs4_code, "X", 1000, 1, workers=workers)
        assert rep.value == 4
        assert distance.verify_witness(bs4_code, "X", rep.witness)


def test_randomized_deterministic(l14_code):
    a = distance.randomized_distance(l14_code, "Z", 400, 9)
    b = distance.randomized_distance(l14_code, "Z", 400, 9)
    assert a.value == b.value
    assert np.array_equal(a.witness.words, b.witness.words)


def test_randomized_monotone_in_iterations(l14_code):
    short = distance.randomized_distance(l14_code, "X", 100, 5)
    long = distance.randomized_distance(l14_code, "X", 800, 5)
    assert long.value <= short.value


def test_randomized_zero_k(bs3_code):
    rep = distance.randomized_distance(bs3_code, "Z", 50, 0)
    assert math.isinf(rep.value)
    assert rep.exhaustive


def test_randomized_rejects_bad_iterations(bs4_code):
    with pytest.raises(ValueError):
        distance.randomized_distance(bs4_code, "X", 0, 1)


def test_collect_logicals_at_distance(bs4_code):
    found = distance.collect_logicals(bs4_code, "X", 4, 500, 3)
    assert found
    for v in found:
        assert v.weight() <= 4
        assert distance.verify_witness(bs4_code, "X", v)
    below = distance.collect_logicals(bs4_code, "X", 3, 500, 3)
    assert below == []


def test_collect_logicals_zero_k(bs3_code):
    assert distance.collect_logicals(bs3_code, "X", 10, 50, 0) == []


def test_verify_witness_rejects_stabilizers_and_zero(bs4_code):
    zero = BitVector.zeros(bs4_code.n)
    assert not distance.verify_witness(bs4_code, "X", zero)
    stab_row = bs4_code.hx.row(0)
    assert not distance.verify_witness(bs4_code, "X", stab_row)
    # a Z check anticommutes with an X view of itself unless orthogonal;
    # either way it is not an X logical
    assert not distance.verify_witness(bs4_code, "X", bs4_code.hz.row(0))


def test_report_json_finite(bs4_code):
    rep = distance.exact_distance(bs4_code, "Z")
    payload = rep.to_json()
    assert payload["value"] == 4
    assert payload["witness"] == rep.witness.to_hex()
    assert payload["method"] == "exact"


def test_report_json_infinite(bs3_code):
    payload = distance.exact_distance(bs3_code, "X").to_json()
    assert payload["value"] == "inf"
    assert payload["witness"] is None
