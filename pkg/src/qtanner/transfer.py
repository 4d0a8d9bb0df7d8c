"""Chain maps between a base Tanner code and its lifts.

The sheet-sum map sends a lifted qubit vector to its per-face parity; the
fiber-sum map copies a base vector onto every sheet.  Both commute with
the check matrices, and their composite on the base space is ``t`` times
the identity — so for odd-index covers the fiber sum carries logicals to
logicals and the lifted code inherits parameter bounds from the base.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gf2
from .covering import CoveringMap, deck_action
from .csscode import CssCode
from .distance import DistanceReport, _spaces, verify_witness
from .gf2 import BitMatrix, BitVector

__all__ = [
    "ChainMapPair",
    "build_chain_maps",
    "verify_parameter_bounds",
    "verify_gamma_invariance",
]


@dataclass
class ChainMapPair:
    """Sheet-sum (``pi``) and fiber-sum (``tau``) maps on qubit and
    syndrome spaces of a base code and one of its lifts."""

    index: int
    pi_qubit: BitMatrix
    tau_qubit: BitMatrix
    pi_syn_x: BitMatrix
    tau_syn_x: BitMatrix
    pi_syn_z: BitMatrix
    tau_syn_z: BitMatrix

    def round_trip_qubit(self) -> BitMatrix:
        """The composite sheet-sum-after-fiber-sum on the base qubit
        space: the identity for odd index, zero for even."""
        return gf2.mul(self.pi_qubit, self.tau_qubit)

    def tau_vector(self, v: BitVector) -> BitVector:
        """Fiber sum of a base qubit vector."""
        t = self.index
        out = BitVector.zeros(self.tau_qubit.nrows)
        for j in v.support():
            for s in range(t):
                out.set(j * t + s, 1)
        return out


def _block_expand(nrows: int, t: int) -> BitMatrix:
    """The ``nrows x (nrows * t)`` matrix with row ``i`` supported on the
    block ``[i*t, (i+1)*t)``."""
    m = gf2.zeros(nrows, nrows * t)
    for i in range(nrows):
        for s in range(t):
            m.set(i, i * t + s, 1)
    return m


def build_chain_maps(base: CssCode, lifted: CssCode, cm: CoveringMap) -> ChainMapPair:
    """Construct and verify the chain maps for a lift of index ``t``.

    Raises ``ValueError`` when the shapes do not look like a lift of the
    base, and ``AssertionError`` if a commuting-square identity fails
    (which would mean the codes were not assembled from the same local
    data).
    """
    t = cm.index
    if lifted.n != t * base.n:
        raise ValueError(f"lifted n={lifted.n} is not {t} x base n={base.n}")
    if lifted.hx.nrows != t * base.hx.nrows or lifted.hz.nrows != t * base.hz.nrows:
        raise ValueError("check row counts do not match a lift of the base")
    pi_qubit = _block_expand(base.n, t)
    pair = ChainMapPair(
        index=t,
        pi_qubit=pi_qubit,
        tau_qubit=gf2.transpose(pi_qubit),
        pi_syn_x=_block_expand(base.hx.nrows, t),
        tau_syn_x=gf2.transpose(_block_expand(base.hx.nrows, t)),
        pi_syn_z=_block_expand(base.hz.nrows, t),
        tau_syn_z=gf2.transpose(_block_expand(base.hz.nrows, t)),
    )
    for bmat, lmat, psyn, tsyn in (
        (base.hx, lifted.hx, pair.pi_syn_x, pair.tau_syn_x),
        (base.hz, lifted.hz, pair.pi_syn_z, pair.tau_syn_z),
    ):
        if gf2.mul(bmat, pair.pi_qubit) != gf2.mul(psyn, lmat):
            raise AssertionError("sheet-sum square does not commute")
        if gf2.mul(lmat, pair.tau_qubit) != gf2.mul(tsyn, bmat):
            raise AssertionError("fiber-sum square does not commute")
    return pair


def verify_parameter_bounds(
    base: CssCode,
    lifted: CssCode,
    cm: CoveringMap,
    base_dist: DistanceReport,
) -> dict:
    """Check the parameter relations an odd-index lift must satisfy.

    Needs an exact base distance report with its witness.  Returns a
    structured report; ``ok`` is True iff every applicable bound holds.
    For even index the transfer identity degenerates and the report says
    the theory is not applicable.
    """
    t = cm.index
    report: dict = {"index": t, "side": base_dist.side}
    if t % 2 == 0:
        report["applicable"] = False
        report["reason"] = (
            "round trip is multiplication by the even index, "
            "so fiber-sum arguments do not apply"
        )
        report["ok"] = True
        return report
    report["applicable"] = True
    if base_dist.method != "exact" or not base_dist.exhaustive:
        raise ValueError("verify_parameter_bounds needs an exact base distance report")
    checks: dict[str, bool] = {}
    checks["n_scaling"] = lifted.n == t * base.n
    checks["k_not_below_base"] = lifted.k >= base.k
    report["base_k"] = base.k
    report["lifted_k"] = lifted.k
    report["k_equal"] = lifted.k == base.k
    if math.isinf(base_dist.value):
        checks["tau_witness_logical"] = base.k == 0
        report["witness_weight"] = None
    else:
        if base_dist.witness is None:
            raise ValueError("base distance report carries no witness")
        pair = build_chain_maps(base, lifted, cm)
        image = pair.tau_vector(base_dist.witness)
        expected = t * int(base_dist.value)
        checks["tau_witness_weight"] = image.weight() == expected
        checks["tau_witness_logical"] = verify_witness(lifted, base_dist.side, image)
        report["witness_weight"] = image.weight()
        report["lifted_distance_upper_bound"] = expected
    report["checks"] = checks
    report["ok"] = all(checks.values())
    return report


def verify_gamma_invariance(
    lifted: CssCode, cm: CoveringMap, logical: BitVector, side: str
) -> bool:
    """True iff the logical's class is fixed by the whole deck group:
    for every deck element, the permuted logical differs from the
    original by a stabilizer."""
    if cm.group is None:
        raise ValueError("gamma invariance needs a Galois cover")
    if not verify_witness(lifted, side, logical):
        raise ValueError("vector is not a verified logical operator")
    _, stab = _spaces(lifted, side)
    dense = logical.to_dense()
    for gamma in range(cm.group.order):
        fperm = deck_action(cm, gamma).faces
        moved = np.zeros_like(dense)
        moved[fperm] = dense
        diff = BitVector.from_dense(moved ^ dense)
        if not diff.is_zero() and not gf2.in_rowspace(stab, diff):
            return False
    return True
