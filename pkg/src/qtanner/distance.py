"""Exact and randomized minimum-distance estimation for CSS codes.

``d_X`` is the least weight in ``ker H_Z`` outside the rowspace of
``H_X`` (and symmetrically for ``d_Z``); a code with ``k = 0`` has no
logicals and infinite distance on both sides.

The exact path walks every nonzero kernel combination in Gray-code order,
testing rowspace membership only when a combination's weight beats the
best so far.  The randomized path is information-set decoding: each
iteration re-reduces the kernel's generator matrix along a fresh random
column order and inspects the reduced rows and sums of consecutive pairs.
Estimates are monotone in the iteration count for a fixed seed, and every
reported witness is independently re-verified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, gf2
from .csscode import CssCode
from .gf2 import BitMatrix, BitVector

__all__ = [
    "DistanceReport",
    "exact_distance",
    "randomized_distance",
    "collect_logicals",
    "verify_witness",
]

_CHUNK = 256


@dataclass
class DistanceReport:
    side: str
    method: str
    value: float
    witness: BitVector | None
    exhaustive: bool
    iterations: int | None = None
    seed: int | None = None

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "method": self.method,
            "value": "inf" if math.isinf(self.value) else int(self.value),
            "witness": None if self.witness is None else self.witness.to_hex(),
            "exhaustive": self.exhaustive,
            "iterations": self.iterations,
            "seed": self.seed,
        }


def _spaces(c: CssCode, side: str) -> tuple[BitMatrix, BitMatrix]:
    """(matrix whose kernel holds the side's logicals, stabilizer matrix
    whose rowspace must be avoided)."""
    if side == "X":
        return c.hz, c.hx
    if side == "Z":
        return c.hx, c.hz
    raise ValueError(f"side must be 'X' or 'Z', got {side!r}")


def verify_witness(c: CssCode, side: str, v: BitVector) -> bool:
    """Check that ``v`` really is a nontrivial logical operator: nonzero,
    in the kernel of the opposite checks, outside the stabilizer rowspace."""
    return _is_logical(c, side, v)


def exact_distance(c: CssCode, side: str, max_kernel_dim: int = 22) -> DistanceReport:
    """Exact minimum distance on one side by exhaustive kernel traversal.

    Refuses kernels of dimension above ``max_kernel_dim`` (the walk costs
    2^dim row operations).
    """
    ker_of, stab = _spaces(c, side)
    if c.k == 0:
        return DistanceReport(side, "exact", math.inf, None, True)
    basis = gf2.kernel_basis(ker_of)
    if basis.nrows > max_kernel_dim:
        raise ValueError(
            f"kernel dimension {basis.nrows} exceeds max_kernel_dim={max_kernel_dim}"
        )
    red, r, pivots = gf2.rref(stab)
    best, vec = _kernels.gray_scan(basis.words, red.words[:r], pivots)
    if best == 0:
        raise AssertionError("no logical found despite k > 0")
    witness = BitVector(c.n, vec)
    if not _is_logical(c, side, witness) or witness.weight() != best:
        raise AssertionError("exact distance witness failed re-verification")
    return DistanceReport(side, "exact", best, witness, True)


def _is_logical(c: CssCode, side: str, v: BitVector) -> bool:
    ker_of, stab = _spaces(c, side)
    if v.n != c.n or v.is_zero():
        return False
    syndrome = gf2.mul(ker_of, gf2.transpose(BitMatrix(1, v.n, v.words[None, :].copy())))
    if not syndrome.is_zero():
        return False
    return not gf2.in_rowspace(stab, v)


def _perm_batches(rng: np.random.Generator, n: int, count: int):
    done = 0
    while done < count:
        m = min(_CHUNK, count - done)
        batch = np.empty((m, n), dtype=np.int64)
        for i in range(m):
            batch[i] = rng.permutation(n)
        done += m
        yield batch


def randomized_distance(
    c: CssCode,
    side: str,
    iterations: int,
    seed: int,
    workers: int = 1,
) -> DistanceReport:
    """Randomized upper bound on one side's distance.

    Deterministic for fixed ``(seed, iterations, workers)``: worker ``w``
    draws from the stream ``SeedSequence(seed, spawn_key=(w,))`` and the
    results are min-merged.  For a fixed seed, more iterations never
    worsen the estimate.
    """
    if iterations < 1:
        raise ValueError("iterations must be positive")
    ker_of, stab = _spaces(c, side)
    if c.k == 0:
        return DistanceReport(side, "randomized", math.inf, None, True, iterations, seed)
    basis = gf2.kernel_basis(ker_of)
    red, r, pivots = gf2.rref(stab)
    red_words = np.ascontiguousarray(red.words[:r])
    best = 0
    best_vec = np.zeros(basis.words.shape[1], dtype=np.uint64)
    per = [iterations // workers] * workers
    for w in range(iterations % workers):
        per[w] += 1
    for w in range(workers):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(w,)))
        for batch in _perm_batches(rng, c.n, per[w]):
            best, best_vec = _kernels.isd_scan(
                basis.words, c.n, batch, red_words, pivots, best, best_vec
            )
    if best == 0:
        raise AssertionError("no logical found despite k > 0")
    witness = BitVector(c.n, best_vec.copy())
    if not _is_logical(c, side, witness) or witness.weight() != best:
        raise AssertionError("randomized distance witness failed re-verification")
    return DistanceReport(side, "randomized", best, witness, False, iterations, seed)


def collect_logicals(
    c: CssCode,
    side: str,
    weight_bound: int,
    iterations: int,
    seed: int,
    cap: int = 128,
) -> list[BitVector]:
    """Harvest distinct verified logicals of weight <= ``weight_bound``
    encountered by the randomized search (same trial stream as
    :func:`randomized_distance` with one worker)."""
    ker_of, stab = _spaces(c, side)
    if c.k == 0:
        return []
    basis = gf2.kernel_basis(ker_of)
    red, r, pivots = gf2.rref(stab)
    red_words = np.ascontiguousarray(red.words[:r])
    buf = np.zeros((cap, basis.words.shape[1]), dtype=np.uint64)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))
    perms = np.empty((iterations, c.n), dtype=np.int64)
    for i in range(iterations):
        perms[i] = rng.permutation(c.n)
    count = _kernels.isd_collect(
        basis.words, c.n, perms, red_words, pivots, weight_bound, buf
    )
    out = []
    for i in range(count):
        v = BitVector(c.n, buf[i].copy())
        if _is_logical(c, side, v):
            out.append(v)
    return out
