"""Assembling CSS check matrices from local codes on a square complex.

Qubits sit on faces.  Each check vertex contributes one global row per
local parity row: the local coordinates scatter to the faces incident to
the vertex, with a face hit at two corners toggling twice.  X checks come
from the side-0 vertices, Z checks from side 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels, gf2
from .covering import CoveringMap, deck_action
from .complexes import SquareComplex
from .families import LocalCodeAssignment
from .gf2 import BitMatrix

__all__ = [
    "OrthogonalityError",
    "TannerCheckSet",
    "CssCode",
    "assemble",
    "lift_code",
    "weight_profile",
    "verify_deck_automorphism",
]


class OrthogonalityError(ValueError):
    """Raised when the X and Z check sets fail to commute."""


@dataclass
class TannerCheckSet:
    """One side's checks: the matrix plus the provenance of each row."""

    side: int
    matrix: BitMatrix
    row_labels: tuple[tuple, ...]


@dataclass
class CssCode:
    """A CSS code given by commuting X and Z parity-check matrices."""

    n: int
    x_checks: TannerCheckSet
    z_checks: TannerCheckSet
    meta: dict = field(default_factory=dict)
    _rank_cache: dict = field(default_factory=dict, repr=False)

    @property
    def hx(self) -> BitMatrix:
        return self.x_checks.matrix

    @property
    def hz(self) -> BitMatrix:
        return self.z_checks.matrix

    def rank_x(self) -> int:
        if "x" not in self._rank_cache:
            self._rank_cache["x"] = gf2.rank(self.hx)
        return self._rank_cache["x"]

    def rank_z(self) -> int:
        if "z" not in self._rank_cache:
            self._rank_cache["z"] = gf2.rank(self.hz)
        return self._rank_cache["z"]

    @property
    def k(self) -> int:
        return self.n - self.rank_x() - self.rank_z()


def _check_orthogonality(hx: TannerCheckSet, hz: TannerCheckSet) -> None:
    prod = gf2.mul(hx.matrix, gf2.transpose(hz.matrix))
    if prod.is_zero():
        return
    dense = prod.to_dense()
    i, j = (int(x[0]) for x in np.nonzero(dense))
    overlap = int(
        _kernels.popcount_words(hx.matrix.words[i] & hz.matrix.words[j]).sum()
    )
    raise OrthogonalityError(
        f"X row {i} {hx.row_labels[i]} and Z row {j} {hz.row_labels[j]} "
        f"overlap on {overlap} faces (odd)"
    )


def _side_rows_base(
    s: SquareComplex, lca: LocalCodeAssignment, side: int
) -> TannerCheckSet:
    rows = []
    labels = []
    for v in lca.check_vertices():
        if s.side[v] != side:
            continue
        mapping = lca.coord[v]
        fid_of_col = np.zeros(lca.length[v], dtype=np.int64)
        for (fid, _c), col in mapping.items():
            fid_of_col[col] = fid
        local = lca.rows[v].to_dense()
        for r in range(local.shape[0]):
            acc = np.zeros(s.num_faces, dtype=np.uint8)
            np.add.at(acc, fid_of_col[local[r].astype(bool)], 1)
            rows.append(acc & 1)
            labels.append((v, r))
    if rows:
        matrix = gf2.from_dense(np.array(rows, dtype=np.uint8))
    else:
        matrix = gf2.zeros(0, s.num_faces)
    return TannerCheckSet(side, matrix, tuple(labels))


def assemble(s: SquareComplex, lca: LocalCodeAssignment) -> CssCode:
    """Build the CSS code of a square complex with local checks.

    Raises :class:`OrthogonalityError` naming the first offending row pair
    if the two sides do not commute.
    """
    if s.side is None:
        raise ValueError("assemble needs a bipartitioned complex")
    xs = _side_rows_base(s, lca, 0)
    zs = _side_rows_base(s, lca, 1)
    _check_orthogonality(xs, zs)
    return CssCode(s.num_faces, xs, zs)


def _side_rows_lift(
    cm: CoveringMap, lca: LocalCodeAssignment, side: int
) -> TannerCheckSet:
    s = cm.base
    t = cm.index
    n = s.num_faces * t
    rows = []
    labels = []
    for v in lca.check_vertices():
        if s.side[v] != side:
            continue
        mapping = lca.coord[v]
        pairs = np.zeros((lca.length[v], 2), dtype=np.int64)
        for (fid, c), col in mapping.items():
            pairs[col] = (fid, c)
        local = lca.rows[v].to_dense()
        for r in range(local.shape[0]):
            cols = np.nonzero(local[r])[0]
            for sheet in range(t):
                acc = np.zeros(n, dtype=np.uint8)
                for col in cols:
                    fid, c = int(pairs[col, 0]), int(pairs[col, 1])
                    sigma = int(cm.corner_face[fid, c, sheet])
                    acc[fid * t + sigma] ^= 1
                rows.append(acc)
                labels.append((v, r, sheet))
    if rows:
        matrix = gf2.from_dense(np.array(rows, dtype=np.uint8))
    else:
        matrix = gf2.zeros(0, n)
    return TannerCheckSet(side, matrix, tuple(labels))


def lift_code(cm: CoveringMap, lca: LocalCodeAssignment) -> CssCode:
    """Assemble the Tanner code of a lifted complex.

    Row ``(v, r, sheet)`` applies local row ``r`` of vertex ``v`` on the
    lifted faces incident to vertex copy ``(v, sheet)``; the copy of face
    ``f`` meeting it at corner ``c`` is looked up through the covering
    map's corner tables.  Qubit columns are ``face * t + sheet``.
    """
    if cm.base.side is None:
        raise ValueError("lift_code needs a bipartitioned base complex")
    xs = _side_rows_lift(cm, lca, 0)
    zs = _side_rows_lift(cm, lca, 1)
    _check_orthogonality(xs, zs)
    code = CssCode(cm.base.num_faces * cm.index, xs, zs)
    code.meta["lift_index"] = cm.index
    return code


def weight_profile(c: CssCode) -> dict:
    """Row/column weight histograms of both check matrices, plus the
    overall maximum W."""
    out: dict = {}
    w_all = 0
    for tag, m in (("x", c.hx), ("z", c.hz)):
        rw = m.row_weights() if m.nrows else np.zeros(0, dtype=np.int64)
        cw = m.col_weights() if m.nrows else np.zeros(c.n, dtype=np.int64)
        rh: dict[int, int] = {}
        for w in rw.tolist():
            rh[w] = rh.get(w, 0) + 1
        ch: dict[int, int] = {}
        for w in cw.tolist():
            ch[w] = ch.get(w, 0) + 1
        out[f"row_hist_{tag}"] = dict(sorted(rh.items()))
        out[f"col_hist_{tag}"] = dict(sorted(ch.items()))
        out[f"w_{tag}"] = int(rw.max()) if rw.size else 0
        out[f"q_{tag}"] = int(cw.max()) if cw.size else 0
        w_all = max(w_all, out[f"w_{tag}"], out[f"q_{tag}"])
    out["W"] = w_all
    return out


def verify_deck_automorphism(c: CssCode, cm: CoveringMap, gamma: int) -> bool:
    """True iff the deck transformation's qubit permutation maps each
    check rowspace onto itself."""
    fperm = deck_action(cm, gamma).faces
    for m in (c.hx, c.hz):
        permuted = gf2.permute_columns(m, fperm)
        r = gf2.rank(m)
        if gf2.rank(gf2.stack([m, permuted])) != r:
            return False
    return True
