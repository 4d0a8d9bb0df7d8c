"""Permutation-voltage covers of square complexes.

A voltage assignment puts a degree-``t`` permutation on every edge
(forward and backward directions carrying inverse permutations); when the
composite around every face is the identity, the lift is again a square
complex with ``t`` sheets.  Galois covers come from group homomorphisms:
sheets are group elements, edge voltages act by right multiplication, and
the deck transformations act by left multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .complexes import SquareComplex
from .groups import GroupTable

__all__ = [
    "PresentationData",
    "VoltageAssignment",
    "CoveringMap",
    "CellPermutation",
    "evaluate_word",
    "word_inverse",
    "validate_voltage",
    "voltage_violations",
    "lift_complex",
    "spanning_tree_voltage",
    "enumerate_galois_covers",
    "deck_action",
    "write_voltage",
    "read_voltage",
]


@dataclass(frozen=True)
class PresentationData:
    """A two-generator, one-relator presentation attached to a base
    complex: ``relator`` and the per-edge words use letters +1/-1 for the
    first generator and its inverse, +2/-2 for the second."""

    relator: tuple[int, ...]
    edge_words: tuple[tuple[int, ...], ...]
    basepoint: int = 0
    generators: int = 2


def word_inverse(word: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


def evaluate_word(g: GroupTable, hom: tuple[int, int], word) -> int:
    """Image of a free word under the homomorphism sending the generators
    to ``hom[0]`` and ``hom[1]``."""
    images = {1: hom[0], -1: g.inv(hom[0]), 2: hom[1], -2: g.inv(hom[1])}
    acc = 0
    for letter in word:
        acc = g.mul(acc, images[letter])
    return acc


@dataclass
class VoltageAssignment:
    """Permutations per edge: ``forward[e]`` is the image list of the
    forward direction, ``backward[e]`` of the reverse."""

    index: int
    forward: np.ndarray
    backward: np.ndarray

    @classmethod
    def from_forward(cls, forward: np.ndarray) -> VoltageAssignment:
        forward = np.ascontiguousarray(np.asarray(forward, dtype=np.int32))
        t = forward.shape[1]
        backward = np.empty_like(forward)
        for e in range(forward.shape[0]):
            backward[e, forward[e]] = np.arange(t, dtype=np.int32)
        return cls(t, forward, backward)

    @classmethod
    def identity(cls, num_edges: int, t: int) -> VoltageAssignment:
        fwd = np.tile(np.arange(t, dtype=np.int32), (num_edges, 1))
        return cls.from_forward(fwd)

    def perm(self, token: int) -> np.ndarray:
        return self.forward[token >> 1] if not token & 1 else self.backward[token >> 1]


def voltage_violations(s: SquareComplex, va: VoltageAssignment) -> list[str]:
    out = []
    t = va.index
    if va.forward.shape != (s.num_edges, t) or va.backward.shape != (s.num_edges, t):
        return [
            f"voltage arrays {va.forward.shape}/{va.backward.shape} do not match "
            f"{s.num_edges} edges at index {t}"
        ]
    idx = np.arange(t, dtype=np.int32)
    for e in range(s.num_edges):
        fwd = va.forward[e]
        if not np.array_equal(np.sort(fwd), idx):
            out.append(f"edge {e}: forward image list is not a permutation")
            continue
        if not np.array_equal(va.backward[e, fwd], idx):
            out.append(f"edge {e}: backward voltage is not the inverse")
    if out:
        return out
    for fid, path in enumerate(s.faces):
        walk = idx.copy()
        for tok in path:
            walk = va.perm(tok)[walk]
        if not np.array_equal(walk, idx):
            out.append(f"face {fid}: boundary composite is not the identity")
    return out


def validate_voltage(s: SquareComplex, va: VoltageAssignment) -> bool:
    return not voltage_violations(s, va)


@dataclass
class CellPermutation:
    """A permutation of the cells of a lifted complex."""

    vertices: np.ndarray
    edges: np.ndarray
    faces: np.ndarray


@dataclass
class CoveringMap:
    """A lift together with its projection bookkeeping.

    Cell ids factor as ``base_id * t + sheet``.  ``corner_sheet[f, c, s]``
    is the sheet of the vertex sitting at corner ``c`` of lifted face
    ``(f, s)``; ``corner_face[f, c, s]`` inverts that in ``s``.
    """

    base: SquareComplex
    total: SquareComplex
    voltage: VoltageAssignment
    index: int
    corner_sheet: np.ndarray
    corner_face: np.ndarray
    group: GroupTable | None = None
    hom: tuple[int, int] | None = None

    def project_vertex(self, vid: int) -> tuple[int, int]:
        return divmod(vid, self.index)

    def project_edge(self, eid: int) -> tuple[int, int]:
        return divmod(eid, self.index)

    def project_face(self, fid: int) -> tuple[int, int]:
        return divmod(fid, self.index)


def lift_complex(s: SquareComplex, va: VoltageAssignment) -> CoveringMap:
    """Build the ``t``-sheeted cover defined by a valid voltage assignment.

    Lifted faces keep the alignment of their base face: corner ``c`` of
    lifted face ``(f, s)`` projects to corner ``c`` of ``f``, with sheet
    reached by composing the first ``c`` voltages of the path from ``s``.
    """
    bad = voltage_violations(s, va)
    if bad:
        raise ValueError(f"invalid voltage assignment: {bad[0]}")
    t = va.index
    edges = []
    for e, (u, v) in enumerate(s.edges):
        fwd = va.forward[e]
        for i in range(t):
            edges.append((u * t + i, v * t + int(fwd[i])))
    corner_sheet = np.empty((s.num_faces, 4, t), dtype=np.int32)
    corner_face = np.empty((s.num_faces, 4, t), dtype=np.int32)
    faces = []
    for f, path in enumerate(s.faces):
        for sheet in range(t):
            cur = sheet
            toks = []
            for c, tok in enumerate(path):
                e, d = tok >> 1, tok & 1
                corner_sheet[f, c, sheet] = cur
                if d == 0:
                    copy_idx = cur
                    cur = int(va.forward[e][cur])
                else:
                    cur = int(va.backward[e][cur])
                    copy_idx = cur
                toks.append(2 * (e * t + copy_idx) + d)
            if cur != sheet:
                raise AssertionError(f"face {f} sheet {sheet} did not close")
            faces.append(tuple(toks))
    for f in range(s.num_faces):
        for c in range(4):
            corner_face[f, c, corner_sheet[f, c]] = np.arange(t, dtype=np.int32)
    side = None
    if s.side is not None:
        side = tuple(s.side[v] for v in range(s.num_vertices) for _ in range(t))
    total = SquareComplex(s.num_vertices * t, tuple(edges), tuple(faces), side)
    return CoveringMap(s, total, va, t, corner_sheet, corner_face)


def spanning_tree_voltage(
    s: SquareComplex,
    pres: PresentationData,
    hom: tuple[int, int],
    g: GroupTable,
    require_connected: bool = True,
) -> VoltageAssignment:
    """Voltage assignment of the cover classified by ``hom``.

    Vertices get group labels along a breadth-first spanning tree rooted at
    the presentation basepoint (always exploring the lowest edge id first);
    edge ``e = (u, v)`` then carries right multiplication by
    ``label(u) * image(word(e)) * label(v)^-1``, which is the identity on
    tree edges.
    """
    if evaluate_word(g, hom, pres.relator) != 0:
        raise ValueError(
            f"relator does not map to the identity under hom={hom} in {g.name}"
        )
    if require_connected and not g.is_generating(hom):
        raise ValueError(
            f"hom={hom} does not generate {g.name}; cover would be disconnected"
        )
    adj: list[list[tuple[int, int]]] = [[] for _ in range(s.num_vertices)]
    for e, (u, v) in enumerate(s.edges):
        adj[u].append((e, v))
        adj[v].append((e, u))
    for lst in adj:
        lst.sort()
    labels = [-1] * s.num_vertices
    labels[pres.basepoint] = 0
    queue = [pres.basepoint]
    while queue:
        u = queue.pop(0)
        for e, v in adj[u]:
            if labels[v] >= 0:
                continue
            word = pres.edge_words[e]
            if s.edges[e][0] == u:
                labels[v] = g.mul(labels[u], evaluate_word(g, hom, word))
            else:
                labels[v] = g.mul(labels[u], g.inv(evaluate_word(g, hom, word)))
            queue.append(v)
    if any(x < 0 for x in labels):
        raise ValueError("base complex is not connected")
    t = g.order
    forward = np.empty((s.num_edges, t), dtype=np.int32)
    for e, (u, v) in enumerate(s.edges):
        w = evaluate_word(g, hom, pres.edge_words[e])
        elem = g.mul(g.mul(labels[u], w), g.inv(labels[v]))
        forward[e] = g.table[:, elem]
    return VoltageAssignment.from_forward(forward)


def _same_kernel(g: GroupTable, h1: tuple[int, int], h2: tuple[int, int]) -> bool:
    """Two surjections have equal kernels iff the subgroup of g x g
    generated by the paired generator images has order exactly |g|."""
    n = g.order
    gens = [h1[0] * n + h2[0], h1[1] * n + h2[1]]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for pair in frontier:
            x, y = divmod(pair, n)
            for gen in gens:
                gx, gy = divmod(gen, n)
                new = g.mul(x, gx) * n + g.mul(y, gy)
                if new not in seen:
                    seen.add(new)
                    if len(seen) > n:
                        return False
                    nxt.append(new)
        frontier = nxt
    return len(seen) == n


def enumerate_galois_covers(
    s: SquareComplex,
    pres: PresentationData,
    g: GroupTable,
    order_bound: int = 30,
) -> list[CoveringMap]:
    """All connected Galois covers of ``s`` with deck group ``g``, one per
    kernel class of surjections killing the relator.

    Homomorphisms are scanned in lexicographic order of generator images,
    so the list (and the representative chosen for each kernel) is
    deterministic.
    """
    if g.order > order_bound:
        raise ValueError(f"group order {g.order} exceeds bound {order_bound}")
    kept: list[tuple[int, int]] = []
    for ga in range(g.order):
        for gb in range(g.order):
            hom = (ga, gb)
            if evaluate_word(g, hom, pres.relator) != 0:
                continue
            if not g.is_generating(hom):
                continue
            if any(_same_kernel(g, hom, other) for other in kept):
                continue
            kept.append(hom)
    covers = []
    for hom in kept:
        va = spanning_tree_voltage(s, pres, hom, g)
        cm = lift_complex(s, va)
        cm.group = g
        cm.hom = hom
        covers.append(cm)
    return covers


def deck_action(cm: CoveringMap, gamma: int) -> CellPermutation:
    """The deck transformation of a Galois cover given by left-multiplying
    every sheet label by ``gamma``."""
    if cm.group is None:
        raise ValueError("deck_action needs a Galois cover with a deck group")
    g, t = cm.group, cm.index
    relabel = g.table[gamma]
    vperm = np.empty(cm.total.num_vertices, dtype=np.int32)
    for v in range(cm.base.num_vertices):
        for sheet in range(t):
            vperm[v * t + sheet] = v * t + relabel[sheet]
    eperm = np.empty(cm.total.num_edges, dtype=np.int32)
    for e in range(cm.base.num_edges):
        for sheet in range(t):
            eperm[e * t + sheet] = e * t + relabel[sheet]
    fperm = np.empty(cm.total.num_faces, dtype=np.int32)
    for f in range(cm.base.num_faces):
        for sheet in range(t):
            fperm[f * t + sheet] = f * t + relabel[sheet]
    return CellPermutation(vperm, eperm, fperm)


def write_voltage(va: VoltageAssignment, path) -> None:
    """One line per directed edge: ``edge_id direction image_list``."""
    lines = []
    for e in range(va.forward.shape[0]):
        lines.append(f"{e} 0 " + " ".join(str(int(x)) for x in va.forward[e]))
        lines.append(f"{e} 1 " + " ".join(str(int(x)) for x in va.backward[e]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_voltage(path) -> VoltageAssignment:
    entries: dict[tuple[int, int], list[int]] = {}
    for ln in Path(path).read_text().splitlines():
        if not ln.strip():
            continue
        toks = ln.split()
        e, d = int(toks[0]), int(toks[1])
        entries[(e, d)] = [int(x) for x in toks[2:]]
    if not entries:
        raise ValueError(f"{path}: empty voltage file")
    num_edges = max(e for e, _ in entries) + 1
    t = len(next(iter(entries.values())))
    forward = np.empty((num_edges, t), dtype=np.int32)
    backward = np.empty((num_edges, t), dtype=np.int32)
    for e in range(num_edges):
        for d, arr in ((0, forward), (1, backward)):
            if (e, d) not in entries:
                raise ValueError(f"{path}: missing line for edge {e} direction {d}")
            if len(entries[(e, d)]) != t:
                raise ValueError(f"{path}: inconsistent degree on edge {e}")
            arr[e] = entries[(e, d)]
    return VoltageAssignment(t, forward, backward)
