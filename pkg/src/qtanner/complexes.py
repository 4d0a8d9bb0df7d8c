"""Square complexes: vertices, directed edges, and oriented 4-cycle faces.

A face is stored as a 4-tuple of directed-edge tokens; token ``2*e + d``
traverses edge ``e`` forward (``d = 0``) or backward (``d = 1``).  Faces
built by the family constructors are stored in canonical form: the
lexicographically least tuple over the eight rotations/reflections of the
boundary path.  Lifted complexes keep the alignment of their base faces
instead, so sheet bookkeeping stays positional.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "SquareComplex",
    "DiagonalGraph",
    "canonical_face",
    "validate",
    "violations",
    "face_neighborhood",
    "diagonal_graphs",
    "to_text",
    "from_text",
]


def canonical_face(path: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    """Lexicographically least representative over the 4 rotations of the
    path and the 4 rotations of its reversal (with directions flipped)."""
    variants = []
    rev = tuple(tok ^ 1 for tok in reversed(path))
    for base in (path, rev):
        for r in range(4):
            variants.append(base[r:] + base[:r])
    return min(variants)


@dataclass
class SquareComplex:
    """``side[v]`` is 0/1 for the two parts of the bipartition (or None when
    no bipartition is tracked); ``edges[e]`` is ``(tail, head)``; ``faces``
    are token 4-tuples."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, int, int, int], ...]
    side: tuple[int, ...] | None = None

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def token_tail(self, token: int) -> int:
        tail, head = self.edges[token >> 1]
        return head if token & 1 else tail

    def token_head(self, token: int) -> int:
        tail, head = self.edges[token >> 1]
        return tail if token & 1 else head

    def face_vertices(self, fid: int) -> tuple[int, int, int, int]:
        """Corner ``c`` is the tail of the ``c``-th token of the face path."""
        return tuple(self.token_tail(tok) for tok in self.faces[fid])


def violations(s: SquareComplex) -> list[str]:
    """Structured list of everything wrong with the complex; empty if valid."""
    out = []
    for e, (u, v) in enumerate(s.edges):
        if not (0 <= u < s.num_vertices and 0 <= v < s.num_vertices):
            out.append(f"edge {e}: endpoint out of range ({u}, {v})")
        elif u == v:
            out.append(f"edge {e}: self-loop at vertex {u}")
    if s.side is not None:
        if len(s.side) != s.num_vertices:
            out.append(
                f"bipartition labels {len(s.side)} != num_vertices {s.num_vertices}"
            )
        else:
            for e, (u, v) in enumerate(s.edges):
                if max(u, v) < s.num_vertices and s.side[u] == s.side[v]:
                    out.append(f"edge {e}: joins two side-{s.side[u]} vertices")
    for fid, path in enumerate(s.faces):
        if len(path) != 4:
            out.append(f"face {fid}: has {len(path)} tokens, expected 4")
            continue
        bad = [tok for tok in path if not 0 <= (tok >> 1) < s.num_edges]
        if bad:
            out.append(f"face {fid}: edge id out of range in tokens {bad}")
            continue
        for c in range(4):
            if s.token_head(path[c]) != s.token_tail(path[(c + 1) % 4]):
                out.append(
                    f"face {fid}: path breaks between positions {c} and {(c + 1) % 4}"
                )
    return out


def validate(s: SquareComplex) -> bool:
    return not violations(s)


def face_neighborhood(s: SquareComplex, v: int) -> list[tuple[int, int]]:
    """All ``(face_id, corner_pos)`` incidences of vertex ``v``, sorted.

    A face visiting ``v`` at two different corners contributes two entries.
    """
    out = []
    for fid in range(s.num_faces):
        for c, vert in enumerate(s.face_vertices(fid)):
            if vert == v:
                out.append((fid, c))
    return out


@dataclass
class DiagonalGraph:
    """One edge per face, joining the two same-side corners of the square."""

    side: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # (u, v) for face id = position

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def diagonal_graphs(s: SquareComplex) -> tuple[DiagonalGraph, DiagonalGraph]:
    """The two diagonal graphs of a bipartite square complex.

    Corners of each face alternate sides around the boundary, so corners 0
    and 2 share a side and corners 1 and 3 share the other.
    """
    if s.side is None:
        raise ValueError("diagonal graphs need a bipartition")
    bad = violations(s)
    if bad:
        raise ValueError(f"invalid complex: {bad[0]}")
    per_side: dict[int, list[tuple[int, int]]] = {0: [], 1: []}
    for fid in range(s.num_faces):
        corners = s.face_vertices(fid)
        pair0 = (corners[0], corners[2])
        pair1 = (corners[1], corners[3])
        per_side[s.side[corners[0]]].append(pair0)
        per_side[s.side[corners[1]]].append(pair1)
    graphs = []
    for sd in (0, 1):
        verts = tuple(v for v in range(s.num_vertices) if s.side[v] == sd)
        graphs.append(DiagonalGraph(sd, verts, tuple(per_side[sd])))
    return graphs[0], graphs[1]


def to_text(s: SquareComplex) -> str:
    """Plain-text form: header ``V E F``, one ``tail head`` line per edge,
    then one line of four signed 1-based edge ids per face (sign = direction).
    """
    lines = [f"{s.num_vertices} {s.num_edges} {s.num_faces}"]
    for u, v in s.edges:
        lines.append(f"{u} {v}")
    for path in s.faces:
        signed = [(-(tok >> 1) - 1) if tok & 1 else (tok >> 1) + 1 for tok in path]
        lines.append(" ".join(str(x) for x in signed))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> SquareComplex:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    nv, ne, nf = (int(tok) for tok in lines[0].split())
    if len(lines) != 1 + ne + nf:
        raise ValueError(
            f"expected {1 + ne + nf} lines for V={nv} E={ne} F={nf}, got {len(lines)}"
        )
    edges = []
    for ln in lines[1 : 1 + ne]:
        u, v = (int(tok) for tok in ln.split())
        edges.append((u, v))
    faces = []
    for ln in lines[1 + ne :]:
        signed = [int(tok) for tok in ln.split()]
        if len(signed) != 4 or any(x == 0 for x in signed):
            raise ValueError(f"bad face line: {ln!r}")
        faces.append(tuple(2 * (abs(x) - 1) + (1 if x < 0 else 0) for x in signed))
    return SquareComplex(nv, tuple(edges), tuple(faces))
