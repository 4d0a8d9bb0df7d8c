"""The two base-complex families and their local code assignments.

Both builders return the square complex, the per-vertex local check rows
with the face-corner-to-local-coordinate dictionary, and the one-relator
presentation whose covers classify the connected lifts of the complex.

Family L(ell): four vertices, 2*ell faces arranged in a 2 x ell grid of
squares; local codes are the product of the parity code of length 2 with a
cyclic code C_ell(g) on the X side and its dual on the Z side.

Family BS(ell, ell): a 4ell x 2 grid of squares whose boundary rows fold
onto a 4-edge circle; the 4ell subdivision vertices carry single weight-4
checks, and the four corner vertices carry the product of the length-2
parity code with a double circulant code D_2ell(f) (X side) or its dual
(Z side).
"""
from __future__ import annotations

from dataclasses import dataclass

from . import gf2, localcodes
from .complexes import SquareComplex, canonical_face, face_neighborhood, validate
from .covering import PresentationData
from .gf2 import BitMatrix
from .localcodes import CyclicCode, DoubleCirculantCode, Poly

__all__ = [
    "FamilySpec",
    "LocalCodeAssignment",
    "FamilyBuild",
    "build_L",
    "build_L_blockmatrix",
    "build_BS",
    "build_family",
]


@dataclass(frozen=True)
class FamilySpec:
    """Which base code to build: family tag L or BS, half-length, and the
    local polynomial (g for L, f for BS)."""

    family: str
    ell: int
    poly: Poly
    reduced_generators: bool = False

    def __post_init__(self):
        if self.family not in ("L", "BS"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.poly.ell != self.ell:
            raise ValueError(f"polynomial ring ell={self.poly.ell} != {self.ell}")


@dataclass
class LocalCodeAssignment:
    """Per check vertex: the local coordinate of each face-corner incidence
    and the local parity rows enforced over those coordinates."""

    length: dict[int, int]
    coord: dict[int, dict[tuple[int, int], int]]
    rows: dict[int, BitMatrix]

    def check_vertices(self) -> list[int]:
        return sorted(self.rows)


@dataclass
class FamilyBuild:
    complex: SquareComplex
    assignment: LocalCodeAssignment
    presentation: PresentationData
    spec: FamilySpec


def _check_assignment(s: SquareComplex, lca: LocalCodeAssignment) -> None:
    for v in lca.check_vertices():
        incid = face_neighborhood(s, v)
        mapping = lca.coord[v]
        if sorted(mapping) != incid:
            raise AssertionError(f"vertex {v}: coordinate map keys != incidences")
        cols = sorted(mapping.values())
        if cols != list(range(lca.length[v])):
            raise AssertionError(f"vertex {v}: coordinates are not a bijection")
        if lca.rows[v].ncols != lca.length[v]:
            raise AssertionError(f"vertex {v}: row length != local length")


def build_L(ell: int, g: Poly, reduced_generators: bool = False) -> FamilyBuild:
    """Base complex and local codes of the family L(ell).

    Requires ``ell >= 2`` and ``g | X^ell - 1``.  The X-side local rows
    are the products (1,1) x (X^s g); the Z side uses the dual cyclic
    code's generator the same way.
    """
    if ell < 2:
        raise ValueError(f"ell must be at least 2, got {ell}")
    cyc = CyclicCode(ell, g)  # validates divisibility
    if g.is_zero():
        raise ValueError("local polynomial must be nonzero")
    side = (0, 0, 1, 1)
    edges = [(0, 3), (3, 0), (2, 1), (1, 2)]
    edges += [(2, 0) for _ in range(ell)]  # ids 4+j
    edges += [(1, 3) for _ in range(ell)]  # ids 4+ell+j
    fwd = lambda e: 2 * e
    rev = lambda e: 2 * e + 1
    faces = []
    for i in range(2):
        for j in range(ell):
            if i == 0:
                path = (fwd(4 + j), fwd(0), rev(4 + ell + j), rev(2))
            else:
                path = (fwd(4 + ell + j), fwd(1), rev(4 + (j + 1) % ell), rev(3))
            faces.append(canonical_face(path))
    s = SquareComplex(4, tuple(edges), tuple(faces), side)
    if not validate(s):
        raise AssertionError("L complex failed validation")

    dual_g = localcodes.cyclic_dual(cyc).g
    par2 = gf2.from_dense([[1, 1]])
    gx = localcodes.circulant(g)
    gz = localcodes.circulant(dual_g)
    if reduced_generators:
        gx = localcodes.reduced_generator_basis(gx)
        gz = localcodes.reduced_generator_basis(gz)
    rows_x = localcodes.kron_generators(par2, gx)
    rows_z = localcodes.kron_generators(par2, gz)

    coord: dict[int, dict[tuple[int, int], int]] = {v: {} for v in range(4)}
    for fid in range(s.num_faces):
        i, j = divmod(fid, ell)
        for c, v in enumerate(s.face_vertices(fid)):
            if v in (0, 2):
                col = i * ell + (i + j) % ell
            else:
                col = i * ell + j
            coord[v][(fid, c)] = col
    lca = LocalCodeAssignment(
        length={v: 2 * ell for v in range(4)},
        coord=coord,
        rows={0: rows_x, 1: rows_x.copy(), 2: rows_z, 3: rows_z.copy()},
    )
    _check_assignment(s, lca)

    a, b = 1, 2
    edge_words = [(a,), (), (b,), ()]
    edge_words += [(-b,) * j + (a,) * j for j in range(ell)]
    edge_words += [(-b,) * (j + 1) + (a,) * (j + 1) for j in range(ell)]
    pres = PresentationData(
        relator=(a,) * ell + (-b,) * ell,
        edge_words=tuple(tuple(w) for w in edge_words),
        basepoint=0,
    )
    spec = FamilySpec("L", ell, g, reduced_generators)
    return FamilyBuild(s, lca, pres, spec)


def build_L_blockmatrix(ell: int, g: Poly) -> tuple[BitMatrix, BitMatrix]:
    """Closed-form circulant block form of the L(ell) check matrices, with
    face columns ordered (i, j) -> i*ell + j:

        H_X = [C(Xg) C(g); C(g) C(g)]    H_Z = [C(hr) C(hr); C(X hr) C(hr)]

    where ``hr`` generates the dual cyclic code.  Equal to the assembled
    matrices as row spaces.
    """
    cyc = CyclicCode(ell, g)
    hr = localcodes.cyclic_dual(cyc).g
    c = localcodes.circulant
    hx = gf2.stack([
        gf2.hstack([c(g.shift(1)), c(g)]),
        gf2.hstack([c(g), c(g)]),
    ])
    hz = gf2.stack([
        gf2.hstack([c(hr), c(hr)]),
        gf2.hstack([c(hr.shift(1)), c(hr)]),
    ])
    return hx, hz


def build_BS(ell: int, f: Poly) -> FamilyBuild:
    """Base complex and local codes of the family BS(ell, ell).

    The four corner vertices get products (1,1) x r with r running over
    generator rows of D_2ell(f) (X side) or its dual (Z side); each of the
    4*ell subdivision vertices carries the single parity check over its
    four face corners.
    """
    if ell < 2:
        raise ValueError(f"ell must be at least 2, got {ell}")
    T = (0, 2, 1, 3)  # vertex id of the boundary circle position t_i
    n_mid = 4 * ell

    def mid(x: int) -> int:
        return 4 + (x - 1) // 2 if x % 2 else 4 + 2 * ell + x // 2

    side = [0, 0, 1, 1] + [0] * (2 * ell) + [1] * (2 * ell)
    edges: list[tuple[int, int]] = []
    for i in range(4):
        edges.append((T[i], T[(i + 1) % 4]))
    for x in range(n_mid):  # lower verticals, ids 4+x
        edges.append((T[x % 4], mid(x)))
    for x in range(n_mid):  # upper verticals, ids 4+4*ell+x
        edges.append((mid(x), T[x % 4]))
    for x in range(n_mid):  # middle horizontals, ids 4+8*ell+x
        edges.append((mid(x), mid((x + 1) % n_mid)))
    lo = lambda x: 4 + x
    up = lambda x: 4 + 4 * ell + x
    ho = lambda x: 4 + 8 * ell + x
    fwd = lambda e: 2 * e
    rev = lambda e: 2 * e + 1
    faces = []
    for i in range(4):
        for j in range(ell):
            p = 4 * j + i
            q = (p + 1) % n_mid
            upper = (fwd(ho(p)), fwd(up(q)), rev(i), rev(up(p)))
            lower = (fwd(i), fwd(lo(q)), rev(ho(p)), rev(lo(p)))
            faces.append(canonical_face(upper))  # kappa = 0
            faces.append(canonical_face(lower))  # kappa = 1
    s = SquareComplex(4 + n_mid, tuple(edges), tuple(faces), tuple(side))
    if not validate(s):
        raise AssertionError("BS complex failed validation")

    dc = DoubleCirculantCode(ell, f)
    par2 = gf2.from_dense([[1, 1]])
    rows_x = localcodes.kron_generators(par2, dc.generator_matrix())
    rows_z = localcodes.kron_generators(par2, localcodes.double_circulant_dual(dc))
    ones4 = gf2.from_dense([[1, 1, 1, 1]])

    # face id (i, j, kappa) -> i*2*ell + 2*j + kappa; block/slot maps below
    # follow the grid structure: slot = kappa*ell + j, with the i=3 block of
    # the t_0 corner shifted one column by the wrap.
    def corner_col(v: int, i: int, j: int, kappa: int) -> int:
        slot = kappa * ell + j
        if v == 0:
            return slot if i == 0 else 2 * ell + kappa * ell + (j + 1) % ell
        if v == 1:
            return slot if i == 2 else 2 * ell + slot
        if v == 2:
            return slot if i == 0 else 2 * ell + slot
        return slot if i == 2 else 2 * ell + slot  # v == 3

    coord: dict[int, dict[tuple[int, int], int]] = {
        v: {} for v in range(4 + n_mid)
    }
    for fid in range(s.num_faces):
        i, rest = divmod(fid, 2 * ell)
        j, kappa = divmod(rest, 2)
        for c, v in enumerate(s.face_vertices(fid)):
            if v < 4:
                coord[v][(fid, c)] = corner_col(v, i, j, kappa)
    for v in range(4, 4 + n_mid):
        for k, (fid, c) in enumerate(face_neighborhood(s, v)):
            coord[v][(fid, c)] = k
    length = {v: 4 * ell for v in range(4)}
    length.update({v: 4 for v in range(4, 4 + n_mid)})
    rows = {0: rows_x, 1: rows_x.copy(), 2: rows_z, 3: rows_z.copy()}
    rows.update({v: ones4.copy() for v in range(4, 4 + n_mid)})
    lca = LocalCodeAssignment(length=length, coord=coord, rows=rows)
    _check_assignment(s, lca)

    a, b = 1, 2
    edge_words: list[tuple[int, ...]] = [(b,), (), (), ()]
    for x in range(n_mid):  # lower verticals carry conjugates of a
        jj, ii = divmod(x, 4)
        c_x = jj + (1 if ii > 0 else 0)
        edge_words.append((-b,) * c_x + (a,) + (b,) * c_x)
    for _ in range(n_mid):  # upper verticals
        edge_words.append(())
    for x in range(n_mid):  # horizontals advance b once per four columns
        edge_words.append((b,) if x % 4 == 0 else ())
    pres = PresentationData(
        relator=(a,) + (b,) * ell + (-a,) + (-b,) * ell,
        edge_words=tuple(edge_words),
        basepoint=0,
    )
    spec = FamilySpec("BS", ell, f)
    return FamilyBuild(s, lca, pres, spec)


def build_family(spec: FamilySpec) -> FamilyBuild:
    if spec.family == "L":
        return build_L(spec.ell, spec.poly, spec.reduced_generators)
    return build_BS(spec.ell, spec.poly)
