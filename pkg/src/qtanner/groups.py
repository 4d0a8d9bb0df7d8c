"""Finite groups as explicit multiplication tables.

Element 0 is always the identity.  Tables are numpy int32 arrays with
``table[i, j]`` the product ``i * j``; construction validates closure,
identity, inverses and associativity outright, so downstream code can
trust any ``GroupTable`` it is handed.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

__all__ = [
    "GroupTable",
    "cyclic",
    "dihedral",
    "direct_product",
    "semidirect_cyclic",
    "dicyclic",
    "s3",
    "read_group_file",
    "write_group_file",
]


class GroupTable:
    """A finite group given by its full multiplication table."""

    def __init__(self, table: np.ndarray, name: str):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError(f"table must be square, got {table.shape}")
        if table.min() < 0 or table.max() >= n:
            raise ValueError("table entries out of range")
        idx = np.arange(n, dtype=np.int32)
        if not (np.array_equal(table[0], idx) and np.array_equal(table[:, 0], idx)):
            raise ValueError("element 0 is not an identity")
        for i in range(n):
            if len(set(table[i].tolist())) != n or len(set(table[:, i].tolist())) != n:
                raise ValueError(f"row/column {i} is not a permutation")
        if not np.array_equal(table[table], table[:, table]):
            raise ValueError("table is not associative")
        inv = np.empty(n, dtype=np.int32)
        for i in range(n):
            hits = np.nonzero(table[i] == 0)[0]
            inv[i] = hits[0]
        self.order = n
        self.table = table
        self.inv_table = inv
        self.name = name

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inv_table[i])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        acc = 0
        for _ in range(k):
            acc = self.mul(acc, g)
        return acc

    def element_order(self, g: int) -> int:
        acc, k = g, 1
        while acc != 0:
            acc = self.mul(acc, g)
            k += 1
        return k

    def closure(self, gens) -> frozenset[int]:
        seen = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_generating(self, gens) -> bool:
        return len(self.closure(gens)) == self.order

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"


def cyclic(n: int) -> GroupTable:
    idx = np.arange(n, dtype=np.int32)
    return GroupTable((idx[:, None] + idx[None, :]) % n, f"z{n}")


def dihedral(order: int) -> GroupTable:
    """Dihedral group of the stated order (so ``order // 2`` rotations);
    element ``r + m*f`` is rotation ``r`` composed with ``f`` reflections."""
    if order % 2 or order < 2:
        raise ValueError(f"dihedral group order must be even, got {order}")
    m = order // 2
    table = np.empty((order, order), dtype=np.int32)
    for i in range(order):
        r1, f1 = i % m, i // m
        for j in range(order):
            r2, f2 = j % m, j // m
            r = (r1 + r2) % m if f1 == 0 else (r1 - r2) % m
            table[i, j] = r + m * (f1 ^ f2)
    return GroupTable(table, f"d{order}")


def s3() -> GroupTable:
    g = dihedral(6)
    g.name = "s3"
    return g


def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    na, nb = a.order, b.order
    table = np.empty((na * nb, na * nb), dtype=np.int32)
    for i in range(na * nb):
        ia, ib = divmod(i, nb)
        for j in range(na * nb):
            ja, jb = divmod(j, nb)
            table[i, j] = a.mul(ia, ja) * nb + b.mul(ib, jb)
    return GroupTable(table, f"{a.name}_x_{b.name}")


def semidirect_cyclic(n: int, m: int, k: int, name: str | None = None) -> GroupTable:
    """Z_n semidirect Z_m where the Z_m generator acts on Z_n by
    multiplication with ``k``; requires ``k^m = 1 (mod n)``.  Element
    ``a*m + b`` stands for ``x^a y^b``."""
    if pow(k, m, n) != 1 % n:
        raise ValueError(f"action invalid: {k}^{m} != 1 mod {n}")
    table = np.empty((n * m, n * m), dtype=np.int32)
    for i in range(n * m):
        a1, b1 = divmod(i, m)
        for j in range(n * m):
            a2, b2 = divmod(j, m)
            a = (a1 + a2 * pow(k, b1, n)) % n
            b = (b1 + b2) % m
            table[i, j] = a * m + b
    return GroupTable(table, name or f"z{n}_by_z{m}")


def dicyclic(n: int, name: str | None = None) -> GroupTable:
    """Order ``4n`` group with x of order 2n, y^2 = x^n, y x y^-1 = x^-1.
    Element ``e*2n + a`` stands for ``x^a y^e`` with ``e`` in {0, 1}."""
    if n < 2:
        raise ValueError(f"dicyclic requires n >= 2, got {n}")
    two_n = 2 * n
    table = np.empty((4 * n, 4 * n), dtype=np.int32)
    for i in range(4 * n):
        e1, a1 = divmod(i, two_n)
        for j in range(4 * n):
            e2, a2 = divmod(j, two_n)
            if e1 == 0:
                a, e = (a1 + a2) % two_n, e2
            elif e2 == 0:
                a, e = (a1 - a2) % two_n, 1
            else:
                a, e = (a1 - a2 + n) % two_n, 0
            table[i, j] = e * two_n + a
    return GroupTable(table, name or f"dic{n}")


def write_group_file(g: GroupTable, path) -> None:
    """Line 1 is the order, then one line of products per row element."""
    lines = [str(g.order)]
    for i in range(g.order):
        lines.append(" ".join(str(int(x)) for x in g.table[i]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_group_file(path) -> GroupTable:
    path = Path(path)
    tokens = path.read_text().split()
    n = int(tokens[0])
    if len(tokens) != 1 + n * n:
        raise ValueError(f"{path}: expected {n * n} table entries, got {len(tokens) - 1}")
    table = np.array([int(t) for t in tokens[1:]], dtype=np.int32).reshape(n, n)
    return GroupTable(table, path.stem)
