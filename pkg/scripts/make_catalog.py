"""Regenerate the bundled deck-group catalog.

Run from the repository root:  python3 scripts/make_catalog.py
The test suite asserts that the committed .grp files match these
constructions exactly.
"""
from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from qtanner.groups import (
    GroupTable,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    s3,
    semidirect_cyclic,
    write_group_file,
)


def catalog_groups() -> list[GroupTable]:
    return [
        cyclic(3),
        cyclic(4),
        cyclic(5),
        cyclic(7),
        cyclic(12),
        cyclic(28),
        direct_product(cyclic(2), cyclic(2)),
        dihedral(12),
        dihedral(20),
        semidirect_cyclic(3, 4, 2),
        semidirect_cyclic(5, 4, 4),
        semidirect_cyclic(3, 8, 2),
        semidirect_cyclic(4, 4, 3),
        semidirect_cyclic(8, 2, 5, name="z8_by_z2_mod"),
        dicyclic(4, name="q16"),
        direct_product(cyclic(2), semidirect_cyclic(3, 4, 2)),
        direct_product(cyclic(4), s3()),
    ]


def main() -> None:
    out = Path(__file__).resolve().parents[1] / "src" / "qtanner" / "catalog"
    out.mkdir(parents=True, exist_ok=True)
    for g in catalog_groups():
        write_group_file(g, out / f"{g.name}.grp")
        print(f"{g.name}.grp (order {g.order})")


if __name__ == "__main__":
    main()
