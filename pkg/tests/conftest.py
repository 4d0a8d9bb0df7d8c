"""Shared fixtures: the four base family builds, their codes, and a few
frequently used covers.  Everything heavy is session-scoped."""
from __future__ import annotations

from importlib import resources

import pytest

from qtanner import covering, csscode, families, groups
from qtanner.localcodes import Poly

# one line per acceptance criterion, echoed after the test summary so the
# verdicts stay visible even though pytest captures stdout
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def load_catalog_group(name: str) -> groups.GroupTable:
    path = resources.files("qtanner").joinpath(f"catalog/{name}.grp")
    with resources.as_file(path) as p:
        return groups.read_group_file(p)


def cover_with_hom(build, group, hom):
    for cm in covering.enumerate_galois_covers(build.complex, build.presentation, group):
        if cm.hom == hom:
            return cm
    raise LookupError(f"no cover with hom {hom} over {group.name}")


@pytest.fixture(scope="session")
def l10():
    return families.build_L(10, Poly.from_exponents(10, [0, 5]))


@pytest.fixture(scope="session")
def l14():
    return families.build_L(
        14, Poly.from_exponents(14, [0, 1, 2, 3, 6, 7]), reduced_generators=True
    )


@pytest.fixture(scope="session")
def bs3():
    return families.build_BS(3, Poly.from_exponents(3, [1, 2]))


@pytest.fixture(scope="session")
def bs4():
    return families.build_BS(4, Poly.from_exponents(4, [1, 2, 3]))


@pytest.fixture(scope="session")
def l10_code(l10):
    return csscode.assemble(l10.complex, l10.assignment)


@pytest.fixture(scope="session")
def l14_code(l14):
    return csscode.assemble(l14.complex, l14.assignment)


@pytest.fixture(scope="session")
def bs3_code(bs3):
    return csscode.assemble(bs3.complex, bs3.assignment)


@pytest.fixture(scope="session")
def bs4_code(bs4):
    return csscode.assemble(bs4.complex, bs4.assignment)


@pytest.fixture(scope="session")
def bs4_z3_covers(bs4):
    return tuple(
        covering.enumerate_galois_covers(bs4.complex, bs4.presentation, groups.cyclic(3))
    )


@pytest.fixture(scope="session")
def cover96(bs4, bs4_z3_covers):
    for cm in bs4_z3_covers:
        if cm.hom == (1, 1):
            return cm
    raise LookupError("expected a Z3 cover with hom (1, 1)")


@pytest.fixture(scope="session")
def code96(cover96, bs4):
    return csscode.lift_code(cover96, bs4.assignment)
