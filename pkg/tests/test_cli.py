"""End-to-end checks for the command line entry points."""

import json
from pathlib import Path

import pytest

from qtanner import cli, groups
from qtanner.complexes import from_text


def _run(argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture(scope="module")
def build_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("build_l10")
    rc = _run(
        ["build", "--family", "L", "--ell", "10", "--poly", "0,5",
         "--out", out, "--iters", "500", "--seed", "3"]
    )
    assert rc == 0
    return out


@pytest.fixture(scope="module")
def lift_dir(tmp_path_factory):
    gdir = tmp_path_factory.mktemp("groups_z3")
    groups.write_group_file(groups.cyclic(3), gdir / "z3.grp")
    out = tmp_path_factory.mktemp("lift_bs4")
    rc = _run(
        ["lift-enum", "--family", "BS", "--ell", "4", "--poly", "1,2,3",
         "--groups", gdir, "--max-index", "3", "--iters", "1500",
         "--seed", "1", "--out", out]
    )
    assert rc == 0
    return out


def test_build_record_contents(build_dir):
    record = json.loads((build_dir / "L_10_base.json").read_text())
    assert record["family"] == "L"
    assert record["ell"] == 10
    assert record["poly"] == [0, 5]
    assert record["lift_index"] == 1
    assert record["deck_group"] == "1"
    assert record["hom"] is None
    assert record["valid"] is True
    assert (record["n"], record["k"]) == (20, 2)
    for side in ("X", "Z"):
        rep = record["distance"][side]
        assert rep["value"] == 2
        assert rep["exhaustive"] is True
    # matrix references resolve next to the record
    for ref in record["matrices"].values():
        assert (build_dir / ref).exists()


def test_build_complex_file_roundtrips(build_dir):
    s = from_text((build_dir / "L_10_base_complex.txt").read_text())
    assert s.num_vertices == 4
    assert len(s.edges) == 24
    assert len(s.faces) == 20


def test_build_prints_parameters(tmp_path, capsys):
    rc = _run(
        ["build", "--family", "BS", "--ell", "3", "--poly", "1,2",
         "--out", tmp_path, "--iters", "100", "--seed", "0"]
    )
    out = capsys.readouterr().out
    assert rc == 0
    assert "[[24,0]] written to" in out


def test_build_rejects_nondividing_generator(tmp_path, capsys):
    rc = _run(
        ["build", "--family", "L", "--ell", "9", "--poly", "0,2",
         "--out", tmp_path]
    )
    err = capsys.readouterr().err
    assert rc == 1
    assert err.startswith("error:")


def test_unknown_family_exits_with_one(tmp_path):
    with pytest.raises(SystemExit) as exc:
        _run(["build", "--family", "Q", "--ell", "10", "--poly", "0,5",
              "--out", tmp_path])
    assert exc.value.code == 1


def test_lift_enum_record_layout(lift_dir):
    rdir = lift_dir / "records"
    stems = sorted(p.stem for p in rdir.glob("*.json"))
    assert stems == [
        "BS_4_idx001_1_k0",
        "BS_4_idx003_z3_k0",
        "BS_4_idx003_z3_k1",
        "BS_4_idx003_z3_k2",
        "BS_4_idx003_z3_k3",
    ]
    summary = json.loads((lift_dir / "summary.json").read_text())
    assert summary["family"] == "BS"
    assert summary["ell"] == 4
    assert summary["violations"] == 0
    assert len(summary["records"]) == 5


def test_lift_enum_covers_reach_table_parameters(lift_dir):
    rdir = lift_dir / "records"
    best = []
    for p in sorted(rdir.glob("*idx003*.json")):
        rec = json.loads(p.read_text())
        assert rec["valid"] is True
        assert (rec["n"], rec["k"]) == (96, 2)
        vals = [int(rec["distance"][s]["value"]) for s in ("X", "Z")]
        best.append(min(vals))
    # every kernel class gives a genuine quantum code; the best one has d <= 12
    assert len(best) == 4
    assert min(best) <= 12


def test_lift_enum_transfer_checks_present(lift_dir):
    rdir = lift_dir / "records"
    for p in sorted(rdir.glob("*idx003*.json")):
        rec = json.loads(p.read_text())
        checks = rec["transfer_checks"]
        for side in ("X", "Z"):
            assert checks[side]["applicable"] is True
            assert checks[side]["ok"] is True
            assert checks[side]["witness_weight"] == 12


def test_lift_enum_is_deterministic(tmp_path):
    gdir = tmp_path / "groups"
    gdir.mkdir()
    groups.write_group_file(groups.cyclic(3), gdir / "z3.grp")
    outs = []
    for name in ("run_a", "run_b"):
        out = tmp_path / name
        rc = _run(
            ["lift-enum", "--family", "BS", "--ell", "4", "--poly", "1,2,3",
             "--groups", gdir, "--max-index", "3", "--iters", "200",
             "--seed", "5", "--out", out]
        )
        assert rc == 0
        outs.append(out)
    a, b = outs
    rel_a = sorted(p.relative_to(a) for p in a.rglob("*") if p.is_file())
    rel_b = sorted(p.relative_to(b) for p in b.rglob("*") if p.is_file())
    assert rel_a == rel_b
    for rel in rel_a:
        assert (a / rel).read_bytes() == (b / rel).read_bytes()


def test_distance_command_reports_both_sides(build_dir, capsys):
    rc = _run(
        ["distance", "--code", build_dir / "L_10_base.json",
         "--side", "both", "--iters", "100", "--seed", "0"]
    )
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert set(out) == {"X", "Z"}
    for side in ("X", "Z"):
        assert out[side]["value"] == 2
        assert out[side]["method"] == "exact"


def test_table_groups_kernels_into_rows(lift_dir, capsys):
    rc = _run(["table", "--records", lift_dir])
    out = capsys.readouterr().out
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "ell | W | index | deck group | [[n,k,d]] | d^2/n | exact"
    base_rows = [ln for ln in lines if "[[32,2,4]]" in ln]
    assert len(base_rows) == 1
    # exact base matches the published parameters: no footnote marker
    assert " *" not in base_rows[0]
    lift_rows = [ln for ln in lines if "[[96,2," in ln]
    assert len(lift_rows) == 1
    assert "z3" in lift_rows[0]


def test_table_on_empty_directory(tmp_path, capsys):
    rc = _run(["table", "--records", tmp_path])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.strip() == "ell | W | index | deck group | [[n,k,d]] | d^2/n | exact"
