"""The command-line front end: subcommands, exit codes, deterministic
machine-readable output."""

import json

import pytest

from korbits.catalog import save_catalog, transitive_catalog
from korbits.cli import main
from korbits.group import (close_group, klein_four_group, save_group,
                           symmetric_group)
from korbits.perm import parse_permutation


@pytest.fixture
def klein_file(tmp_path):
    path = tmp_path / "klein.grp"
    save_group(klein_four_group(), path)
    return str(path)


@pytest.fixture
def catalog_file(tmp_path):
    path = tmp_path / "deg4.cat"
    save_catalog(transitive_catalog(4), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestOrbits:
    def test_klein_k2(self, capsys, klein_file):
        code, out, err = run(capsys, "orbits", "--group", klein_file,
                             "--k", "2")
        assert code == 0
        records = [json.loads(l) for l in out.splitlines()
                   if l.startswith("{")]
        header = records[0]
        assert header["record"] == "group" and header["order"] == 4
        orbits = [r for r in records if r["record"] == "orbit"]
        assert len(orbits) == 3
        assert all(r["kind"] == "incoherent" for r in orbits)

    def test_out_file_gets_machine_form(self, capsys, klein_file, tmp_path):
        out_path = tmp_path / "orbits.jsonl"
        code, out, err = run(capsys, "orbits", "--group", klein_file,
                             "--k", "1", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert all(json.loads(l) for l in lines)
        assert "{" not in out       # stdout carries only the summary

    def test_k_and_k_range_conflict(self, capsys, klein_file):
        code, out, err = run(capsys, "orbits", "--group", klein_file,
                             "--k", "1", "--k-range", "1..2")
        assert code == 2 and "error:" in err

    def test_missing_group_file(self, capsys, tmp_path):
        code, out, err = run(capsys, "orbits", "--group",
                             str(tmp_path / "nope.grp"))
        assert code == 2 and "error:" in err


class TestBlocks:
    def test_reports_smash(self, capsys, klein_file):
        code, out, err = run(capsys, "blocks", "--group", klein_file,
                             "--k", "2")
        assert code == 0
        records = [json.loads(l) for l in out.splitlines()
                   if l.startswith("{")]
        blocks = [r for r in records if r["record"] == "blocks"]
        assert blocks and all(r["family_disjoint"] for r in blocks)


class TestRender:
    def test_klein_chain(self, capsys, klein_file, tmp_path):
        sub = tmp_path / "sub.grp"
        save_group(close_group([parse_permutation("(1 2)(3 4)", 4)]), sub)
        code, out, err = run(capsys, "render", "--group", klein_file,
                             "--subgroup", str(sub))
        assert code == 0
        assert out == "12 34\n21 43\n-----\n34 12\n43 21\n"

    def test_bad_chain(self, capsys, klein_file, tmp_path):
        sub = tmp_path / "sub.grp"
        save_group(symmetric_group(4), sub)
        code, out, err = run(capsys, "render", "--group", klein_file,
                             "--subgroup", str(sub))
        assert code == 2 and "error:" in err


class TestCatalog:
    def test_degree_4(self, capsys):
        code, out, err = run(capsys, "catalog", "--degree", "4")
        assert code == 0
        assert out.splitlines()[1] == "degree 4"
        assert sum(1 for l in out.splitlines() if "|" in l) == 5

    def test_degree_too_big(self, capsys):
        code, out, err = run(capsys, "catalog", "--degree", "9")
        assert code == 2 and "error:" in err


class TestCheck:
    def test_passing_check_exits_zero(self, capsys, catalog_file):
        code, out, err = run(capsys, "check", "--catalog", catalog_file,
                             "--check", "P_capcup")
        assert code == 0
        assert "P_capcup" in out

    def test_failing_check_exits_one(self, capsys, catalog_file):
        code, out, err = run(capsys, "check", "--catalog", catalog_file,
                             "--check", "L_grAB")
        assert code == 1

    def test_all_and_check_conflict(self, capsys, catalog_file):
        code, out, err = run(capsys, "check", "--catalog", catalog_file,
                             "--all", "--check", "P_capcup")
        assert code == 2

    def test_needs_selection(self, capsys, catalog_file):
        code, out, err = run(capsys, "check", "--catalog", catalog_file)
        assert code == 2

    def test_needs_catalog(self, capsys):
        code, out, err = run(capsys, "check", "--all")
        assert code == 2

    def test_unknown_check_id(self, capsys, catalog_file):
        code, out, err = run(capsys, "check", "--catalog", catalog_file,
                             "--check", "P_bogus")
        assert code == 2

    def test_report_byte_identical_across_runs(self, capsys, catalog_file,
                                               tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(capsys, "check", "--catalog", catalog_file, "--check",
            "T_coherent", "--out", str(a))
        run(capsys, "check", "--catalog", catalog_file, "--check",
            "T_coherent", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestFks:
    def test_klein_trace(self, capsys, klein_file):
        code, out, err = run(capsys, "fks", "--group", klein_file)
        assert code == 0
        records = [json.loads(l) for l in out.splitlines()
                   if l.startswith("{")]
        result = [r for r in records if r["record"] == "result"][0]
        assert result["order"] in (2, 4)
        assert "fixed-point-free" in out

    def test_intransitive_rejected(self, capsys, tmp_path):
        path = tmp_path / "g.grp"
        save_group(close_group([parse_permutation("(1 2)", 3)]), path)
        code, out, err = run(capsys, "fks", "--group", str(path))
        assert code == 2 and "error:" in err


class TestAudit:
    def test_hypothesis_violation_named(self, capsys, klein_file):
        code, out, err = run(capsys, "audit", "--group", klein_file)
        assert code == 2
        assert "error:" in err and "hypothesis violated" in err


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_bad_k_range(self, capsys, klein_file):
        assert main(["orbits", "--group", klein_file,
                     "--k-range", "3..1"]) == 2
