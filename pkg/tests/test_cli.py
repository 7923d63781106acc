import json
import subprocess
import sys

import pytest

from maxsat_aa.cli import main
from maxsat_aa.formula import parse_dimacs
from maxsat_aa.lin2 import parse_lin2

COMPLETE2 = "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n"
COMPLETE3 = "p cnf 3 8\n" + "".join(
    f"{a} {b} {c} 0\n" for a in (1, -1) for b in (2, -2) for c in (3, -3)
)


@pytest.fixture
def cnf(tmp_path):
    def write(text, name="f.cnf"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_proc(*argv, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "maxsat_aa", *map(str, argv)],
        input=stdin, capture_output=True, text=True,
    )


class TestStats:
    def test_complete_set(self, capsys, cnf):
        code, out, _ = run(capsys, "stats", cnf(COMPLETE2))
        assert code == 0 and "asat = 3 (3/1)" in out

    def test_three_clause(self, capsys, cnf):
        code, out, _ = run(capsys, "stats", cnf("p cnf 3 1\n1 2 3 0\n"))
        assert "asat = 7/8" in out and "regime = small-n" in out

    def test_malformed(self, capsys, cnf):
        code, _, err = run(capsys, "stats", cnf("p cnf 2 1\n1 5 0\n"))
        assert code == 2 and "error" in err

    def test_missing_file(self, capsys):
        assert run(capsys, "stats", "/nonexistent/x.cnf")[0] == 2

    def test_lenient(self, capsys, cnf):
        path = cnf("p cnf 2 1\n1 1 2 0\n")
        assert run(capsys, "stats", path)[0] == 2
        code, out, err = run(capsys, "stats", "--lenient", path)
        assert code == 0 and "duplicate" in err

    def test_json_matches_text(self, capsys, cnf):
        path = cnf("p cnf 3 2\n1 2 3 0\n-1 0\n")
        _, text, _ = run(capsys, "stats", path)
        _, js, _ = run(capsys, "stats", "--json", path)
        doc = json.loads(js)
        assert f"asat = {doc['asat']['fraction']}" in text
        assert f"regime = {doc['regime']['regime']}" in text
        assert f"r_max = {doc['r_max']}" in text


class TestSolve:
    def test_units(self, capsys, cnf):
        code, out, _ = run(capsys, "solve", cnf("p cnf 2 2\n1 0\n2 0\n"))
        assert "v 1 2 0" in out and "satisfied = 2" in out and "excess = 1 " in out

    def test_complete_set(self, capsys, cnf):
        _, out, _ = run(capsys, "solve", cnf(COMPLETE2))
        assert "satisfied = 3" in out and "excess = 0 " in out

    def test_empty(self, capsys, cnf):
        _, out, _ = run(capsys, "solve", cnf("p cnf 2 0\n"))
        assert "satisfied = 0" in out

    def test_json(self, capsys, cnf):
        _, out, _ = run(capsys, "solve", "--json", cnf(COMPLETE2))
        doc = json.loads(out)
        assert doc["satisfied"] == 3 and doc["excess"]["fraction"] == "0"


class TestDecide:
    def test_no(self, capsys, cnf):
        code, out, _ = run(capsys, "decide", cnf(COMPLETE2), "-k", 1)
        assert code == 1 and "answer = NO" in out

    def test_k0(self, capsys, cnf):
        code, out, _ = run(capsys, "decide", cnf(COMPLETE3), "-k", 0)
        assert code == 0 and "mechanism = trivial-k0" in out and out.strip().endswith("0")

    def test_yes_with_witness(self, capsys, cnf):
        path = cnf("p cnf 3 4\n1 2 0\n1 -2 0\n-1 2 0\n3 0\n")
        code, out, _ = run(capsys, "decide", "--json", path, "-k", 1)
        doc = json.loads(out)
        assert code == 0 and doc["mechanism"] == "kernel-exhaustion"
        assert doc["witness"] == [-1, -1, -1] and not doc["witness_kernel_only"]
        _, text, _ = run(capsys, "decide", path, "-k", 1)
        assert "v 1 2 3 0" in text and f"twice_excess_max = {doc['twice_excess_max']}" in text

    def test_unknown(self, capsys, cnf):
        clauses = "".join(f"{v} {v % 12 + 1} 0\n" for v in range(1, 13))
        code, out, _ = run(capsys, "decide", cnf(f"p cnf 12 12\n{clauses}"), "-k", 5, "--budget", 2)
        assert code == 3 and "answer = UNKNOWN" in out

    def test_bad_k(self, capsys, cnf):
        with pytest.raises(SystemExit) as exc:
            main(["decide", cnf(COMPLETE2), "-k", "-1"])
        assert exc.value.code == 2


class TestReduce:
    def test_binary_clause(self, capsys, cnf):
        _, out, _ = run(capsys, "reduce", cnf("p cnf 2 1\n1 2 0\n"))
        s = parse_lin2(out)
        assert [(e.support, e.rhs, e.weight) for e in s.equations] == [
            ((1,), -1, 1), ((2,), -1, 1), ((1, 2), -1, 1)
        ]
        assert "k2 = k * 2^(r_used-1) = 1 * 2^1 = 2" in out

    def test_complete_set_empty(self, capsys, cnf):
        _, out, _ = run(capsys, "reduce", cnf(COMPLETE2))
        assert len(parse_lin2(out)) == 0

    def test_kernel_round_trip(self, capsys, cnf):
        _, out, _ = run(capsys, "reduce", "--kernel", cnf("p cnf 3 3\n1 2 0\n1 3 0\n2 3 0\n"))
        assert "trace rank_steps" in out
        from maxsat_aa.lin2 import serialize_lin2
        s = parse_lin2(out)
        assert parse_lin2(serialize_lin2(s)) == s


class TestGen:
    def test_theorem1(self, capsys, cnf, tmp_path):
        meta_path = tmp_path / "meta.json"
        src = cnf("p cnf 4 4\n1 2 3 0\n-1 2 3 0\n1 -2 4 0\n-2 -3 -4 0\n")
        code, out, _ = run(capsys, "gen", "theorem1", src, "--c", 2, "--meta", meta_path)
        assert code == 0
        f = parse_dimacs(out)
        assert len(f) == 32 and f.num_vars == 16
        meta = json.loads(meta_path.read_text())
        assert (meta["size_c1"], meta["size_c2"], meta["size_c3"]) == (15, 4, 13)
        assert out.startswith("c meta {")

    def test_theorem1_width_error(self, capsys, cnf):
        code, _, err = run(capsys, "gen", "theorem1", cnf("p cnf 4 1\n1 2 0\n"))
        assert code == 2 and "exactly 3" in err

    def test_random_byte_identical(self):
        a = run_proc("gen", "random-cnf", "--n", 7, "--m", 12, "--seed", 5)
        b = run_proc("gen", "random-cnf", "--n", 7, "--m", 12, "--seed", 5)
        assert a.returncode == 0 and a.stdout == b.stdout
        assert parse_dimacs(a.stdout).num_clauses == 12

    def test_random_lin2(self, capsys):
        _, out, _ = run(capsys, "gen", "random-lin2", "--n", 4, "--m", 6, "--width", 2)
        assert len(parse_lin2(out)) == 6

    def test_pad_units_stdin(self):
        p = run_proc("gen", "pad-units", "-", "--extra", 2, stdin="p cnf 1 1\n1 0\n")
        f = parse_dimacs(p.stdout)
        assert f.num_vars == 3 and len(f) == 5


class TestOracle:
    def test_pair(self, capsys, cnf):
        _, out, _ = run(capsys, "oracle", cnf("p cnf 1 2\n1 0\n-1 0\n"))
        assert "max_satisfied = 1" in out

    def test_complete_three(self, capsys, cnf):
        _, out, _ = run(capsys, "oracle", cnf(COMPLETE3))
        assert "max_satisfied = 7" in out

    def test_with_k(self, capsys, cnf):
        code, out, _ = run(capsys, "oracle", cnf(COMPLETE2), "-k", 1)
        assert code == 1 and "answer = NO" in out

    def test_over_budget(self, capsys, cnf):
        code, _, err = run(capsys, "oracle", cnf("p cnf 40 1\n1 0\n"))
        assert code == 3 and "budget" in err


def test_pipeline_gen_into_decide():
    gen = run_proc("gen", "random-cnf", "--n", 8, "--m", 20, "--seed", 3)
    dec = run_proc("decide", "-", "-k", 1, "--json", stdin=gen.stdout)
    assert dec.returncode in (0, 1)
    assert json.loads(dec.stdout)["answer"] in ("YES", "NO")
