import json

import pytest

from orbitpairs import cli
from orbitpairs.orbits import n_lambda
from orbitpairs.posets import Partition
from orbitpairs.qpoly import QPolynomial


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNLambda:
    def test_basic(self, capsys):
        code, out, _ = run(capsys, "nlambda", "3,1")
        assert code == 0
        assert out.strip() == "q^3 + 5q^2 + 7q + 4"

    def test_ones(self, capsys):
        code, out, _ = run(capsys, "nlambda", "1,1,1,1,1")
        assert code == 0
        assert out.strip() == "q + 3"

    def test_empty_partition(self, capsys):
        code, out, _ = run(capsys, "nlambda", "")
        assert code == 0
        assert out.strip() == "1"

    def test_evaluation(self, capsys):
        code, out, _ = run(capsys, "nlambda", "2,1", "--at", "2")
        assert code == 0
        assert "q^2 + 5q + 5" in out
        assert "at q=2: 19" in out

    def test_json_roundtrip(self, capsys):
        code, out, _ = run(capsys, "nlambda", "3,1", "--json")
        assert code == 0
        obj = json.loads(out)
        assert obj["partition"] == "3,1"
        assert QPolynomial.from_json(obj) == n_lambda(Partition.parse("3,1"))

    def test_parse_error_is_exit_1(self, capsys):
        code, _, err = run(capsys, "nlambda", "abc")
        assert code == 1
        assert "error" in err

    def test_entry_raises_system_exit(self, capsys):
        with pytest.raises(SystemExit):
            cli.entry()


class TestTable:
    def test_n1(self, capsys):
        code, out, _ = run(capsys, "table", "1")
        assert code == 0
        assert "q + 2" in out

    def test_n5_rows(self, capsys):
        code, out, _ = run(capsys, "table", "5")
        assert code == 0
        lines = [l for l in out.strip().splitlines() if "|" in l]
        assert len(lines) == 8  # header + 7 partitions
        assert "q^5 + 2q^4 + 2q^3 + 2q^2 + 2q + 2" in out
        assert "q^2 + 6q + 8" in out

    def test_latex(self, capsys):
        code, out, _ = run(capsys, "table", "2", "--latex")
        assert code == 0
        assert "\\begin{tabular}" in out
        assert "q^2 + 2q + 2" in out

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "table", "2", "--csv")
        assert code == 0
        assert out.splitlines()[0] == "partition,orbit count"


class TestCensus:
    def test_shape_2(self, capsys):
        code, out, _ = run(capsys, "census", "2", "--max", "1:2")
        assert code == 0
        assert "total: 2q - 1" in out

    def test_shape_1(self, capsys):
        code, out, _ = run(capsys, "census", "1", "--max", "0:1")
        assert code == 0
        assert "total: q" in out

    def test_out_of_context_is_exit_1(self, capsys):
        code, _, err = run(capsys, "census", "2", "--max", "0:1")
        assert code == 1
        assert "error" in err


class TestRefined:
    def test_single_box(self, capsys):
        code, out, _ = run(capsys, "refined", "1")
        assert code == 0
        assert "q - 1" in out
        assert "grand total: q + 2" in out

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "refined", "")
        assert code == 0
        assert "grand total: 1" in out

    def test_grand_total_matches_n_lambda(self, capsys):
        code, out, _ = run(capsys, "refined", "2,1")
        assert code == 0
        assert "grand total: q^2 + 5q + 5" in out

    def test_limit_and_force(self, capsys):
        code, _, err = run(capsys, "refined", "9")
        assert code == 1
        assert "force" in err
        code, out, _ = run(capsys, "refined", "3,2,2,1,1", "--force")
        assert code == 0
        assert "grand total:" in out


class TestQuiverVerifyConjecture:
    def test_quiver_1(self, capsys):
        code, out, _ = run(capsys, "quiver", "1")
        assert code == 0
        assert out.strip() == "q^2 + 2q"

    def test_quiver_breakdown(self, capsys):
        code, out, _ = run(capsys, "quiver", "2", "--breakdown")
        assert code == 0
        assert "((1),2)" in out
        assert "q^4 + 2q^3 + 4q^2 + 2q" in out

    def test_verify(self, capsys):
        code, out, _ = run(capsys, "verify", "2,1", "2")
        assert code == 0
        assert out.count("PASS") == 5
        assert "FAIL" not in out

    def test_verify_json(self, capsys):
        code, out, _ = run(capsys, "verify", "2", "3", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["pass"] is True

    def test_conjecture(self, capsys):
        code, out, _ = run(capsys, "conjecture", "6")
        assert code == 0
        assert "no negative coefficients" in out


class TestCache:
    def test_warm_equals_cold(self, capsys, tmp_path):
        cache = str(tmp_path / "cache.json")
        _, cold, _ = run(capsys, "table", "4", "--cache", cache)
        data = json.loads(open(cache).read())
        assert "3,1" in data
        _, warm, _ = run(capsys, "table", "4", "--cache", cache)
        assert warm == cold

    def test_cache_content_is_trusted(self, capsys, tmp_path):
        cache = tmp_path / "cache.json"
        cache.write_text(json.dumps({"2": [9, 9, 1]}))
        _, out, _ = run(capsys, "nlambda", "2", "--cache", str(cache))
        assert out.strip() == "q^2 + 9q + 9"

    def test_corrupt_cache_warns_and_recomputes(self, capsys, tmp_path):
        cache = tmp_path / "cache.json"
        cache.write_text("{not json")
        code, out, err = run(capsys, "nlambda", "2", "--cache", str(cache))
        assert code == 0
        assert "warning" in err
        assert out.strip() == "q^2 + 2q + 2"

    def test_invalid_entries_rejected(self, capsys, tmp_path):
        cache = tmp_path / "cache.json"
        cache.write_text(json.dumps({"not a partition": [1]}))
        code, out, err = run(capsys, "nlambda", "2", "--cache", str(cache))
        assert code == 0
        assert "warning" in err
        assert out.strip() == "q^2 + 2q + 2"
