import io
import json
from pathlib import Path

import pytest

from latcount import CountReport, InvalidHypergraphError, UnboundedPolytopeError, validate
from latcount.cli import main
from latcount.files import (InstanceFileError, dump_hypergraph, dump_instance, load_instance,
                            parse_instance)
from latcount.matching import make_hypergraph

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def write(tmp_path, doc, name="inst.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestFiles:
    def test_matrix_roundtrip(self):
        inst = validate([[1, 2], [2, 1]], [7, 5])
        assert load_instance(dump_instance(inst)).value == inst

    def test_hypergraph_roundtrip_is_one_based(self):
        H = make_hypergraph(4, [[0, 2], [1, 3]], b=[1, 1, 1, 1], partition=[[0, 1], [2, 3]])
        doc = dump_hypergraph(H)
        assert doc["edges"] == [[1, 3], [2, 4]]
        assert load_instance(doc).value == H

    def test_b_matching_document(self):
        f = load_instance({"n": 4, "edges": [[1, 3], [1, 4], [2, 3], [2, 4]], "b": [2, 2, 2, 2]})
        assert f.is_hypergraph
        assert f.value.edges == ((0, 2), (0, 3), (1, 2), (1, 3))
        assert f.value.b == (2, 2, 2, 2)

    def test_stable_set_hint(self):
        f = load_instance({"A": [[1, 0], [0, 1]], "y": [1, 1], "stable_set": [2]})
        assert f.stable_set == (1,)
        assert not f.is_hypergraph

    @pytest.mark.parametrize("doc", [
        [],
        {"A": [[1]]},
        {"A": [[1]], "y": [1], "extra": 1},
        {"A": [], "y": []},
        {"A": [[1, "x"]], "y": [1]},
        {"n": 2},
        {"n": 0, "edges": []},
        {"n": 2, "edges": [[1, 3]]},
        {"n": 2, "edges": [[1, 2]], "stable_set": [0]},
        {"foo": 1},
    ])
    def test_rejects(self, doc):
        with pytest.raises(InstanceFileError):
            load_instance(doc)

    def test_validation_errors_keep_their_type(self):
        with pytest.raises(UnboundedPolytopeError, match="field 'A'"):
            load_instance({"A": [[0]], "y": [0]}, "x.json")
        with pytest.raises(InvalidHypergraphError):
            load_instance({"n": 2, "edges": [[1, 1]]})

    def test_json_error_position(self, tmp_path):
        p = write(tmp_path, '{"A": [[1]],\n "y": [1,]}')
        with pytest.raises(InstanceFileError, match="line 2"):
            parse_instance(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InstanceFileError, match="cannot read"):
            parse_instance(tmp_path / "nope.json")

    def test_stdin(self, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO('{"A": [[1, 1]], "y": [3]}'))
        assert parse_instance("-").value.y == (3,)


class TestReport:
    def test_json_roundtrip(self):
        rep = CountReport(count=3, method="plain", N=6, d=8, scale=36,
                          coefficients=[144, 36, 36, 36, 36, 36], trace=[(1, 36)])
        back = CountReport.from_json(rep.to_json())
        assert back == rep

    def test_rejects_bad_fields(self):
        with pytest.raises(ValueError):
            CountReport(count=-1, method="plain")
        with pytest.raises(ValueError):
            CountReport(count=1, method="magic")


class TestCli:
    def test_count_text(self, capsys):
        code, out, _ = run(capsys, "count", "-i", str(INSTANCES / "first_example.json"))
        assert code == 0 and out == "3\n"

    def test_count_trace(self, capsys):
        code, out, _ = run(capsys, "count", "--trace", "-i", str(INSTANCES / "second_example.json"))
        lines = out.splitlines()
        assert lines[0] == "1"
        assert lines[1] == "scale 64"
        assert lines[2] == "coefficients 104 24 40 24 40 24 40 24"
        assert lines[3:5] == ["subtract 24 at multiples of 1", "subtract 16 at multiples of 2"]
        assert lines[5] == "constant 64 / 64 = 1"

    def test_json_and_check(self, capsys):
        code, out, _ = run(capsys, "match", "--check", "--format", "json", "-i", str(INSTANCES / "k33.json"))
        data = json.loads(out)
        assert code == 0
        assert data["count"] == 6
        assert data["checks"] == {"dp": 6, "brute": 6, "matching-brute": 6}
        assert data["coefficients"] is None

    def test_json_output_parses_as_report(self, capsys):
        code, out, _ = run(capsys, "count", "--trace", "--format", "json",
                           "-i", str(INSTANCES / "first_example.json"))
        rep = CountReport.from_json(out)
        assert (rep.count, rep.N, rep.d, rep.method, rep.scale) == (3, 6, 8, "plain", 36)
        assert rep.trace == [(1, 36)]

    def test_threads_give_identical_json(self, capsys):
        path = str(INSTANCES / "first_example.json")
        outs = []
        for t in ("1", "3"):
            code, out, _ = run(capsys, "count", "--trace", "--format", "json", "--threads", t, "-i", path)
            data = json.loads(out)
            data.pop("elapsed")
            outs.append(data)
        assert outs[0] == outs[1]

    def test_env_default_threads(self, capsys, monkeypatch):
        monkeypatch.setenv("LATCOUNT_THREADS", "2")
        code, out, _ = run(capsys, "count", "-i", str(INSTANCES / "second_example.json"))
        assert (code, out) == (0, "1\n")

    def test_partite_flags(self, capsys):
        path = str(INSTANCES / "contingency_3x3.json")
        code, out, _ = run(capsys, "partite", "--format", "json", "-i", path)
        data = json.loads(out)
        assert code == 0 and data["count"] == 15
        assert data["stable_set"] == [1, 2, 3] and data["sweep_terms"] == 64
        code, out, _ = run(capsys, "partite", "--stable-set", "4,5", "-i", path)
        assert (code, out) == (0, "15\n")

    def test_partite_not_stable(self, capsys):
        code, out, err = run(capsys, "partite", "--stable-set", "1,4", "-i", str(INSTANCES / "k33.json"))
        assert code == 1 and out == ""
        assert "column" in err

    def test_count_auto(self, capsys):
        code, out, _ = run(capsys, "count", "--auto", "--format", "json", "-i", str(INSTANCES / "k33.json"))
        assert json.loads(out)["method"] == "partite"

    def test_match_uniform_and_bmatch(self, capsys):
        assert run(capsys, "match", "--uniform", "3", "-i", str(INSTANCES / "three_uniform.json"))[:2] == (0, "1\n")
        assert run(capsys, "bmatch", "-i", str(INSTANCES / "k55_b.json"))[:2] == (0, "120\n")

    def test_match_needs_hypergraph(self, capsys):
        code, _, err = run(capsys, "match", "-i", str(INSTANCES / "first_example.json"))
        assert code == 1 and "hypergraph" in err

    def test_oracles(self, capsys):
        path = str(INSTANCES / "first_example.json")
        assert run(capsys, "oracle", "-i", path)[:2] == (0, "3\n")
        assert run(capsys, "oracle", "--brute", "-i", path)[:2] == (0, "3\n")

    def test_invalid_input_exit_one(self, capsys, tmp_path):
        code, out, err = run(capsys, "count", "-i", write(tmp_path, {"A": [[1, 0]], "y": [1]}))
        assert code == 1 and out == "" and "unbounded" in err

    def test_usage_error_exit_one(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["count", "--bogus"])
        assert exc.value.code == 1
        assert run(capsys, "count", "--threads", "0", "-i", "x")[0] == 1

    def test_structural_violation_exit_two(self, capsys, monkeypatch):
        from latcount import cli
        from latcount.errors import StructuralViolation

        def broken(args, parsed):
            raise StructuralViolation("pivot 4 does not divide 6")
        monkeypatch.setitem(cli.COMMANDS, "count", broken)
        code, _, err = run(capsys, "count", "-i", str(INSTANCES / "first_example.json"))
        assert code == 2 and "structural" in err

    def test_check_mismatch_exit_three(self, capsys, monkeypatch):
        from latcount import cli
        monkeypatch.setattr(cli, "_run_oracles", lambda parsed, command: {"dp": 4, "brute": 3})
        code, out, err = run(capsys, "count", "--check", "-i", str(INSTANCES / "first_example.json"))
        assert code == 3 and out == "3\n" and "mismatch" in err

    def test_bench_table_and_figure(self, capsys, tmp_path):
        src = tmp_path / "inst"
        src.mkdir()
        for name in ("first_example.json", "cycle4.json"):
            (src / name).write_text((INSTANCES / name).read_text())
        png = tmp_path / "bench.png"
        code, out, _ = run(capsys, "bench", "--check", "-i", str(src), "--plot", str(png))
        rows = [l.split("\t") for l in out.splitlines()]
        assert code == 0
        assert rows[0] == ["instance", "method", "count", "n", "m", "N", "d", "sweep_terms", "seconds"]
        counts = {(r[0], r[1]): r[2] for r in rows[1:]}
        assert counts[("first_example", "plain")] == "3"
        assert counts[("cycle4", "matching-uniform")] == "2"
        assert png.stat().st_size > 0 and png.read_bytes()[:4] == b"\x89PNG"

    def test_bench_empty_dir(self, capsys, tmp_path):
        assert run(capsys, "bench", "-i", str(tmp_path))[0] == 1
