"""Command-line surface: exit codes, JSON shapes, determinism."""

import io
import json
from contextlib import redirect_stdout

import pytest

from edgesep.cli import main
from edgesep.formats import emit_graph
from edgesep.generators import complete, grid, star


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.fixture
def grid_file(tmp_path):
    p = tmp_path / "g.gr"
    p.write_text(emit_graph(grid(3, 3)))
    return str(p)


class TestGen:
    def test_grid_text(self):
        code, out = run_cli(["gen", "grid", "2", "2"])
        assert code == 0
        assert out.startswith("p tw 4 4\n")

    def test_bad_family_params(self):
        code, _ = run_cli(["gen", "grid", "3"])
        assert code == 2

    def test_missing_input_file_is_usage_error(self):
        code, _ = run_cli(["partition", "/nonexistent/g.gr", "--t", "4"])
        assert code == 2


class TestPartition:
    def test_grid_partition_json(self, grid_file):
        code, out = run_cli(["partition", grid_file, "--t", "5"])
        assert code == 0
        data = json.loads(out)
        assert data["kind"] == "partition"
        assert data["validators"]["partition"] is True
        assert data["validators"]["embedding"] is True
        assert data["bounds"]["h_width"] <= data["bounds"]["h_width_bound"]

    def test_certificate_exits_3(self, tmp_path):
        p = tmp_path / "k8.gr"
        p.write_text(emit_graph(complete(8)))
        code, out = run_cli(["partition", str(p), "--t", "5"])
        assert code == 3
        data = json.loads(out)
        assert data["kind"] == "certificate"
        assert len(data["branch_sets"]) == 5
        assert data["validators"]["model"] is True

    def test_timings_flag_adds_volatile_block(self, grid_file):
        _, out0 = run_cli(["partition", grid_file, "--t", "5"])
        _, out1 = run_cli(["partition", grid_file, "--t", "5", "--timings"])
        assert "timings" not in json.loads(out0)
        assert "timings" in json.loads(out1)


class TestTdlg:
    def test_width_within_bound(self, grid_file, tmp_path):
        td = tmp_path / "g.td"
        code, out = run_cli(["tdlg", grid_file, "--t", "5", "--td-out", str(td)])
        assert code == 0
        data = json.loads(out)
        assert data["within_bound"] is True
        assert data["validators"]["decomposition"] is True
        assert td.read_text().startswith("s td ")

    def test_round_trip_through_verify(self, grid_file, tmp_path):
        td = tmp_path / "g.td"
        run_cli(["tdlg", grid_file, "--t", "5", "--td-out", str(td)])
        code, out = run_cli(["verify", "td", str(td), "--against", grid_file, "--line"])
        assert code == 0 and json.loads(out)["ok"] is True


class TestSeparate:
    def test_uniform(self, grid_file):
        code, out = run_cli(["separate", grid_file, "--t", "5", "--uniform"])
        assert code == 0
        data = json.loads(out)
        assert data["balance_ok"] is True
        assert len(data["edges"]) <= data["bound_used"]

    def test_weights_file(self, grid_file, tmp_path):
        w = tmp_path / "w.w"
        w.write_text("\n".join(f"{i} 1/9" for i in range(1, 10)) + "\n")
        code, out = run_cli(["separate", grid_file, "--t", "5",
                             "--weights", str(w)])
        assert code == 0 and json.loads(out)["balance_ok"] is True

    def test_conflicting_weight_flags(self, grid_file, tmp_path):
        w = tmp_path / "w.w"
        w.write_text("1 1\n")
        code, _ = run_cli(["separate", grid_file, "--t", "5", "--uniform",
                           "--weights", str(w)])
        assert code == 2


class TestIso:
    def test_grid_witness(self, grid_file):
        code, out = run_cli(["iso", grid_file, "--t", "5"])
        assert code == 0
        data = json.loads(out)
        lo, hi = data["window"]
        assert lo <= data["size"] <= hi


class TestVerify:
    def test_partition_artifact_round_trip(self, grid_file, tmp_path):
        art = tmp_path / "p.json"
        run_cli(["partition", grid_file, "--t", "5", "--out", str(art)])
        code, out = run_cli(["verify", "partition", str(art),
                             "--against", grid_file])
        assert code == 0 and json.loads(out)["ok"] is True

    def test_corrupted_decomposition_names_axiom(self, grid_file, tmp_path):
        td = tmp_path / "g.td"
        run_cli(["tdlg", grid_file, "--t", "5", "--td-out", str(td)])
        lines = td.read_text().splitlines()
        for i, line in enumerate(lines):
            if line.startswith("b ") and len(line.split()) > 3:
                lines[i] = " ".join(line.split()[:-1])
                break
        bad = tmp_path / "bad.td"
        bad.write_text("\n".join(lines) + "\n")
        code, out = run_cli(["verify", "td", str(bad), "--against", grid_file,
                             "--line"])
        assert code == 1
        assert json.loads(out)["violation"] is not None

    def test_separator_artifact(self, grid_file, tmp_path):
        art = tmp_path / "s.json"
        run_cli(["separate", grid_file, "--t", "5", "--uniform",
                 "--out", str(art)])
        code, out = run_cli(["verify", "separator", str(art),
                             "--against", grid_file])
        assert code == 0 and json.loads(out)["ok"] is True

    def test_wrong_artifact_kind_degrades_gracefully(self, grid_file, tmp_path):
        art = tmp_path / "p.json"
        run_cli(["partition", grid_file, "--t", "5", "--out", str(art)])
        code, out = run_cli(["verify", "model", str(art), "--against", grid_file])
        assert code == 1
        assert "wrong artifact kind" in json.loads(out)["violation"]

    def test_model_artifact(self, tmp_path):
        g = tmp_path / "k8.gr"
        g.write_text(emit_graph(complete(8)))
        art = tmp_path / "cert.json"
        run_cli(["partition", str(g), "--t", "5", "--out", str(art)])
        code, out = run_cli(["verify", "model", str(art), "--against", str(g)])
        assert code == 0 and json.loads(out)["ok"] is True


class TestOracleCommand:
    def test_tw(self, grid_file):
        code, out = run_cli(["oracle", "tw", grid_file])
        assert code == 0 and json.loads(out)["treewidth"] == 3

    def test_minor(self, tmp_path):
        p = tmp_path / "c6.gr"
        from edgesep.generators import cycle
        p.write_text(emit_graph(cycle(6)))
        code, out = run_cli(["oracle", "minor", str(p), "--t", "3"])
        assert code == 0 and json.loads(out)["has_minor"] is True

    def test_limit_exceeded_is_usage_error(self, tmp_path):
        p = tmp_path / "big.gr"
        p.write_text(emit_graph(grid(5, 5)))
        code, _ = run_cli(["oracle", "tw", str(p)])
        assert code == 2

    def test_sep_oracle(self, tmp_path):
        p = tmp_path / "star.gr"
        p.write_text(emit_graph(star(10)))
        code, out = run_cli(["oracle", "sep", str(p)])
        assert code == 0 and json.loads(out)["size"] == 5


class TestDeterminism:
    def test_partition_output_is_byte_identical(self, grid_file):
        outs = {run_cli(["partition", grid_file, "--t", "4"])[1] for _ in range(3)}
        assert len(outs) == 1

    def test_gen_is_byte_identical(self):
        a = run_cli(["gen", "random-tree", "25", "--seed", "11"])[1]
        b = run_cli(["gen", "random-tree", "25", "--seed", "11"])[1]
        assert a == b


class TestBench:
    def test_smoke(self):
        code, out = run_cli(["bench", "--family", "path", "--sizes", "6,10",
                             "--t", "3"])
        assert code == 0
        rows = json.loads(out)["rows"]
        assert [r["size"] for r in rows] == [6, 10]
        assert all(r["median_s"] >= 0 for r in rows)
