import json

import pytest

from curvelab import cli
from curvelab.counterexamples import figure1_spec
from curvelab.geometry import make_circle, save_curve

def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err

def test_flow_circle(capsys):
    code, out, _ = run(capsys, "flow", "--n", "64", "--dt", "1e-3", "--t-end", "0.01")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "t,perimeter,area,max_kappa,speed_cv"
    assert len(lines) == 12

def test_flow_snapshots(capsys, tmp_path):
    code, _, _ = run(capsys, "flow", "--n", "64", "--dt", "1e-3", "--t-end", "0.004",
                     "--record-every", "2", "--snapshots", str(tmp_path / "snaps"))
    assert code == 0
    files = sorted((tmp_path / "snaps").glob("*.json"))
    assert len(files) == 3
    assert json.loads(files[0].read_text())["n"] == 64

def test_flow_cfl_abort(capsys):
    code, _, err = run(capsys, "flow", "--dt", "1", "--t-end", "1")
    assert code == cli.EXIT_ABORT
    assert "CFL" in err

def test_criterion_circle(capsys):
    code, out, _ = run(capsys, "criterion", "--which", "mm", "--n", "64")
    assert code == 0
    _, vx, vy = out.splitlines()[1].split(",")
    assert abs(float(vx)) < 1e-8 and abs(float(vy)) < 1e-8

def test_criterion_from_curve_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    save_curve(make_circle(2.0, n=64), path)
    code, out, _ = run(capsys, "criterion", "--input", str(path), "--which", "sv")
    assert code == 0 and abs(float(out.splitlines()[1].split(",")[1])) < 1e-8

def test_criterion_from_polygon_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(figure1_spec(0.05).to_json())
    code, out, _ = run(capsys, "criterion", "--input", str(path), "--which", "sv-translation")
    assert code == 0 and float(out.splitlines()[1].split(",")[-1]) < 0

@pytest.mark.parametrize("argv", [
    ("criterion", "--which", "sv-translation", "--u", "0,0"),
    ("criterion", "--input", "/nonexistent.json"),
    ("counterexample", "--figure", "1", "--eps-list", "0.01,0.02"),
    ("counterexample", "--figure", "1", "--eps-list", "a,b"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_USAGE
    assert err.startswith("error:")

@pytest.mark.parametrize("argv", [("counterexample", "--figure", "3", "--eps-list", "0.1,0.05"),
                                  ("flow", "--dt", "-1", "--t-end", "1"), ("bogus",)])
def test_argparse_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(list(argv))
    assert exc.value.code == cli.EXIT_USAGE

def test_counterexample_metadata(capsys, tmp_path):
    meta = tmp_path / "m.json"
    code, out, _ = run(capsys, "counterexample", "--figure", "1", "--eps-list", "0.04,0.02",
                       "--nodes-per-shoulder", "4", "--metadata", str(meta))
    assert code == 0
    assert out.splitlines()[0] == "eps,n,value_x,value_y,eps_times_value,error_estimate"
    assert "limit_x" in json.loads(meta.read_text())["metadata"]

def test_loop_circle(capsys, tmp_path):
    out_file = tmp_path / "loop.csv"
    code, _, err = run(capsys, "loop", "--recipe", "circle-scale", "--m", "16", "--n", "32",
                       "--out", str(out_file))
    lines = out_file.read_text().splitlines()
    assert code == 0
    assert lines[0] == "integral,m,n,value,error_estimate,hv_term"
    assert [l.split(",")[0] for l in lines[1:]] == ["sv", "mm"]
    assert "sv:" in err

def test_perturb_is_seeded(capsys):
    argv = ("criterion", "--which", "sv", "--n", "64", "--perturb", "0.05")
    first = run(capsys, *argv, "--seed", "1")[1]
    again = run(capsys, *argv, "--seed", "1")[1]
    other = run(capsys, *argv, "--seed", "2")[1]
    assert first == again != other
    assert abs(float(first.splitlines()[1].split(",")[1])) > 1e-6
