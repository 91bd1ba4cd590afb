import json

import numpy as np
import pytest

from nbqc.alist_io import parse_qc
from nbqc.channel import CodeInstance, SimConfig, run_monte_carlo
from nbqc.cli import main

EX1 = "2 3\n0 1 1\n1 0 1\n"


def write(path, text):
    path.write_text(text)
    return str(path)


def make_weight2_base(m, n):
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    bits = np.zeros((m, n), dtype=int)
    for j in range(n):
        a, b = pairs[j % len(pairs)]
        bits[a, j] = bits[b, j] = 1
    return "\n".join(
        [f"{m} {n}"] + [" ".join(str(v) for v in row) for row in bits]
    ) + "\n"


# ----------------------------------------------------------------------
# construct
# ----------------------------------------------------------------------
def test_construct_round_trips(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    out = str(tmp_path / "ex1.alist")
    assert main(["construct", base, "--s", "3", "--q", "4", "--seed", "5", "--out", out]) == 0
    captured = capsys.readouterr().out
    assert "ace vector: (inf, inf, inf)" in captured
    assert "expanded girth: inf" in captured
    lifting = parse_qc(open(out).read())
    assert lifting.base.to_text() == EX1
    report = json.load(open(out + ".report.json"))
    assert report["seed"] == 5
    assert report["expanded_girth"] == "inf"


def test_construct_prints_defaulted_seed(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    out = str(tmp_path / "d.alist")
    assert main(["construct", base, "--s", "3", "--q", "4", "--out", out]) == 0
    assert "seed defaulted to 0" in capsys.readouterr().out


def test_construct_large_code_parameters(tmp_path, capsys):
    base = write(tmp_path / "b433.txt", make_weight2_base(4, 33))
    out = str(tmp_path / "b433.alist")
    rc = main(
        [
            "construct", base,
            "--s", "140", "--q", "64", "--depth", "4",
            "--trials", "100", "--seed", "1", "--out", out,
        ]
    )
    assert rc == 0
    captured = capsys.readouterr().out
    assert "N=4620 K>=4060" in captured
    lifting = parse_qc(open(out).read())
    assert lifting.base.n * lifting.s == 4620


@pytest.mark.parametrize(
    "extra",
    [
        ["--s", "3", "--q", "4", "--depth", "5"],
        ["--s", "3", "--q", "3"],
        ["--s", "1", "--q", "4"],
    ],
)
def test_construct_rejects_bad_parameters(tmp_path, capsys, extra):
    base = write(tmp_path / "ex1.txt", EX1)
    out = str(tmp_path / "x.alist")
    assert main(["construct", base] + extra + ["--out", out]) == 1
    assert "error:" in capsys.readouterr().err


def test_construct_missing_file(tmp_path, capsys):
    assert main(
        ["construct", str(tmp_path / "nope.txt"), "--s", "3", "--q", "4", "--out", "o"]
    ) == 1


# ----------------------------------------------------------------------
# analyze
# ----------------------------------------------------------------------
def test_analyze_flags_low_distance_bound(tmp_path, capsys):
    base = write(tmp_path / "b433.txt", make_weight2_base(4, 33))
    assert main(["analyze", base, "--depth", "4"]) == 0
    captured = capsys.readouterr().out
    assert "distance upper bound: 40" in captured
    assert "error-floor prone" in captured
    assert "rate lower bound: 29/33" in captured


def test_analyze_large_bound_not_flagged(tmp_path, capsys):
    base = write(tmp_path / "b866.txt", make_weight2_base(8, 66))
    assert main(["analyze", base, "--depth", "4"]) == 0
    captured = capsys.readouterr().out
    assert "distance upper bound: 1152" in captured
    assert "error-floor prone" not in captured
    assert "rate lower bound: 29/33" in captured


def test_analyze_acyclic_base(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    assert main(["analyze", base]) == 0
    captured = capsys.readouterr().out
    assert "base girth: inf" in captured
    assert "length 4: no cycles" in captured


def test_analyze_lifting_reports_elimination(tmp_path, capsys):
    base = write(tmp_path / "sq.txt", "2 2\n1 1\n1 1\n")
    out = str(tmp_path / "sq.alist")
    assert main(["construct", base, "--s", "4", "--q", "4", "--seed", "3", "--out", out]) == 0
    capsys.readouterr()
    assert main(["analyze", out, "--depth", "4"]) == 0
    captured = capsys.readouterr().out
    assert "all eliminated" in captured
    assert "expanded girth:" in captured


def test_analyze_malformed_file(tmp_path, capsys):
    bad = write(tmp_path / "bad.txt", "not a matrix\n")
    assert main(["analyze", bad]) == 1
    assert "error:" in capsys.readouterr().err


# ----------------------------------------------------------------------
# simulate
# ----------------------------------------------------------------------
def sim_config(tmp_path, **overrides):
    cfg = {
        "modulation": "bpsk",
        "snr_db": [2.0, 8.0],
        "max_frames": 100,
        "max_errors": 1000,
        "decoder_max_iterations": 15,
        "seed": 9,
    }
    cfg.update(overrides)
    return write(tmp_path / "sim.json", json.dumps(cfg))


def test_simulate_writes_results_and_manifest(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    alist = str(tmp_path / "ex1.alist")
    main(["construct", base, "--s", "3", "--q", "4", "--seed", "2", "--out", alist])
    cfg = sim_config(tmp_path)
    out = str(tmp_path / "res.txt")
    assert main(["simulate", alist, cfg, "--out", out]) == 0
    lines = open(out).read().strip().splitlines()
    assert lines[0].startswith("#")
    assert len(lines) == 3  # header + one line per SNR point
    manifest = json.loads(open(out + ".manifest.json").read())
    assert manifest["seed"] == 9
    assert manifest["inputs"]["matrix"]["sha256"]


def test_simulate_reproducible_byte_identical(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    alist = str(tmp_path / "ex1.alist")
    main(["construct", base, "--s", "3", "--q", "4", "--seed", "2", "--out", alist])
    cfg = sim_config(tmp_path)
    out1, out2 = str(tmp_path / "r1.txt"), str(tmp_path / "r2.txt")
    assert main(["simulate", alist, cfg, "--out", out1]) == 0
    assert main(["simulate", alist, cfg, "--out", out2]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()
    assert (
        json.loads(open(out1 + ".manifest.json").read())["config"]
        == json.loads(open(out2 + ".manifest.json").read())["config"]
    )


def test_simulate_matches_direct_library_call(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    alist = str(tmp_path / "ex1.alist")
    main(["construct", base, "--s", "3", "--q", "4", "--seed", "2", "--out", alist])
    cfg_path = sim_config(tmp_path)
    out = str(tmp_path / "res.txt")
    assert main(["simulate", alist, cfg_path, "--out", out]) == 0

    lifting = parse_qc(open(alist).read())
    code = CodeInstance(lifting.field, lifting.expand())
    cfg = SimConfig(
        modulation="bpsk",
        snr_db=(2.0, 8.0),
        max_frames=100,
        max_errors=1000,
        decoder_max_iterations=15,
        rng_seed=9,
    )
    assert open(out).read() == run_monte_carlo(code, cfg).to_text()


def test_simulate_rejects_base_matrix_input(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    cfg = sim_config(tmp_path)
    assert main(["simulate", base, cfg, "--out", str(tmp_path / "r.txt")]) == 1
    assert "error:" in capsys.readouterr().err


def test_simulate_modulation_field_mismatch(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    alist = str(tmp_path / "ex1.alist")
    main(["construct", base, "--s", "3", "--q", "4", "--seed", "2", "--out", alist])
    cfg = sim_config(tmp_path, modulation="16qam")  # 18 bits not divisible by 4
    assert main(["simulate", alist, cfg, "--out", str(tmp_path / "r.txt")]) == 1
    assert "not a multiple" in capsys.readouterr().err


def test_simulate_unknown_config_key(tmp_path, capsys):
    base = write(tmp_path / "ex1.txt", EX1)
    alist = str(tmp_path / "ex1.alist")
    main(["construct", base, "--s", "3", "--q", "4", "--seed", "2", "--out", alist])
    cfg = write(
        tmp_path / "bad.json",
        json.dumps({"modulation": "bpsk", "snr_db": [1], "max_frames": 5, "bogus": 1}),
    )
    assert main(["simulate", alist, cfg, "--out", str(tmp_path / "r.txt")]) == 1
