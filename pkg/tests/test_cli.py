import pytest

from jigsolve.cli import main
from jigsolve.gen import generate
from jigsolve.grid import disassemble, read_puzzle, write_bag, write_puzzle


def test_generate_and_oracle(tmp_path, capsys):
    out = tmp_path / "puzzle.txt"
    assert main(["generate", "--n", "3", "--q", "50", "--seed", "4", "--out", str(out)]) == 0
    with open(out) as fh:
        p = read_puzzle(fh)
    assert p.n == 3 and p.q == 50
    assert main(["oracle", "--in", str(out)]) == 0
    text = capsys.readouterr().out
    assert "unique vertex assembly" in text


def test_generate_bag_and_solve_roundtrip(tmp_path, capsys):
    puzfile = tmp_path / "p.txt"
    bagfile = tmp_path / "b.txt"
    plantedfile = tmp_path / "a.txt"
    assert (
        main(
            [
                "generate", "--n", "8", "--q", "600", "--seed", "1",
                "--out", str(puzfile),
                "--bag-out", str(bagfile),
                "--planted-out", str(plantedfile),
                "--bag-seed", "2",
            ]
        )
        == 0
    )
    code = main(["solve", "--in", str(bagfile), "--k", "1", "--planted", str(plantedfile)])
    assert code == 0
    assert "planted match: yes" in capsys.readouterr().out


def test_solve_failure_exit_code(tmp_path, capsys):
    bagfile = tmp_path / "bag.txt"
    p = generate(3, 1, seed=0)
    bag, _ = disassemble(p, 0)
    with open(bagfile, "w") as fh:
        write_bag(bag, fh)
    assert main(["solve", "--in", str(bagfile), "--k", "1"]) == 1
    assert "failed" in capsys.readouterr().out


def test_candidates_counts(tmp_path, capsys):
    bagfile = tmp_path / "bag.txt"
    p = generate(6, 6**3, seed=5)
    bag, _ = disassemble(p, 5)
    with open(bagfile, "w") as fh:
        write_bag(bag, fh)
    assert main(["candidates", "--in", str(bagfile), "--k", "1"]) == 0
    text = capsys.readouterr().out
    assert "unique: 16" in text  # the 4x4 interior
    assert "none: 20" in text


def test_typical_output(tmp_path, capsys):
    puzfile = tmp_path / "p.txt"
    p = generate(6, 10**5, seed=2)
    with open(puzfile, "w") as fh:
        write_puzzle(p, fh)
    assert main(["typical", "--in", str(puzfile), "--k", "1"]) == 0
    text = capsys.readouterr().out
    assert "typical: False" in text  # default c' makes property five fail
    assert main(["typical", "--in", str(puzfile), "--k", "1", "--c-prime", "1"]) == 0


def test_analyze_window(tmp_path, capsys):
    mapfile = tmp_path / "map.txt"
    mapfile.write_text("2\n1 1 -> 1 1\n1 2 -> 3 2\n2 1 -> 3 1\n2 2 -> 1 2\n")
    assert main(["analyze-window", "--in", str(mapfile)]) == 0
    text = capsys.readouterr().out
    assert "tiles: 2" in text
    assert "rank: 3" in text
    assert "q^-3" in text


def test_variant_generate_and_oracle(tmp_path, capsys):
    out = tmp_path / "variant.txt"
    assert (
        main(
            [
                "generate", "--n", "2", "--q", "40", "--seed", "3",
                "--variant", "--involution", "pairing", "--out", str(out),
            ]
        )
        == 0
    )
    assert main(["variant-oracle", "--in", str(out)]) == 0
    text = capsys.readouterr().out
    assert "feasible assemblies:" in text


def test_sweep_cli(tmp_path, capsys):
    cfgfile = tmp_path / "sweep.cfg"
    cfgfile.write_text("n = 7\nq = 300\ntrials = 2\nseed = 4\nk = 1\n")
    out = tmp_path / "out.csv"
    assert main(["sweep", "--config", str(cfgfile), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("n,q,k,seed")
    # overrides win
    assert main(["sweep", "--config", str(cfgfile), "--set", "trials=1", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--k", "1"])  # missing --in
    assert exc.value.code == 2


def test_config_error_exit_code(tmp_path, capsys):
    cfgfile = tmp_path / "bad.cfg"
    cfgfile.write_text("n = 6\nq = 4\nk = 1\n")  # 2(n-2k)^2 < n^2
    out = tmp_path / "out.csv"
    assert main(["sweep", "--config", str(cfgfile), "--out", str(out)]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["oracle", "--in", str(tmp_path / "missing.txt")]) == 2


def test_variant_oracle_involution_cross_check(tmp_path, capsys):
    out = tmp_path / "var.txt"
    main(["generate", "--n", "2", "--q", "4", "--seed", "0", "--variant",
          "--involution", "pairing", "--out", str(out)])
    assert main(["variant-oracle", "--in", str(out), "--involution", "pairing"]) == 0
    capsys.readouterr()
    assert main(["variant-oracle", "--in", str(out), "--involution", "identity"]) == 2
