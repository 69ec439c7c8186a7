import json
import subprocess
import sys
from pathlib import Path

import pytest

from mvhom.chain import Chain
from mvhom.cli import main
from mvhom.corr import Corr
from mvhom.engine import constant_chain
from mvhom.finspace import discrete, make_space, product
from mvhom.io import (
    FormatError,
    chain_from_json,
    chain_to_json,
    corr_from_json,
    corr_to_json,
    decode_point,
    space_from_json,
    space_to_json,
)
from mvhom.simplicial import delta_fin, interval_fin

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def sample(name):
    return SAMPLES / name


def test_verify_identities(capsys):
    code, out = run(capsys, "verify-identities", "--affine", "--max-n", 4)
    report = json.loads(out)
    assert code == 0 and report and all(r["status"] == "pass" for r in report)
    code, out = run(capsys, "verify-identities", "--finite", "--max-n", 2)
    assert code == 0 and all(r["status"] == "pass" for r in json.loads(out))
    code, out = run(capsys, "--format", "text", "verify-identities", "--max-n", 2)
    assert code == 0 and out.startswith("identity")


def test_homology_point(capsys):
    code, out = run(capsys, "homology", "--space", sample("pt.json"), "--max-n", 3)
    report = json.loads(out)
    assert code == 0 and report["model"] == "finite"
    assert [g["rank"] for g in report["groups"]] == [1, 0, 0, 0]


def test_homology_pair_skips_high_degrees(capsys):
    code, out = run(capsys, "homology", "--space", sample("pair.json"), "--max-n", 3)
    report = json.loads(out)
    assert code == 0 and report["status"] == "skipped"
    assert [g["rank"] for g in report["groups"]] == [1, 0, 0]


def test_homology_bound_exceeded(capsys):
    code, out = run(capsys, "--bound", "2000", "homology", "--space", sample("pseudocircle.json"), "--max-n", 1)
    report = json.loads(out)
    assert code == 2 and report["status"] == "bound-exceeded"
    assert report["groups"][0]["rank"] == 1


def test_fixedset(capsys):
    code, out = run(capsys, "fixedset", "--corr", sample("funnel.json"))
    assert code == 0
    assert json.loads(out) == {"fixed_set": ["2"], "iterations": [["1", "2", "3"], ["2"]], "stabilized_at": 1}
    code, out = run(capsys, "--format", "text", "fixedset", "--corr", sample("funnel.json"))
    assert "fixed set: ['2']" in out


def test_validate(capsys):
    code, out = run(capsys, "validate", "--corr", sample("bad_i3.json"))
    assert code == 1 and json.loads(out) == {"valid": False, "failures": [["closed", ["g", "x"]]]}
    code, out = run(capsys, "validate", "--corr", sample("good_i3.json"))
    assert code == 0 and json.loads(out)["valid"]


def test_compose_and_box(capsys):
    code, out = run(capsys, "compose", "--first", sample("split.json"), "--second", sample("route.json"))
    assert code == 0
    assert json.loads(out) == {"source": "discrete:p", "target": "discrete:u,v", "pairs": [["p", "u"], ["p", "v"]]}
    code, out = run(capsys, "box", "--left", sample("split.json"), "--right", sample("route.json"))
    assert code == 0 and len(json.loads(out)["pairs"]) == 4
    code, out = run(capsys, "compose", "--first", sample("route.json"), "--second", sample("split.json"))
    assert code == 1


def test_mpath(capsys):
    code, out = run(capsys, "mpath", "--space", sample("sierpinski.json"), "--from", "o", "--to", "c")
    assert code == 0
    assert json.loads(out)["pairs"] == [["g1", "o"], ["m0", "o"], ["m1", "c"]]
    code, out = run(capsys, "mpath", "--space", sample("pair.json"), "--from", "a", "--to", "b")
    assert code == 1 and json.loads(out)["error"]


def test_certify_cycle_file(capsys, tmp_path):
    z = constant_chain(2, {"a"}, 1, discrete(["a", "b"], label="discrete:a,b"))
    path = tmp_path / "z.json"
    path.write_text(json.dumps(chain_to_json(z)))
    code, out = run(capsys, "certify", "--cycle", path, "--basepoint", "b")
    report = json.loads(out)
    assert code == 0 and report["verified"] and report["model"] == "finite"
    code, out = run(capsys, "certify", "--cycle", path, "--basepoint", "q")
    assert code == 1


def test_certify_not_a_cycle(capsys, tmp_path):
    x = discrete(["a", "b"], label="discrete:a,b")
    c = constant_chain(1, {"a"}, 2, x)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(chain_to_json(c)))
    code, out = run(capsys, "certify", "--cycle", path, "--basepoint", "a")
    assert code == 1 and json.loads(out)["error"] == "not-a-cycle"


def test_seeded_certificates_are_byte_stable(capsys):
    args = ["--seed", "3", "certify", "--space", sample("pair.json"), "--degree", "2", "--count", "4", "--basepoint", "a"]
    code, first = run(capsys, *args)
    code2, second = run(capsys, *args)
    assert code == code2 == 0 and first == second
    assert all(c["verified"] for c in json.loads(first)["certificates"])
    code, other = run(capsys, *(["--seed", "4"] + args[2:]))
    assert other != first


def test_malformed_inputs(capsys, tmp_path):
    code, out = run(capsys, "validate", "--corr", tmp_path / "missing.json")
    assert code == 3 and json.loads(out)["error"] == "malformed-input"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run(capsys, "validate", "--corr", bad)
    assert code == 3
    bad.write_text(json.dumps({"source": "pt"}))
    code, out = run(capsys, "validate", "--corr", bad)
    assert code == 3
    with pytest.raises(SystemExit) as exc:
        main(["homology"])
    assert exc.value.code == 3
    code, out = run(capsys, "--bound", "0", "homology", "--space", sample("pt.json"))
    assert code == 3
    code, out = run(capsys, "certify", "--basepoint", "a")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mvhom", "fixedset", "--corr", str(sample("funnel.json"))],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["fixed_set"] == ["2"]


# io round trips

def test_space_round_trip():
    for space in (make_space(["c", "o"], [("c", "o")], t0=True), product(delta_fin(1), interval_fin(1))):
        assert space_from_json(space_to_json(space)) == space
    assert space_from_json("delta:2") == delta_fin(2)
    with pytest.raises(FormatError):
        space_from_json("nowhere.json")
    with pytest.raises(FormatError):
        decode_point(1.5)


def test_corr_and_chain_round_trip():
    x = discrete(["a", "b"], label="discrete:a,b")
    t = Corr(x, x, {("a", "a"), ("b", "a"), ("b", "b")})
    assert corr_from_json(json.loads(json.dumps(corr_to_json(t)))) == t
    z = constant_chain(-2, {"a", "b"}, 3, x) + Chain.of(Corr(delta_fin(3), x, {(p, "a") for p in delta_fin(3).points}))
    assert chain_from_json(json.loads(json.dumps(chain_to_json(z)))) == z
