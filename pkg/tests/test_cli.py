from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest

from quadrica import MapTable, build_example, dumps, free_cp_pair, regular_module, to_doc
from quadrica.cli import main

from conftest import triangular_square_ring


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def write_doc(tmp_path, name, obj):
    return write(tmp_path, name, dumps(to_doc(obj)))


def square_map_doc(tmp_path, n, name="square.map"):
    sr = build_example("tensor", n)
    pair = free_cp_pair(sr)
    f = MapTable(pair, pair, sr.re.mul[np.arange(pair.nm), np.arange(pair.nm)])
    return write_doc(tmp_path, name, f)


def test_example_then_verify(tmp_path, capsys):
    path = str(tmp_path / "sym2.ring")
    assert main(["example", "sym", "2", "--out", path]) == 0
    capsys.readouterr()
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "AC0" in out and "AC8" in out
    assert "FAIL" not in out


def test_verify_structured_report(tmp_path, capsys):
    path = str(tmp_path / "rnil3.pair")
    assert main(["example", "rnil", "3", "--emit", "pair", "--out", path]) == 0
    capsys.readouterr()
    assert main(["verify", path, "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert "MC0" in doc["laws_checked"] and "MC7b" in doc["laws_checked"]
    assert doc["failures"] == []


def test_quad_accepts_the_boolean_square(tmp_path, capsys):
    path = square_map_doc(tmp_path, 2)
    assert main(["quad", path]) == 0
    out = capsys.readouterr().out
    assert "QUADRATIC" in out
    assert main(["quad", path, "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    # the verdict itself is the defining route; the extras are cross-checks
    assert {"reduced", "factorization"} <= set(doc["routes"])


def test_quad_rejects_the_nonboolean_square(tmp_path, capsys):
    path = square_map_doc(tmp_path, 3)
    assert main(["quad", path]) == 1
    out = capsys.readouterr().out
    assert "NOT QUADRATIC" in out
    assert "FAIL" in out


def test_quad_output_is_deterministic(tmp_path, capsys):
    path = square_map_doc(tmp_path, 3)
    main(["quad", path])
    first = capsys.readouterr().out
    main(["quad", path])
    second = capsys.readouterr().out
    main(["quad", path, "--jobs", "2"])
    third = capsys.readouterr().out
    assert first == second == third


def test_parse_failures_exit_two(tmp_path, capsys):
    bad = write(tmp_path, "broken.doc", "{ nope")
    assert main(["verify", bad]) == 2
    missing = str(tmp_path / "does-not-exist.doc")
    assert main(["verify", missing]) == 2


def test_carrier_axiom_failures_exit_one(tmp_path, capsys):
    doc = json.loads(dumps(to_doc(free_cp_pair(build_example("sym", 2)))))
    doc["group"]["add"][0] = [1, 0, 2, 3]  # rectangular, but 0 is no identity
    bad = write(tmp_path, "notagroup.doc", json.dumps(doc))
    assert main(["verify", bad]) == 1


def test_enum_census_and_limit(tmp_path, capsys):
    pair = write_doc(tmp_path, "sym2.pair", free_cp_pair(build_example("sym", 2)))
    assert main(["enum", pair, pair]) == 0
    out = capsys.readouterr().out
    assert "8" in out
    assert main(["enum", pair, pair, "--limit", "3"]) == 3


def test_hom_emits_a_verifiable_document(tmp_path, capsys):
    pair = write_doc(tmp_path, "sym2.pair", free_cp_pair(build_example("sym", 2)))
    out_path = str(tmp_path / "hom.cpmod")
    assert main(["hom", pair, pair, "--out", out_path]) == 0
    capsys.readouterr()
    assert main(["verify", out_path]) == 0


def test_hom_respects_caps(tmp_path, capsys):
    pair = write_doc(tmp_path, "sym2.pair", free_cp_pair(build_example("sym", 2)))
    assert main(["hom", pair, pair, "--cap-group", "4"]) == 3


def test_compose_certifies_and_rejects_mismatches(tmp_path, capsys):
    sr = build_example("tensor", 2)
    pair = free_cp_pair(sr)
    sq = MapTable(pair, pair, sr.re.mul[np.arange(4), np.arange(4)])
    first = write_doc(tmp_path, "sq.map", sq)
    assert main(["compose", first, first]) == 0
    other = write_doc(
        tmp_path,
        "zero.map",
        MapTable(*(free_cp_pair(build_example("sym", 2)),) * 2, np.zeros(4, dtype=np.int64)),
    )
    assert main(["compose", first, other]) == 4


def test_usage_mismatches_exit_four(tmp_path, capsys):
    ring = write_doc(tmp_path, "sym2.ring", build_example("sym", 2))
    assert main(["quad", ring]) == 4  # a ring is not a map
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 4
    with pytest.raises(SystemExit) as info:
        main(["example", "sym"])  # missing the modulus
    assert info.value.code == 4


def test_quad_requires_a_commutative_base(tmp_path, capsys):
    sr = triangular_square_ring()
    reg = regular_module(sr)
    path = write_doc(tmp_path, "noncomm.map", MapTable(reg, reg, np.arange(8)))
    assert main(["quad", path]) == 4


def test_invalid_epsilon_exits_four(tmp_path, capsys):
    assert main(["example", "gamma", "3", "--epsilon", "1"]) == 4


def test_gr_report(tmp_path, capsys):
    pair = write_doc(tmp_path, "tensor2.pair", free_cp_pair(build_example("tensor", 2)))
    assert main(["gr", pair]) == 0
    out = capsys.readouterr().out
    assert "degree 1" in out and "degree 2" in out
    main(["gr", pair, "--format", "structured"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["degree1_order"] == 2 and doc["degree2_order"] == 2


def test_example_emit_variants(tmp_path, capsys):
    for emit in ("ring", "pair", "regular", "ree"):
        assert main(["example", "rnil", "4", "--emit", emit]) == 0
        capsys.readouterr()


def test_release_profile_is_accepted(tmp_path, capsys):
    path = square_map_doc(tmp_path, 2)
    assert main(["quad", path, "--profile", "release"]) == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quadrica.cli", "example", "sym", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "square_ring"
