import io
import json

import pytest
from hypothesis import given, strategies as st

from fpfunctors.agj import dual
from fpfunctors.cli import run
from fpfunctors.freyd import ext1_functor, tor_functor
from fpfunctors.serialize import (
    SchemaError,
    functor_from_json,
    functor_to_json,
    module_from_json,
    module_to_json,
)
from fpfunctors.testkit import random_functor, random_module

from conftest import Z, Z8, cyc

Z2 = {"gens": 1, "rel": [[2]]}


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, (json.loads(text) if "--format" not in argv or "json" in argv else text)


def test_module_info():
    code, rep = call("module", "info", json.dumps({"gens": 2, "rel": [[2, 6], [4, 8]]}))
    assert code == 0
    assert rep["input"]["invariant_factors"] == [2, 4]
    assert rep["input"]["module"] == {"gens": 2, "rel": [[2, 6], [4, 8]]}
    assert rep["projective"] is False


def test_module_linked_trace():
    code, rep = call("module", "linked", "--ring", "Zmod:8", json.dumps(Z2))
    assert code == 0 and rep["linked"] is True
    assert [s["chain"] for s in rep["trace"]] == ["2", "2", "4", "4", "2"]


def test_module_tr_and_syzygy():
    _, rep = call("module", "tr", "--ring", "Zmod:8", json.dumps(Z2))
    assert rep["result"]["invariant_factors"] == [2]
    _, rep = call("module", "syzygy", "--ring", "Zmod:8", json.dumps(Z2))
    assert rep["result"]["invariant_factors"] == [4]


def test_linkage_table():
    code, rep = call("linkage-table", "--ring", "Zmod:8")
    assert code == 0
    rows = {r["d"]: r for r in rep["rows"]}
    assert sorted(rows) == [1, 2, 4, 8]
    assert rows[2]["linked"] and rows[4]["linked"]
    assert rows[1]["stably_zero"] and rows[8]["stably_zero"]


def test_linkage_table_over_z_is_a_computation_error():
    code, rep = call("linkage-table", "--ring", "Z")
    assert code == 1 and rep["kind"] == "computation"


def test_ext_and_tor():
    doc = json.dumps({"ring": {"kind": "Z"}, "M": {"gens": 1, "rel": [[4]]}, "N": {"gens": 1, "rel": [[6]]}})
    assert call("ext", "--n", "1", doc)[1]["result"]["invariant_factors"] == [2]
    assert call("tor", "--n", "1", doc)[1]["result"]["invariant_factors"] == [2]
    assert call("ext", "--n", "0", doc)[1]["result"]["invariant_factors"] == [2]


def test_functor_commands():
    F = json.dumps({"ext1": {"gens": 1, "rel": [[4]]}})
    _, rep = call("functor", "eval", json.dumps({"functor": {"ext1": {"gens": 1, "rel": [[4]]}},
                                                 "at": {"gens": 1, "rel": [[6]]}}))
    assert [v["value"] for v in rep["values"]] == [[2]]
    _, rep = call("functor", "defect", F)
    assert rep["result"]["invariant_factors"] == []
    _, rep = call("functor", "dual", F)
    assert rep["result"]["side"] == "right"
    _, rep = call("functor", "satellite", "--k", "1", F)
    assert all(v["value"] == [] for v in rep["values"])
    _, rep = call("functor", "linked", F)
    assert rep["decision"]["verdict"] == "no"
    _, rep = call("functor", "linked", "--ring", "Zmod:8", json.dumps({"ext1": Z2}))
    assert rep["decision"]["verdict"] == "yes"


def test_functor_linked_no_has_certificate():
    _, rep = call("functor", "linked", json.dumps({"ext1": {"gens": 1, "rel": [[4]]}}))
    assert "certificate" in rep["decision"]


def test_input_from_file_and_testbed(tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"ring": "Zmod:8", "module": Z2}))
    code, rep = call("module", "info", str(f))
    assert code == 0 and rep["ring"] == {"kind": "Zmod", "n": 8}
    bed = tmp_path / "bed.json"
    bed.write_text(json.dumps([{"gens": 1, "rel": [[4]]}]))
    _, rep = call("functor", "eval", "--ring", "Zmod:8", "--testbed", str(bed), json.dumps({"rep": Z2}))
    assert [v["value"] for v in rep["values"]] == [[2]]


@pytest.mark.parametrize("argv", [
    ("module", "info", "{not json"),
    ("module", "info", json.dumps({"rel": [[2]]})),
    ("module", "info", json.dumps({"gens": 1, "rel": [[2, 3]]})),
    ("module", "info", "--ring", "Q", json.dumps(Z2)),
    ("functor", "eval", json.dumps({"arrow": {"X": Z2}})),
    ("functor", "eval", json.dumps({"arrow": {"X": Z2, "Y": {"gens": 1, "rel": []}, "phi": [[1]]}})),
    ("ext", json.dumps({"M": Z2})),
    ("module", "info", "/no/such/file.json"),
])
def test_schema_errors_exit_2(argv):
    code, rep = call(*argv)
    assert code == 2 and rep["kind"] == "schema"


def test_testbed_over_another_ring_is_rejected():
    code, rep = call("functor", "eval", "--ring", "Zmod:8",
                     "--testbed", json.dumps({"ring": "Z", "modules": [Z2]}), json.dumps({"ext1": Z2}))
    assert code == 2


def test_text_format():
    code, text = call("module", "linked", "--ring", "Zmod:8", "--format", "text", json.dumps(Z2))
    assert code == 0
    assert "linked: True" in text and "Omega Tr Omega Tr M" in text
    _, text = call("linkage-table", "--ring", "Zmod:8", "--format", "text")
    assert "d=2" in text and "2 -> 2 -> 4 -> 4 -> 2" in text


def test_selftest_small_suite():
    code, rep = call("selftest", "--ring", "Zmod:8", "--suite", "hilton-rees", "--suite", "linkage-ground-truth")
    assert code == 0 and rep["passed"]
    assert [s["name"] for s in rep["suites"]] == ["hilton-rees", "linkage-ground-truth"]


def test_reports_are_deterministic():
    argv = ("functor", "dual", "--seed", "3", json.dumps({"tensor": {"gens": 2, "rel": [[2, 0], [1, 3]]}}))
    assert call(*argv) == call(*argv)


# --- JSON round trips ------------------------------------------------------------

seeds = st.integers(0, 10**6)
rings = pytest.mark.parametrize("ring", [Z, Z8], ids=str)


@rings
@given(seed=seeds)
def test_module_round_trip(ring, seed):
    M = random_module(ring, seed)
    assert module_from_json(module_to_json(M), ring) == M


@rings
@given(seed=seeds)
def test_functor_round_trip(ring, seed):
    for F in (random_functor(ring, seed), dual(random_functor(ring, seed))):
        G = functor_from_json(json.loads(json.dumps(functor_to_json(F))), ring)
        assert G.arrow == F.arrow and G.side == F.side and G.half_exact == F.half_exact


def test_shorthand_round_trip():
    for F in (ext1_functor(cyc(Z, 4)), tor_functor(cyc(Z8, 2), 2)):
        G = functor_from_json(functor_to_json(F), F.ring)
        assert G.arrow == F.arrow and G.provenance == F.provenance


def test_bad_cert_is_rejected():
    doc = {"arrow": {"X": Z2, "Y": Z2, "phi": [[1]], "cert": [[3]]}}
    with pytest.raises(SchemaError):
        functor_from_json(doc, Z)
