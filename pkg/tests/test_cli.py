import json
import pathlib
import shutil
import subprocess
import sys

import jsonschema
import pytest

from theta_coords import LaurentPoly, V, elementary, vpow
from theta_coords.cli import main
from theta_coords.serialize import poly_from_json, poly_to_json

SCHEMAS = pathlib.Path(__file__).resolve().parents[1] / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / name).read_text())


def run(capsys, tmp_path, command, doc=None, *flags):
    argv = [command, *flags]
    if doc is not None:
        path = tmp_path / "in.json"
        path.write_text(json.dumps(doc))
        argv += ["--in", str(path)]
    code = main(argv)
    out = json.loads(capsys.readouterr().out)
    jsonschema.validate(out, schema("output.schema.json"))
    return code, out


E1 = poly_to_json(LaurentPoly.var(0, 2) + LaurentPoly.var(1, 2))
TAME = {
    "field": {"kind": "gf", "ell": 13},
    "ring": {"p": 3, "f": 1},
    "frob": [[0, 1], [1, 0]],
    "gen": [[5, 0], [0, 8]],
}


def test_strata_example(capsys, tmp_path):
    code, out = run(capsys, tmp_path, "strata", {"params": {"n": 2, "m": 1, "q": 2}})
    assert code == 0
    assert out["result"]["counts"] == [1, 3]
    assert out["provenance"]["command"] == "strata"
    assert out["provenance"]["toolkit-version"]


def test_rallis_apply_example(capsys, tmp_path):
    code, out = run(capsys, tmp_path, "rallis-apply", {"params": {"n": 2, "m": 1}, "input": E1})
    assert code == 0
    jsonschema.validate(out["result"], schema("poly.schema.json"))
    assert poly_from_json(out["result"]) == LaurentPoly(1, {(-1,): vpow(-1), (0,): V})


def test_scs_congruence_example(capsys, tmp_path):
    doc = {"params": {"n": 3}, "ring": {"p": 3, "f": 1}, "specialization": {"ell": 13, "v_image": 4}}
    code, out = run(capsys, tmp_path, "scs-congruence", doc)
    assert code == 0 and out["result"]["equal"] is True
    code, out = run(capsys, tmp_path, "scs-congruence", None, "--params", '{"n": 3}', "--ring", "3,1", "--spec", "5,auto")
    assert code == 0 and out["result"]["equal"] is False


def test_scs_congruence_explicit_pair(capsys, tmp_path):
    def one_point(k):
        return {"elements": [{"symbol": "1", "twist": {"num": "1", "vpow": k}}]}

    # q = 2 = -1 mod 3: q = q^{-1} but v^2 = -1 so v != v^{-1}
    for a, b, expect in [(2, -2, True), (1, -1, False)]:
        doc = {"ring": {"p": 2}, "specialization": {"ell": 3, "v_image": "auto"},
               "input": {"left": one_point(a), "right": one_point(b)}}
        code, out = run(capsys, tmp_path, "scs-congruence", doc)
        assert code == 0 and out["result"]["equal"] is expect


def test_scs_theta(capsys, tmp_path):
    s = {"elements": [{"symbol": {"label": "1"}, "twist": {"num": "1", "den": "1", "vpow": 0}}]}
    code, out = run(capsys, tmp_path, "scs-theta", {"params": {"n": 2}, "input": s})
    assert code == 0
    jsonschema.validate(out["result"], schema("support.schema.json"))
    assert [e["twist"]["vpow"] for e in out["result"]["elements"]] == [-1, 1]


def test_rallis_preimage(capsys, tmp_path):
    g = poly_to_json(LaurentPoly.var(0, 1) + LaurentPoly.var(0, 1) ** -1)
    code, out = run(capsys, tmp_path, "rallis-preimage", {"params": {"n": 2}, "input": g})
    assert code == 0
    code, back = run(capsys, tmp_path, "rallis-apply", {"params": {"n": 2, "m": 1}, "input": out["result"]})
    assert poly_from_json(back["result"]) == poly_from_json(g)


def test_lparam_pipeline(capsys, tmp_path):
    spec = {"ell": 13, "v_image": 4}
    code, out = run(capsys, tmp_path, "lparam-check", {"input": TAME})
    assert code == 0 and out["result"] == {"tame": True}
    code, out = run(capsys, tmp_path, "lparam-map", {"input": TAME, "params": {"n": 3}, "specialization": spec})
    assert code == 0
    image = out["result"]
    jsonschema.validate(image, schema("tame.schema.json"))
    assert image["frob"] == [[0, 10, 0], [10, 0, 0], [0, 0, 3]]
    code, out = run(capsys, tmp_path, "lparam-invariants", {"input": image, "params": {"max_len": 2}})
    assert code == 0 and len(out["result"]) == 6
    for iv in out["result"]:
        jsonschema.validate(iv, schema("invariants.schema.json"))
    fs = next(iv for iv in out["result"] if iv["word"] == "FS")
    doc = {"input": fs, "params": {"m": 2}, "ring": {"p": 3}, "specialization": spec}
    code, out = run(capsys, tmp_path, "lparam-pullback", doc)
    assert code == 0
    # source FS value [[0, 11], [2, 0]] has charpoly X^2 - 22 = X^2 + 4
    assert out["result"]["coeffs"] == [4, 0, 1]


def test_lparam_pullback_non_image(capsys, tmp_path):
    bad = {"word": "FS", "field": {"kind": "gf", "ell": 13}, "coeffs": [5, 4, 10, 1]}
    doc = {"input": bad, "params": {"scalar_blocks": [3]}}
    code, out = run(capsys, tmp_path, "lparam-pullback", doc)
    assert code == 2
    assert out["error"]["type"] == "NonzeroRemainder"


def test_word_cap(capsys, tmp_path):
    code, out = run(capsys, tmp_path, "lparam-invariants", {"input": TAME, "params": {"max_len": 13}})
    assert code == 2 and out["error"]["type"] == "TooLarge"
    code, out = run(capsys, tmp_path, "lparam-invariants", {"input": TAME, "params": {"word": "F" * 13, "word_cap": 13}})
    assert code == 0


def test_crosscheck(capsys, tmp_path):
    diag = [{"num": [{"num": "2"}, {"num": "1"}], "den": [{"num": "1"}]}]
    code, out = run(capsys, tmp_path, "crosscheck", {"params": {"n": 3}, "input": {"diag": diag}})
    assert code == 0 and out["result"] == {"agree": True}
    doc = {"params": {"n": 3}, "ring": {"p": 3}, "specialization": {"ell": 13, "v_image": 4},
           "input": {"field": {"kind": "gf", "ell": 13}, "diag": [2, 7]}}
    code, out = run(capsys, tmp_path, "crosscheck", doc)
    assert code == 0 and out["result"] == {"agree": True}


def test_verify_all_small(capsys, tmp_path):
    code, out = run(capsys, tmp_path, "verify-all", None, "--seed", "0", "--scale", "small")
    assert code == 0 and out["result"]["ok"]


@pytest.mark.parametrize(
    "command,doc,flags",
    [
        ("rallis-apply", {"params": {"n": 2}, "input": E1}, []),
        ("rallis-apply", {"params": {"n": 2, "m": 1}, "input": {"vars": 2}}, []),
        ("rallis-apply", {"params": {"n": "two", "m": 1}, "input": E1}, []),
        ("strata", {"params": {"n": 2, "m": 2, "q": 6}}, []),
        ("scs-congruence", {"params": {"n": 3}}, ["--ring", "3,x"]),
        ("scs-congruence", {"params": {"n": 3}}, ["--spec", "13"]),
        ("scs-congruence", {"params": {"n": 3}}, []),
        ("lparam-check", {"input": {"field": {"kind": "gf", "ell": 13}}}, []),
        ("verify-all", {"command": "strata"}, []),
        ("strata", {"params": [1, 2]}, []),
    ],
)
def test_malformed_input_exit_1(capsys, tmp_path, command, doc, flags):
    code, out = run(capsys, tmp_path, command, doc, *flags)
    assert code == 1
    assert out["error"]["type"] == "SchemaError"


def test_unparseable_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["strata", "--in", str(path)]) == 1
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "SchemaError"


@pytest.mark.parametrize(
    "command,doc,err",
    [
        ("scs-congruence", {"params": {"n": 3}, "ring": {"p": 3}, "specialization": {"ell": 13, "v_image": 5}}, "InvalidSpecialization"),
        ("scs-congruence", {"params": {"n": 3}, "ring": {"p": 3}, "specialization": {"ell": 3, "v_image": 0}}, "CharacteristicClash"),
        ("rallis-preimage", {"params": {"n": 2, "bound": 1, "retries": 0},
                             "input": poly_to_json(LaurentPoly.monomial((5,)))}, "NotFoundWithinBound"),
        ("rallis-preimage", {"params": {"n": 3}, "input": poly_to_json(LaurentPoly.var(0, 2))}, "NotInvariant"),
        ("strata", {"params": {"n": 5, "m": 5, "q": 2}}, "TooLarge"),
        ("lparam-map", {"params": {"n": 3}, "input": TAME}, "MissingSqrtQ"),
    ],
)
def test_domain_errors_exit_2(capsys, tmp_path, command, doc, err):
    code, out = run(capsys, tmp_path, command, doc)
    assert code == 2
    assert out["error"]["type"] == err


def test_flags_override_document(capsys, tmp_path):
    doc = {"params": {"n": 3}, "ring": {"p": 2}, "specialization": {"ell": 13, "v_image": 4}}
    code, out = run(capsys, tmp_path, "scs-congruence", doc, "--ring", "3,1")
    assert code == 0 and out["provenance"]["ring"] == {"p": 3, "f": 1}


def test_out_file_and_determinism(tmp_path):
    doc = tmp_path / "in.json"
    g = poly_to_json(elementary(1, 2) + elementary(2, 2) ** -1)
    doc.write_text(json.dumps({"params": {"n": 4}, "input": g}))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["rallis-preimage", "--in", str(doc), "--out", str(a)]) == 0
    assert main(["rallis-preimage", "--in", str(doc), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_error_is_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1


def test_console_script():
    exe = shutil.which("theta")
    cmd = [exe] if exe else [sys.executable, "-m", "theta_coords.cli"]
    proc = subprocess.run(
        cmd + ["strata", "--params", '{"n": 2, "m": 2, "q": 2}'], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["counts"] == [1, 9, 6]
