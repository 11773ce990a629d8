import json
import subprocess
import sys

import pytest

from lipfree import __version__
from lipfree.cli import main
from lipfree.metric import gen_example31


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.fixture
def files(tmp_path):
    sp = gen_example31(2)
    return {
        "space": write(tmp_path, "space.json", sp.to_json()),
        "bad": write(tmp_path, "bad.json", {"labels": ["0", "x", "y"], "base": "0",
                                            "dist": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]}),
        "mu": write(tmp_path, "mu.json", {"coeffs": {"a1": 1, "c2": "-1/2"}}),
        "f": write(tmp_path, "f.json", {"values": {"a1": 1, "c1": -1}}),
        "slice": write(tmp_path, "slice.json", {"coeffs": {"a2": 1, "c2": -1}, "alpha": "1/5"}),
        "slice2": write(tmp_path, "slice2.json", {"coeffs": {"a1": 1}, "alpha": "1/5"}),
        "system": write(tmp_path, "sys.json", {
            "unknowns": ["f"],
            "rows": [{"type": "lipschitz", "combo": {"f": 1}}],
            "objective": {"sense": "max", "terms": [["f", "c2", 1]]},
        }),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_validate(capsys, files):
    code, doc = run_json(capsys, "validate", "--input", files["space"])
    assert code == 0 and doc["result"]["valid"] is True
    assert doc["tool-version"] == __version__
    assert doc["invocation"]["subcommand"] == "validate"
    code, doc = run_json(capsys, "validate", "--input", files["bad"])
    assert code == 0 and doc["result"]["valid"] is False


def test_free_norm_both(capsys, files):
    code, doc = run_json(capsys, "free-norm", "--input", files["space"], "--mu", files["mu"], "--method", "both")
    assert code == 0
    assert doc["result"]["agree"] is True and doc["result"]["lp"] == doc["result"]["flow"]


def test_free_norm_float(capsys, files):
    code, doc = run_json(capsys, "free-norm", "--input", files["space"], "--mu", files["mu"], "--mode", "float")
    _, exact = run_json(capsys, "free-norm", "--input", files["space"], "--mu", files["mu"])
    assert exact["result"]["value"] == "1"
    assert code == 0 and abs(float(doc["result"]["value"]) - 1) < 1e-9


def test_lip_norm(capsys, files):
    code, doc = run_json(capsys, "lip-norm", "--input", files["space"], "--f", files["f"])
    assert code == 0 and doc["result"]["value"] == "1"


def test_slice_and_combo(capsys, files):
    code, doc = run_json(capsys, "slice-diam", "--input", files["space"], "--slice", files["slice"])
    assert code == 0 and "value" in doc["result"]
    code, out = run(capsys, "slice-diam", "--input", files["space"], "--slice", files["slice"], "--format", "csv")
    assert code == 0 and out.startswith("p,q,value")
    code, doc2 = run_json(capsys, "combo-diam", "--input", files["space"], "--slices", files["slice"], files["slice"])
    assert doc2["result"]["value"] == doc["result"]["value"]
    code, doc3 = run_json(capsys, "combo-diam", "--input", files["space"], "--slices", files["slice"], "--weights", "1/2", "1/2")
    assert code == 2 and doc3["error"]["type"] == "InputError"


def test_ssd2p(capsys, files):
    code, doc = run_json(capsys, "ssd2p", "--input", files["space"], "--slices", files["slice"], files["slice2"],
                         "--eps", "1/10", "--full-table")
    assert code == 0 and isinstance(doc["result"]["found"], bool)
    assert doc["invocation"]["eps"] == "1/10"


def test_check(capsys, files):
    code, doc = run_json(capsys, "check", "--kind", "sltp", "--input", files["space"], "--u", "a2", "--v", "c2",
                         "--eps", "1/10", "--set", "a1,b1")
    assert code == 0 and isinstance(doc["result"]["passed"], bool)
    code, doc = run_json(capsys, "check", "--kind", "fltp", "--input", files["space"], "--u", "a2", "--v", "b2",
                         "--eps", "1/2", "--A", "a2,b2", "--f", files["f"])
    assert code == 0 and "passed" in doc["result"]
    code, doc = run_json(capsys, "check", "--kind", "fltp", "--input", files["space"], "--u", "a2", "--v", "b2",
                         "--eps", "1/2")
    assert code == 2


def test_probe(capsys, files):
    code, doc = run_json(capsys, "probe", "--input", files["space"], "--system", files["system"])
    assert code == 0 and doc["result"]["status"] == "optimal" and doc["result"]["value"] == "1"


def test_gallery_formats(capsys, files):
    code, doc = run_json(capsys, "gallery", "--id", "lemma42", "--trials", "20", "--threads", "1")
    assert code == 0 and doc["result"]["passed"] is True
    code, out = run(capsys, "gallery", "--id", "ex41", "--n", "3", "--format", "text")
    assert code == 0 and out.startswith("ex41")
    code, doc = run_json(capsys, "gallery", "--id", "ex41", "--alpha", "1/2")
    assert code == 2 and "--alpha" in doc["error"]["message"]


def test_output_file_and_determinism(capsys, files):
    out1 = str(files["dir"] / "o1.json")
    out2 = str(files["dir"] / "o2.json")
    for o in (out1, out2):
        assert main(["slice-diam", "--input", files["space"], "--slice", files["slice"], "--output", o]) == 0
    assert open(out1).read() == open(out2).read()
    assert capsys.readouterr().out == ""


def test_error_exit_codes(capsys, files):
    code, doc = run_json(capsys, "lip-norm", "--input", files["bad"], "--f", files["f"])
    assert code == 2 and "not a metric" in doc["error"]["message"]
    code, doc = run_json(capsys, "lip-norm", "--input", str(files["dir"] / "missing.json"), "--f", files["f"])
    assert code == 2
    code, doc = run_json(capsys, "frobnicate")
    assert code == 2 and doc["error"]["type"] == "InputError"
    code, doc = run_json(capsys, "free-norm", "--input", files["space"], "--mu", files["mu"], "--eps", "x")
    assert code == 2
    code, doc = run_json(capsys, "check", "--kind", "ltp", "--input", files["space"], "--u", "zz", "--v", "a1",
                         "--eps", "1/2")
    assert code == 2
    code, doc = run_json(capsys, "validate", "--input", files["space"], "--threads", "0")
    assert code == 2


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "lipfree.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == __version__
