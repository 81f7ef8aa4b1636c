import io
import json
import shutil
import subprocess
import sys

import pytest

from galcov.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, canonical_json, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    assert code == EXIT_OK, err
    return json.loads(out)


def test_group_info():
    d = call_json("group", "info", "DC2")
    assert d["order"] == 8 and len(d["classes"]) == 5 and d["maximal_cyclic_class_count"] == 3
    assert d["pgl2_family"] is None


def test_genus_text_and_json():
    assert call("genus", "--group", "A5", "--orders", "2,3,5") == (0, "0\n", "")
    assert call_json("genus", "--group", "DC2", "--classes", "4a,4a,4b,4b") == {"genus": 5}


def test_nielsen_count():
    assert call_json("nielsen", "count", "--group", "S3", "--classes", "2a,2a,3a")["count"] == 1
    d = call_json("nielsen", "count", "--group", "DC2", "--classes", "4a,4a,4b,4b", "--list")
    assert d["count"] == 2 and len(d["tuples"]) == 2


def test_certify_e3():
    d = call_json("certify", "not-pullback", "--group", "E3^2", "--f-classes", "3a,3b,3a2,3b2",
                  "--target-classes", "3a,3a,3a,3a,3b")
    assert d["status"] == "not_pullback"
    d = call_json("certify", "not-pullback", "--group", "E3^2", "--f-classes", "3a,3b,3a2,3b2",
                  "--target-classes", "3d,3e,3b,3c,3e")
    assert d["status"] == "not_pullback" and d["degrees_checked"] == [2] and d["profiles_checked"] == 11


def test_pullback_commands():
    prof = '{"degree":2,"over_branch":[[1,1],[1,1]],"extra":[[2],[2]]}'
    d = call_json("pullback", "type", "--group", "C2", "--classes", "2a,2a", "--profile", prof)
    assert d == {"classes": ["2a"] * 4, "connectivity": "unknown", "genus": 1, "r_t0": 4}
    d = call_json("pullback", "bound", "--group", "C2", "--classes", "2a,2a", "--profile", prof)
    # (r - 4) n + 4 + usum = -4 + 4 + 2
    assert d["bound"] == 2 and d["usum"] == 2
    d = call_json("pullback", "oracle", "--group", "C2", "--g-tuple", "1,1", "--sigma", "(1,2);(1,2)",
                  "--degree", "2")
    assert d["connected"] is False and d["components"] == 2
    d = call_json("pullback", "oracle", "--group", "C2", "--g-tuple", "1,1,0", "--sigma", "();(1,2);(1,2)",
                  "--degree", "2")
    assert d["connected"] and d["classes"] == ["2a", "2a"]


def test_build_dy_and_extensions():
    d = call_json("build-dy", "--group", "E3^2", "--classes", "3a,3b,3a2,3b2", "--y", "4")
    assert len(d["classes"]) == 5 and d["realizable"]
    d = call_json("extensions", "enumerate", "--quotient", "C2", "--p", "2", "--u", "1")
    assert len(d["actions"]) == 1 and d["actions"][0]["h2_dim"] == 1
    assert len(d["actions"][0]["extensions"]) == 2


def test_replicate_thm1b_and_classify():
    assert call_json("replicate", "thm1b")["threshold"] == 48
    assert call_json("classify", "generic", "--group", "C4", "--field", "Q(i)")["generic_exists"] is True
    assert call_json("classify", "generic", "--group", "C4", "--field", "Q")["generic_exists"] is False
    assert call_json("classify", "pgl2", "--group", "DC2")["pgl2"] is False
    assert call_json("classify", "laurent", "--group", "S4", "--classes", "2a,3a,4a")["laurent"] is True


def test_replicate_genus0_lists_five_families():
    d = call_json("replicate", "genus0")
    assert d["ok"] and d["families"] == sorted(["A4", "A5", "S4", "cyclic", "dihedral"])


@pytest.mark.parametrize("argv", [
    ["group", "info", "Z9"],
    ["genus", "--orders", "2,3"],
    ["genus", "--group", "C6", "--orders", "2,2"],
    ["nielsen", "count", "--group", "S3"],
    ["pullback", "type", "--group", "C2", "--classes", "2a,2a", "--profile", "{oops"],
    ["frobnicate"],
    ["classify", "laurent", "--group", "S3"],
])
def test_usage_errors_exit_one(argv):
    code, out, err = call(*argv)
    assert code == EXIT_USAGE and out == "" and err.startswith("hp:")


def test_budget_exit_three():
    code, _, err = call("nielsen", "count", "--group", "S4", "--classes", "2a,2a,2a,2a,2a,2a", "--budget", "10")
    assert code == EXIT_BUDGET and "budget" in err


def test_canonical_json():
    assert canonical_json({"b": [1, 2], "a": {"d": 1, "c": None}}) == '{"a":{"c":null,"d":1},"b":[1,2]}'


def test_entry_point_byte_identical():
    exe = shutil.which("hp")
    cmd = [exe] if exe else [sys.executable, "-m", "galcov.cli"]
    argv = ["certify", "not-pullback", "--group", "DC2", "--f-classes", "4a,4a,4b,4b",
            "--target-classes", "4a,4a,4a,4a,4b,4b,4b,4b", "--json"]
    a = subprocess.run(cmd + argv, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["status"] == "witness"
