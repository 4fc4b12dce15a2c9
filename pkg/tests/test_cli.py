import csv
import io
import json
import subprocess
import sys

import pytest

from fuscat.cli import build_parser, run
from fuscat.modular import Premodular
from fuscat.extraspecial import double_untwisted


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,golden_name", [
    (["ising", "list"], "ising_list.md"),
    (["ty", "enum", "--n", "2"], "ty_enum_n2.md"),
    (["classify", "ising-products"], "classify_ising_products.md"),
    (["cover", "chi20", "--alpha", "i"], "cover_chi20_i.md"),
    (["cover", "chi20", "--alpha=-i"], "cover_chi20_minus_i.md"),
    (["cover", "obstruct", "--n", "2"], "cover_obstruct_n2.md"),
])
def test_golden_markdown(argv, golden_name, golden):
    code, text = call(*argv, "--format", "md")
    assert code == 0
    assert text == (golden / golden_name).read_text()


def test_format_flag_position_is_free():
    assert call("--format", "csv", "ising", "list") == call("ising", "list", "--format", "csv")


def test_csv_output_parses():
    code, text = call("ising", "list", "--format", "csv")
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    assert rows[0] == ["", "tau", "delta", "eps", "q(e)", "q(g)", "alpha"]
    assert len(rows) == 9


def test_json_output_parses():
    code, text = call("ty", "enum", "--n", "2", "--format", "json")
    data = json.loads(text)
    assert len(data["chi20"]) == 8 and len(data["chi21"]) == 12


def test_sort_computed():
    code, text = call("ty", "enum", "--n", "2", "--k", "1", "--sort", "computed")
    assert code == 0 and "#11" in text


def test_out_flag(tmp_path):
    path = tmp_path / "t.md"
    code, text = call("ising", "list", "--out", str(path))
    assert code == 0 and text == ""
    assert "z16^15" in path.read_text()


def test_modular_check(tmp_path):
    good = tmp_path / "toric.json"
    good.write_text(json.dumps(double_untwisted("Z2").to_json()))
    assert call("modular", "check", "--in", str(good))[0] == 0
    D = double_untwisted("Z2")
    bad = tmp_path / "degenerate.json"
    bad.write_text(json.dumps(Premodular(D.ring, [1, 1, 1, 1]).to_json()))
    code, text = call("modular", "check", "--in", str(bad))
    assert code == 1 and "nondegenerate | no" in text


def test_usage_errors(tmp_path):
    assert call("modular", "check", "--in", "missing.json")[0] == 2
    garbage = tmp_path / "g.json"
    garbage.write_text("{}")
    assert call("modular", "check", "--in", str(garbage))[0] == 2
    assert call("double", "--group", "S9")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("product", "--factors", "I2")[0] == 2
    assert call("cover", "chi20", "--alpha", "1")[0] == 2
    assert call("verify", "nonsense")[0] == 2


def test_product_integral():
    code, text = call("product", "--factors", "I1,I7", "--integral")
    assert code == 0
    assert "(I1xI7)_Q | 1/2 | 1 | -1 | -1 | 1 | i | -i | 1 | -1" in text


def test_cover_chi_n1_from_file(tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps({"n": 2, "k": 1, "tau": "-1/2", "q": ["1", "i", "-i", "1"], "alpha": "i"}))
    code, text = call("cover", "chi-n1", "--spec", str(path), "--format", "json")
    assert code == 0
    assert json.loads(text)["covers"][0]["ok"]


def test_cover_chi_n1_all_classes():
    code, text = call("cover", "chi-n1", "--n", "2", "--format", "json")
    assert code == 0 and len(json.loads(text)["covers"]) == 12


def test_extraspecial_and_double():
    assert call("extraspecial", "--p", "3", "--n", "1")[0] == 0
    assert call("extraspecial", "--p", "4", "--n", "1")[0] == 2
    code, text = call("double", "--group", "S3")
    assert code == 0 and "rank 8" in text


def test_ty_center():
    code, text = call("ty", "center", "--n", "2")
    assert code == 0 and "balancing agrees" in text


def test_verify_single_check():
    code, text = call("verify", "ising")
    assert code == 0 and "ising table | yes" in text


def test_parallel_env(monkeypatch):
    monkeypatch.setenv("FUSCAT_PARALLEL", "2")
    assert call("verify", "ising")[0] == 0


def test_help_lists_commands():
    text = build_parser().format_help()
    for cmd in ("ising", "ty", "modular", "product", "classify", "cover", "extraspecial", "double", "verify"):
        assert cmd in text


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fuscat.cli", "ising", "list", "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["braidings"]) == 8
