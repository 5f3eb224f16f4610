import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropicon import MAX_PLUS, MIN_PLUS, ConvexSet, SchemaError, separate_convex, vector, verify_certificate
from tropicon import io as tio
from tropicon.cli import run

from conftest import KINDS, scalars

TWO_POINT_INSTANCE = {"semifield": "max-plus", "dimension": 2, "generators": [[0, "-inf"], [2, 3]], "point": [1, 0]}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="in.json"):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)
    return _write


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- wire format ---------------------------------------------------------------------

@given(st.sampled_from(KINDS).flatmap(lambda k: st.tuples(st.just(k), scalars(k))))
def test_scalar_round_trip(ks):
    kind, s = ks
    text = json.dumps(tio.encode_scalar(s))
    assert tio.decode_scalar(tio.loads(text), kind) == s


def test_scalar_encoding():
    assert tio.encode_scalar(vector(["5/2"])[0]) == "5/2"
    assert tio.encode_scalar(vector([-3])[0]) == -3
    assert tio.encode_scalar(vector(["-inf"])[0]) == "-inf"
    assert tio.encode_scalar(vector(["+inf"], MIN_PLUS)[0]) == "+inf"


def test_decimals_are_read_exactly():
    doc = tio.loads('{"x": 0.1}')
    assert doc["x"] == Fraction(1, 10)
    assert tio.decode_scalar(doc["x"], MAX_PLUS).value == Fraction(1, 10)


@pytest.mark.parametrize("bad", [True, None, [1], "abc"])
def test_bad_scalars_are_schema_errors(bad):
    with pytest.raises(SchemaError):
        tio.decode_scalar(bad, MAX_PLUS)


def test_certificate_round_trip():
    C = ConvexSet([vector([0, "-inf"]), vector([2, 3])])
    cert = separate_convex(C, vector([1, "-inf"]))
    back = tio.decode_certificate(tio.loads(tio.dumps(cert)), MAX_PLUS)
    assert back.hyperplane == cert.hyperplane
    assert back.set == cert.set and back.point == cert.point
    assert verify_certificate(back)


def test_dimension_mismatch_in_set():
    with pytest.raises(SchemaError):
        tio.decode_set({"dimension": 3, "generators": [[0, 0]]}, MAX_PLUS)


def test_env_override(monkeypatch):
    env = {tio.ENV_SEMIFIELD: "min-plus"}
    assert tio.resolve_kind({"semifield": "max-plus"}, env) is MIN_PLUS
    with pytest.raises(SchemaError):
        tio.resolve_kind({"mode": "refined", "set": {"semifield": "max-plus"}}, env)
    assert tio.resolve_kind({}, {}) is MAX_PLUS


# -- command line ----------------------------------------------------------------------

def test_separate_then_verify(capsys, write):
    code, out, _ = cli(capsys, "separate", write(TWO_POINT_INSTANCE))
    assert code == 0
    cert = json.loads(out)
    assert cert["mode"] == "refined"
    assert (cert["w_prime"], cert["d_prime"], cert["w_second"], cert["d_second"]) == ([0, 0], 0, [-1, 0], 0)
    code, out, _ = cli(capsys, "verify", "--samples", "100", write(out, "cert.json"))
    assert code == 0 and json.loads(out)["ok"] is True


def test_universal_flag(capsys, write):
    code, out, _ = cli(capsys, "separate", "--universal", write({**TWO_POINT_INSTANCE, "point": [1, "-inf"]}))
    assert code == 0
    assert json.loads(out)["w_prime"] == [0, "+inf"]


def test_tampered_certificate_exits_one(capsys, write):
    _, out, _ = cli(capsys, "separate", write(TWO_POINT_INSTANCE))
    cert = json.loads(out)
    cert["d_prime"] = cert["d_second"] = 9
    code, out, _ = cli(capsys, "verify", write(cert, "bad.json"))
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_member(capsys, write):
    assert json.loads(cli(capsys, "member", write({**TWO_POINT_INSTANCE, "point": [2, 3]}))[1]) == {"member": True}
    assert json.loads(cli(capsys, "member", write(TWO_POINT_INSTANCE))[1]) == {"member": False}


def test_member_point_cannot_be_separated(capsys, write):
    code, _, err = cli(capsys, "separate", write({**TWO_POINT_INSTANCE, "point": [2, 3]}))
    assert code == 3
    assert "PointIsMember" in err


@pytest.mark.parametrize("doc", ["{", "[]", {"generators": [[0, "x"]], "point": [0]},
                                 {"generators": [[0, 0]], "point": [0]}, {"point": [0]},
                                 {"semifield": "tropical", "generators": [[0]], "point": [0]}])
def test_schema_errors_exit_two(capsys, write, doc):
    assert cli(capsys, "member", write(doc))[0] == 2


def test_missing_file_and_bad_option(capsys, tmp_path):
    assert cli(capsys, "member", str(tmp_path / "nope.json"))[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["explode"])
    assert exc.value.code == 2


def test_project(capsys, write):
    out = json.loads(cli(capsys, "project", write({**TWO_POINT_INSTANCE, "point": [1, -4]}))[1])
    assert out == {"q": [0, -4], "nu": 0, "point": [0, -4]}


def test_module_instances(capsys, write):
    doc = {"type": "module", "generators": [[0, 0]], "point": [0, -1]}
    assert json.loads(cli(capsys, "member", write(doc))[1]) == {"member": False}
    assert json.loads(cli(capsys, "project", write(doc))[1]) == {"projection": [-1, -1]}
    cert = json.loads(cli(capsys, "separate", write(doc))[1])
    assert cert["set"]["type"] == "module"
    assert cli(capsys, "verify", write(cert, "c.json"))[0] == 0


def test_support_single_and_hull(capsys, write):
    relu = {"graph_points": [[[0], 0], [[2], 2], [[-5], 0]]}
    out = json.loads(cli(capsys, "support", write({**relu, "point": [0], "nu": -1}))[1])
    assert out == {"w_prime": [0], "d_prime": 0, "w_second": [-1], "d_second": -1}
    out = json.loads(cli(capsys, "support", write({**relu, "probes": [[[0], -1], [[2], 1]]}))[1])
    assert len(out["pieces"]) == 2
    out = json.loads(cli(capsys, "support", write({**relu, "probe_points": [[-5], [0], [9]]}))[1])
    assert len(out["pieces"]) == 2  # f(9) is +inf, no probe there
    assert cli(capsys, "support", write({**relu, "point": [0], "nu": 0}))[0] == 3


def test_env_override_on_the_command_line(capsys, write, monkeypatch):
    monkeypatch.setenv(tio.ENV_SEMIFIELD, "min-plus")
    doc = {"generators": [[0, "+inf"], [-2, -3]], "point": [-1, 0]}
    assert json.loads(cli(capsys, "member", write(doc))[1]) == {"member": False}
    _, out, _ = cli(capsys, "separate", write(doc))
    monkeypatch.setenv(tio.ENV_SEMIFIELD, "max-plus")
    assert cli(capsys, "verify", write(out, "c.json"))[0] == 2


def test_output_is_deterministic_and_can_go_to_a_file(capsys, write, tmp_path):
    path = write(TWO_POINT_INSTANCE)
    first = cli(capsys, "separate", path)[1]
    assert cli(capsys, "separate", path)[1] == first
    target = tmp_path / "cert.json"
    assert cli(capsys, "separate", "--output", str(target), path) == (0, "", "")
    assert target.read_text() == first


def test_gallery_plot_has_four_blocks(capsys):
    code, out, _ = cli(capsys, "plot", "--target", "diffaffine-gallery", "--range", "-2", "2", "--resolution", "5")
    assert code == 0
    blocks = [b for b in out.split("\n\n") if b.strip()]
    assert [b.splitlines()[0].split(":")[0] for b in blocks] == [
        "# identically-bottom", "# ray-right", "# plateau", "# affine"]
    assert blocks[1].splitlines()[2:] == ["-2,-inf", "-1,-inf", "0,-inf", "1,-inf", "2,3"]


def test_function_graph_keeps_infinite_markers(capsys, write):
    doc = {"graph_points": [[[0], 0], [[2], 2], [[-5], 0]],
           "plot": {"target": "function-graph", "range": [-6, 3], "resolution": 10}}
    code, out, _ = cli(capsys, "plot", write(doc))
    rows = out.splitlines()
    assert code == 0 and rows[0] == "x,f(x)"
    assert rows[1] == "-6,+inf" and rows[2] == "-5,0" and rows[-1] == "3,+inf"


def test_region_plots(capsys, write):
    _, cert, _ = cli(capsys, "separate", write(TWO_POINT_INSTANCE))
    code, out, _ = cli(capsys, "plot", "--target", "hyperplane-region-2d", "--resolution", "3", write(cert, "c.json"))
    assert code == 0 and out.splitlines()[0] == "x1,x2,on_hyperplane"
    code, out, _ = cli(capsys, "plot", "--target", "shadow-upperset-2d", "--range", "0", "3",
                       "--resolution", "4", write(TWO_POINT_INSTANCE))
    assert code == 0
    assert "3,3,1,1,1" not in out and "2,3,1,1,1" in out


def test_svg_output(capsys, write):
    code, out, _ = cli(capsys, "plot", "--target", "shadow-upperset-2d", "--format", "svg", "--exp-coords",
                       write(TWO_POINT_INSTANCE))
    assert code == 0 and out.startswith("<svg") and out.rstrip().endswith("</svg>")
    assert cli(capsys, "plot", "--target", "function-graph", "--resolution", "1", write(TWO_POINT_INSTANCE))[0] == 2


def test_module_entry_point(tmp_path):
    p = tmp_path / "in.json"
    p.write_text(json.dumps(TWO_POINT_INSTANCE))
    res = subprocess.run([sys.executable, "-m", "tropicon", "member", str(p)], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout) == {"member": False}
