import json
import re

import click
import pytest

from click.testing import CliRunner

from lgmirror.cli import EXIT_FAIL, EXIT_PASS, EXIT_RESOURCE, EXIT_USAGE, main, parse_highlight
from lgmirror.enumerate import Potential


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_potential_minimal_cutoff():
    res = run("potential", 3, 3, 3, "--cutoff", 1)
    assert res.exit_code == EXIT_PASS
    w = Potential.from_dict(json.loads(res.output))
    assert list(w.to_dict()["monomials"]) == ["x^1 y^1 z^1"]


def test_potential_rational_cutoff_and_out(tmp_path):
    out = tmp_path / "w.json"
    res = run("potential", 2, 3, 7, "--cutoff", "5/2", "--weights", "5/2,1,1,1", "--out", out)
    assert res.exit_code == EXIT_PASS and "monomials" in res.output
    data = json.loads(out.read_text())
    assert data["abc"] == [2, 3, 7]


def test_potential_spherical_is_partial():
    res = run("potential", 2, 2, 3, "--cutoff", 4)
    assert res.exit_code == EXIT_PASS
    assert json.loads(res.output)["partial"] is True


def test_bad_signature_is_usage_error():
    assert run("potential", 1, 3, 3).exit_code == EXIT_USAGE
    assert run("potential", 3, 3, 3, "--cutoff", "0").exit_code == EXIT_USAGE
    assert run("potential", 3, 3, 3, "--cutoff", "abc").exit_code == EXIT_USAGE


def test_resource_limit_exit_code():
    res = run("potential", 2, 3, 7, "--cutoff", 40, "--max-triangles", 50)
    assert res.exit_code == EXIT_RESOURCE


def test_verify_p1_fixture(tmp_path):
    out = tmp_path / "rep.json"
    res = run("verify", "p1-fixture", "--out", out)
    assert res.exit_code == EXIT_PASS
    assert res.output.startswith("[PASS] p1-fixture")
    assert json.loads(out.read_text())["pass"] is True


def test_verify_unknown_target():
    assert run("verify", "nonsense").exit_code == EXIT_USAGE


def test_verify_golden_unchanged():
    res = run("verify", "golden")
    assert res.exit_code == EXIT_PASS, res.output
    report = json.loads(res.output.split("\n", 1)[1])
    assert set(report["files"].values()) == {"same"}


def test_svg_deterministic():
    a = run("svg", 3, 3, 3)
    b = run("svg", 3, 3, 3)
    assert a.exit_code == EXIT_PASS and a.output == b.output
    families = set(re.findall(r'data-family="([^"]+)"', a.output))
    assert len(families) == 3
    assert 'class="highlight"' in a.output


def test_svg_without_highlight():
    res = run("svg", 3, 3, 3, "--highlight", "none")
    assert res.exit_code == EXIT_PASS and 'class="highlight"' not in res.output


def test_svg_other_signature_rejected():
    assert run("svg", 2, 3, 7).exit_code == EXIT_USAGE


def test_parse_highlight():
    assert parse_highlight("none") == []
    assert parse_highlight("1,1,1,up;1,0,3,down") == [((1, 1), 1, True), ((1, 0), 3, False)]
    for bad in ("0,0,1,up", "1,1,2,up", "1,1,1,sideways"):
        with pytest.raises(click.BadParameter):
            parse_highlight(bad)


def test_exit_codes_distinct():
    assert len({EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE}) == 4
