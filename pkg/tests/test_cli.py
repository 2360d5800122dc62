import dataclasses
import json

import pytest

from goeca import cli, registry, report, specfile
from goeca.ca import Pattern
from goeca.groups import interval
from goeca.polyalg import GF, QQ
from goeca.registry import (
    finite_and_ca,
    free_linear_ca,
    hyperplane_fixture_ca,
    product_ca,
    reducible_curve_ca,
)

PRODUCT_SPEC = {
    "format": 1,
    "name": "product",
    "group": {"kind": "Zd", "rank": 1},
    "memory": [0, 1],
    "alphabet": {"kind": "affine", "field": "fp:5", "coords": ["t"], "ideal": [],
                 "basepoint": [0]},
    "rule": {"kind": "polynomial", "components": ["t0*t1"]},
    "metadata": {"irreducible": True, "complete": False},
    "targets": [{"support": [-1, 0, 1], "values": [[1], [0], [1]]}],
}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return str(path)


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


# --- spec files ----------------------------------------------------------

@pytest.mark.parametrize("build", [product_ca, reducible_curve_ca, free_linear_ca,
                                   hyperplane_fixture_ca, finite_and_ca])
def test_spec_round_trip(build):
    ca = build()
    text = specfile.dumps(ca)
    again = specfile.parse_spec(text)
    assert specfile.to_dict(again) == specfile.to_dict(ca)
    assert specfile.dumps(again) == text


def test_spec_parses_targets_and_digest():
    spec = specfile.loads(json.dumps(PRODUCT_SPEC))
    assert spec.targets[0].support == interval(-1, 1)
    assert spec.digest == specfile.loads(json.dumps(PRODUCT_SPEC, indent=4)).digest
    assert spec.digest.startswith("sha256:")


def test_spec_undeclared_variable():
    bad = dict(PRODUCT_SPEC, rule={"kind": "polynomial", "components": ["t0*s1"]})
    with pytest.raises(specfile.SpecError) as exc:
        specfile.loads(json.dumps(bad))
    assert "rule.components[0]" in str(exc.value)


def test_spec_non_prime_field():
    bad = json.loads(json.dumps(PRODUCT_SPEC))
    bad["alphabet"]["field"] = "fp:6"
    with pytest.raises(specfile.SpecError):
        specfile.loads(json.dumps(bad))


def test_spec_syntax_error_position():
    with pytest.raises(specfile.SpecError) as exc:
        specfile.loads('{"format": 1,\n  "group": }')
    assert exc.value.line == 2 and exc.value.column is not None


def test_spec_semantic_errors():
    cases = [
        dict(PRODUCT_SPEC, format=2),
        dict(PRODUCT_SPEC, memory=[]),
        dict(PRODUCT_SPEC, group={"kind": "Heisenberg", "rank": 1}),
        dict(PRODUCT_SPEC, rule={"kind": "polynomial", "components": ["t0 + 1", "t1"]}),
        dict(PRODUCT_SPEC, rule={"kind": "table", "table": [[[0, 0], 0]]}),
    ]
    for raw in cases:
        with pytest.raises(specfile.SpecError):
            specfile.loads(json.dumps(raw))


def test_spec_rule_must_map_into_variety():
    raw = json.loads(specfile.dumps(reducible_curve_ca()))
    raw["rule"]["components"] = ["x0 + 1", "y0"]
    with pytest.raises(specfile.SpecError) as exc:
        specfile.loads(json.dumps(raw))
    assert "rule.components" in str(exc.value)


def test_spec_field_override():
    spec = specfile.loads(json.dumps(PRODUCT_SPEC), GF(7))
    assert spec.ca.variety.field == GF(7)
    raw = json.loads(specfile.dumps(hyperplane_fixture_ca()))
    with pytest.raises(specfile.SpecError):
        specfile.loads(json.dumps(raw), GF(3))


# --- registry ------------------------------------------------------------

def test_registry_is_complete():
    assert set(registry.REGISTRY) == {
        "intro-squaring-p1", "reducible-curve-uv", "affine-dominant-xrxsP", "product-rule-z",
        "free-group-linear", "linear-hyperplane-fixture", "finite-constant", "finite-xor"}
    for entry in registry.REGISTRY.values():
        assert entry.anchor
    with pytest.raises(KeyError):
        registry.get("nope")


@pytest.mark.parametrize("entry_id", sorted(registry.REGISTRY))
def test_registry_entries_pass(entry_id):
    outcome = registry.run_registry(entry_id)
    failed = [c for c in outcome.checks if not c.ok]
    assert not failed, failed
    assert outcome.checks
    assert all(c.source in ("example", "oracle", "trivial") for c in outcome.checks)


def test_registry_product_rule_details():
    out = registry.run_registry("product-rule-z", GF(5), 3, 42)
    assert out.sections["mdim"].ratios == [1, 1, 1, 1]
    assert out.ok


def test_registry_xor_and_reducible():
    assert registry.run_registry("finite-xor", None, 4, 42).ok
    assert registry.run_registry("reducible-curve-uv", GF(7), 2, 42).ok


def test_check_mismatch_is_recorded():
    c = registry.check("x", 1, 2, "oracle")
    assert not c.ok and c.observed == 1 and c.expected == 2


# --- reports -------------------------------------------------------------

def test_mdim_csv_rows(tmp_path):
    out = registry.run_registry("product-rule-z", GF(5), 3, 42)
    rep = report.make_report({"registry": "product-rule-z"}, out.sections, out.checks, 42)
    paths = report.emit_report(rep, tmp_path)
    lines = (tmp_path / "mdim.csv").read_text().splitlines()
    assert lines[:4] == ["m,size,dim,num,den", "0,1,1,1,1", "1,3,3,1,1", "2,5,5,1,1"]
    assert {p.name for p in paths} == {"report.json", "mdim.csv"}


def test_empty_report(tmp_path):
    rep = report.make_report({"spec": "none"}, {}, (), 0)
    assert rep["sections"] == {} and rep["ok"]
    paths = report.emit_report(rep, tmp_path)
    assert [p.name for p in paths] == ["report.json"]
    assert json.loads(paths[0].read_text())["format"] == 1


def test_report_determinism():
    def once():
        out = registry.run_registry("reducible-curve-uv", GF(7), 2, 42)
        rep = report.make_report({"registry": "x"}, out.sections, out.checks, 42, {"total": 1.5})
        return report.dumps(report.analysis_content(rep))

    assert once() == once()


def test_report_has_no_floats():
    out = registry.run_registry("product-rule-z", QQ, 2, 42)
    rep = report.make_report({"registry": "x"}, out.sections, out.checks, 42, {"t": 0.25})

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(f"float in report: {x}")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(json.loads(report.dumps(rep)))


# --- command line --------------------------------------------------------

def test_cli_repro_ok(capsys, tmp_path):
    code, out, err = run(["repro", "product-rule-z", "--field", "fp:5"], capsys)
    assert code == 0
    assert json.loads(out)["ok"] is True
    assert "ok" in err
    code, _, err = run(["repro", "finite-xor", "--m-max", "4", "--out", str(tmp_path)], capsys)
    assert code == 0 and (tmp_path / "report.json").exists()


def test_cli_repro_deterministic(capsys):
    _, a, _ = run(["repro", "reducible-curve-uv", "--field", "fp:7", "--m-max", "2"], capsys)
    _, b, _ = run(["repro", "reducible-curve-uv", "--field", "fp:7", "--m-max", "2"], capsys)
    strip = lambda s: report.analysis_content(json.loads(s))  # noqa: E731
    assert strip(a) == strip(b)


def test_cli_usage_errors(capsys, tmp_path):
    assert run(["repro", "no-such-entry"], capsys)[0] == 2
    assert run(["repro", "product-rule-z", "--field", "fp:6"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["check", "--spec", str(tmp_path / "missing.json"), "--mode", "mdim"],
               capsys)[0] == 2
    bad = write(tmp_path, "bad.json", '{"format": 1,\n "group": ')
    code, _, err = run(["check", "--spec", bad, "--mode", "mdim"], capsys)
    assert code == 2 and "line 2" in err


def test_cli_check_modes(capsys, tmp_path):
    spec = write(tmp_path, "product.json", PRODUCT_SPEC)
    code, out, _ = run(["check", "--spec", spec, "--mode", "mdim", "--m-max", "2"], capsys)
    rows = json.loads(out)["sections"]["mdim"]["rows"]
    assert code == 0 and [r["dim"] for r in rows] == [1, 3, 5]
    code, out, _ = run(["check", "--spec", spec, "--mode", "orphan"], capsys)
    assert json.loads(out)["sections"]["orphans"][0]["kind"] == "Certified"
    code, out, _ = run(["check", "--spec", spec, "--mode", "starstar", "--m-max", "1"], capsys)
    assert all(v["kind"] == "Certified" for v in json.loads(out)["sections"]["starstar"])

    fin = write(tmp_path, "and.json", specfile.dumps(finite_and_ca()))
    code, out, _ = run(["check", "--spec", fin, "--mode", "orphan"], capsys)
    assert json.loads(out)["sections"]["orphan_search"]["found"]["values"] == [1, 0, 1]
    code, out, _ = run(["check", "--spec", fin, "--mode", "mep"], capsys)
    assert json.loads(out)["sections"]["mep_search"]["found"] is not None
    assert run(["check", "--spec", fin, "--mode", "linear"], capsys)[0] == 2

    lin = write(tmp_path, "fix.json", specfile.dumps(hyperplane_fixture_ca()))
    code, out, _ = run(["check", "--spec", lin, "--mode", "linear", "--m-max", "1"], capsys)
    assert json.loads(out)["sections"]["preinjectivity"]["kind"] == "Refuted"


def test_cli_check_star_candidate(capsys, tmp_path):
    raw = json.loads(specfile.dumps(hyperplane_fixture_ca()))
    poly = json.loads(specfile.dumps(registry.linear_as_polynomial(hyperplane_fixture_ca(),
                                                                    GF(2))))
    poly["star_candidate"] = {"window": [0], "H": ["v1_0"]}
    path = write(tmp_path, "star.json", poly)
    code, out, _ = run(["check", "--spec", path, "--mode", "star"], capsys)
    assert code == 0 and json.loads(out)["sections"]["star"]["kind"] == "Refuted"
    path = write(tmp_path, "lin.json", raw)
    assert run(["check", "--spec", path, "--mode", "star"], capsys)[0] == 2


def test_cli_dim(capsys, tmp_path):
    ideal = write(tmp_path, "xy.json", {"format": 1, "field": "q", "variables": ["x", "y"],
                                        "generators": ["x*y"]})
    code, out, _ = run(["dim", "--ideal", ideal], capsys)
    assert code == 0 and out.strip() == "1"
    unit = write(tmp_path, "one.json", {"format": 1, "variables": ["x"], "generators": ["1"]})
    assert run(["dim", "--ideal", unit], capsys)[1].strip() == "empty"
    bad = write(tmp_path, "bad.json", {"format": 1, "variables": ["x"], "generators": ["y"]})
    assert run(["dim", "--ideal", bad], capsys)[0] == 2


def test_cli_mismatch_exit_code(capsys, monkeypatch):
    entry = registry.get("finite-xor")

    def broken(ctx):
        out = entry.run(ctx)
        out.checks.append(registry.check("forced mismatch", 0, 1, "trivial"))
        return out

    monkeypatch.setitem(registry.REGISTRY, "finite-xor", dataclasses.replace(entry, run=broken))
    code, out, err = run(["repro", "finite-xor"], capsys)
    assert code == 1 and "FAIL forced mismatch" in err
    assert json.loads(out)["ok"] is False


def test_pattern_from_spec_values():
    spec = specfile.loads(json.dumps(PRODUCT_SPEC))
    t = spec.targets[0]
    assert isinstance(t, Pattern) and t.values == ((1,), (0,), (1,))
